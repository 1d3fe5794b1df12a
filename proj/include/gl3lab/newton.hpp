#pragma once

#include "gl3lab/modular.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gl3lab::newton {

using Point = std::vector<i64>;

struct Face {
    int dim = 0;
    Point normal;            // outer normal; zero for the whole polytope
    i64 value = 0;           // normal . v for every member vertex
    std::vector<Point> vertices;
    std::vector<int> facets; // indices of facets containing this face (empty for the polytope itself)
};

struct NewtonPolyhedron {
    int ambient = 0;
    int dim = 0;
    std::vector<Point> points;   // distinct input exponents
    std::vector<Point> vertices; // lexicographic
    std::vector<Face> facets;    // faces of dimension dim-1

    bool contains(const Point& x) const;
    bool origin_inside() const { return contains(Point(static_cast<size_t>(ambient), 0)); }
};

// Exact hull of the exponent vectors; ambient dimension at most 4.
NewtonPolyhedron newton_polyhedron(const LaurentPoly& f);
NewtonPolyhedron newton_polyhedron(const std::vector<Point>& pts);

// Every nonempty face including the polytope itself, ordered by (dim, vertices).
std::vector<Face> enumerate_faces(const NewtonPolyhedron& P);
bool face_contains_origin(const NewtonPolyhedron& P, const Face& s);

LaurentPoly face_restriction(const LaurentPoly& f, const NewtonPolyhedron& P, const Face& s);

struct FaceCheck {
    Face face;
    bool degenerate = false;
    std::vector<i64> witness; // common zero of all x_i df/dx_i, when degenerate
};

struct NondegeneracyReport {
    i64 p = 0;
    std::string coefficient_case; // "all-nonzero", "a-vanishes", "mixed"
    int dropped_monomials = 0;
    bool all_nondegenerate = true;
    std::vector<FaceCheck> faces;
};

struct NondegeneracyOptions {
    double cap = 1e8;
    bool skip_origin_faces = true;
    // exponent of the "a" monomial and the monomial count of the generic shape; used only
    // to label which coefficient case applies
    std::optional<Point> a_exponent;
    int expected_monomials = 0;
};

// Coefficients are reduced mod p first; vanishing monomials are dropped and the hull rebuilt.
NondegeneracyReport nondegeneracy_check(const LaurentPoly& f, i64 p, const NondegeneracyOptions& opt = {});

// OFF-style dump: header, vertices, then facets by vertex index (3-D only lists polygons).
std::string to_off(const NewtonPolyhedron& P);

} // namespace gl3lab::newton
