#include "doctest.h"

#include "gl3lab/charsum.hpp"
#include "gl3lab/error.hpp"
#include "gl3lab/newton.hpp"

#include <algorithm>

using namespace gl3lab;
using namespace gl3lab::newton;

namespace {

LaurentPoly generic_phase() { return charsum::appendix_phase({1, 3, 1, 1, 7, 1, 2}); }

int triangles(const NewtonPolyhedron& P) {
    int t = 0;
    for (const Face& f : P.facets) t += static_cast<int>(f.vertices.size()) - 2;
    return t;
}

} // namespace

TEST_CASE("appendix phase hull") {
    LaurentPoly f = generic_phase();
    REQUIRE(f.terms.size() == 9);
    NewtonPolyhedron P = newton_polyhedron(f);
    std::vector<Point> expect{{-1, 0, 0}, {-1, 0, 1}, {0, -1, 0}, {0, -1, 1}, {0, 0, 1},
                              {0, 1, -1}, {0, 1, 0},  {1, 0, -1}, {1, 0, 0}};
    CHECK(P.vertices == expect);
    CHECK(P.dim == 3);
    CHECK(P.facets.size() == 9);
    CHECK(triangles(P) == 14);
    CHECK(P.origin_inside());
    auto faces = enumerate_faces(P);
    int n[4] = {0, 0, 0, 0};
    for (const Face& s : faces) n[s.dim]++;
    CHECK(n[0] == 9);
    CHECK(n[1] == 16);
    CHECK(n[2] == 9);
    CHECK(n[3] == 1);
    CHECK(n[0] - n[1] + n[2] == 2);
    for (const Face& s : faces)
        for (const Point& v : s.vertices) CHECK(s.normal[0] * v[0] + s.normal[1] * v[1] + s.normal[2] * v[2] == s.value);
}

TEST_CASE("hull idempotence and containment") {
    NewtonPolyhedron P = newton_polyhedron(generic_phase());
    NewtonPolyhedron Q = newton_polyhedron(P.vertices);
    CHECK(Q.vertices == P.vertices);
    CHECK(Q.facets.size() == P.facets.size());
    CHECK(P.contains({0, 0, 0}));
    CHECK(!P.contains({1, 1, 1}));
    CHECK(!P.contains({0, 0, 2}));
    std::vector<Point> pts = P.vertices;
    pts.push_back({0, 0, 0});
    CHECK(newton_polyhedron(pts).vertices == P.vertices);
}

TEST_CASE("low dimensional hulls") {
    LaurentPoly x(1);
    x.add({1}, 1);
    auto P = newton_polyhedron(x);
    CHECK(P.vertices == std::vector<Point>{{1}});
    CHECK(enumerate_faces(P).size() == 1);

    LaurentPoly seg(1);
    seg.add({1}, 1).add({-1}, 1);
    auto S = newton_polyhedron(seg);
    CHECK(S.vertices == std::vector<Point>{{-1}, {1}});
    auto sf = enumerate_faces(S);
    CHECK(sf.size() == 3);
    CHECK(std::count_if(sf.begin(), sf.end(), [](const Face& f) { return f.dim == 0; }) == 2);

    auto T = newton_polyhedron(std::vector<Point>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(T.dim == 2);
    CHECK(T.vertices.size() == 3);
    auto tf = enumerate_faces(T);
    int n[3] = {0, 0, 0};
    for (const Face& f : tf) n[f.dim]++;
    CHECK(n[0] == 3);
    CHECK(n[1] == 3);
    CHECK(n[2] == 1);
    CHECK(!T.contains({1, 1, 0}));
    CHECK(T.contains({0, 1, 0}));

    try {
        newton_polyhedron(LaurentPoly(2));
        FAIL("expected DegenerateInput");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DegenerateInput);
    }
}

TEST_CASE("face restriction") {
    LaurentPoly f = generic_phase();
    NewtonPolyhedron P = newton_polyhedron(f);
    auto faces = enumerate_faces(P);
    const Point a{1, 0, 0}, b{1, 0, -1};
    auto has = [](const Face& s, const Point& v) { return std::find(s.vertices.begin(), s.vertices.end(), v) != s.vertices.end(); };
    int edges = 0, facets = 0;
    for (const Face& s : faces) {
        if (!has(s, a) || !has(s, b)) continue;
        auto r = face_restriction(f, P, s);
        if (s.dim == 1) {
            ++edges;
            CHECK(r.terms.size() == 2);
        }
        if (s.dim == 2) {
            ++facets;
            CHECK(r.terms.size() == 4);
        }
    }
    CHECK(edges == 1);
    CHECK(facets == 2);
    for (const Face& s : faces) {
        if (s.dim == 0) CHECK(face_restriction(f, P, s).terms.size() == 1);
        if (s.dim == 3) CHECK(face_restriction(f, P, s).terms == f.terms);
    }
    Face bogus;
    bogus.vertices = {{1, 0, 0}, {-1, 0, 0}};
    try {
        face_restriction(f, P, bogus);
        FAIL("expected FaceNotOfThisPolyhedron");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::FaceNotOfThisPolyhedron);
    }
}

TEST_CASE("nondegeneracy") {
    LaurentPoly x(1);
    x.add({1}, 1);
    auto r = nondegeneracy_check(x, 3);
    CHECK(r.all_nondegenerate);
    CHECK(r.faces.size() == 1);

    NondegeneracyOptions opt;
    opt.a_exponent = Point{0, 0, 1};
    opt.expected_monomials = 9;
    for (i64 p : {5, 7, 11, 13}) {
        // first b1 for which q1 = 1, q2 = 2 is generic with all nine coefficients nonzero
        charsum::AppendixSumParams g{1, 1, 1, 1, p, 1, 2};
        while (charsum::is_degenerate(g) || charsum::appendix_phase(g).terms.size() < 9) ++g.b1;
        REQUIRE(g.b1 < p);
        auto rg = nondegeneracy_check(charsum::appendix_phase(g), p, opt);
        CHECK(rg.all_nondegenerate);
        CHECK(rg.coefficient_case == "all-nonzero");

        charsum::AppendixSumParams d{1, g.b1, 1, 1, p, 2, 2};
        auto rd = nondegeneracy_check(charsum::appendix_phase(d), p, opt);
        CHECK(!rd.all_nondegenerate);
        for (const auto& fc : rd.faces)
            if (fc.degenerate) CHECK(fc.witness.size() == 3);

        charsum::AppendixSumParams z{0, g.b1, 1, 1, p, 1, 2};
        CHECK(nondegeneracy_check(charsum::appendix_phase(z), p, opt).coefficient_case == "a-vanishes");
    }
    try {
        nondegeneracy_check(x, 9);
        FAIL("expected CompositeModulus");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::CompositeModulus);
    }
}

TEST_CASE("OFF dump") {
    auto s = to_off(newton_polyhedron(generic_phase()));
    CHECK(s.rfind("OFF\n9 9 0\n", 0) == 0);
}
