#include "gl3lab/newton.hpp"

#include "gl3lab/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace gl3lab::newton {

namespace {

using Mat = std::vector<std::vector<__int128>>;

int rank_of(const std::vector<Point>& rows) {
    if (rows.empty()) return 0;
    Mat a;
    for (const Point& r : rows) a.emplace_back(r.begin(), r.end());
    const size_t m = a.size(), n = a[0].size();
    int rank = 0;
    for (size_t col = 0; col < n && static_cast<size_t>(rank) < m; ++col) {
        size_t piv = static_cast<size_t>(rank);
        while (piv < m && a[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(a[piv], a[rank]);
        for (size_t i = 0; i < m; ++i) {
            if (i == static_cast<size_t>(rank) || a[i][col] == 0) continue;
            const __int128 f = a[i][col], g = a[rank][col];
            __int128 h = 0;
            for (size_t j = 0; j < n; ++j) {
                a[i][j] = a[i][j] * g - a[rank][j] * f;
                __int128 v = a[i][j] < 0 ? -a[i][j] : a[i][j];
                h = std::gcd(static_cast<long long>(h), static_cast<long long>(v));
            }
            if (h > 1)
                for (size_t j = 0; j < n; ++j) a[i][j] /= h;
        }
        ++rank;
    }
    return rank;
}

i64 det(const std::vector<Point>& m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    i64 s = 0;
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<Point> minor;
        for (size_t i = 1; i < n; ++i) {
            Point r;
            for (size_t c = 0; c < n; ++c)
                if (c != j) r.push_back(m[i][c]);
            minor.push_back(std::move(r));
        }
        s += ((j % 2) ? -1 : 1) * m[0][j] * det(minor);
    }
    return s;
}

Point sub(const Point& a, const Point& b) {
    Point r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

i64 dot(const Point& a, const Point& b) {
    i64 s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Integer vector orthogonal to d-1 difference vectors in Z^d (cofactor expansion).
Point cross(const std::vector<Point>& diffs, int d) {
    Point n(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) {
        std::vector<Point> m;
        for (const Point& v : diffs) {
            Point r;
            for (int c = 0; c < d; ++c)
                if (c != j) r.push_back(v[c]);
            m.push_back(std::move(r));
        }
        n[j] = ((j % 2) ? -1 : 1) * det(m);
    }
    return n;
}

// Calls fn on every k-subset of {0..n-1}.
template <class Fn>
void subsets(int n, int k, Fn&& fn) {
    std::vector<int> idx(static_cast<size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<int> on_face(const std::vector<Point>& pts, const std::vector<Face>& facets, const std::vector<int>& which) {
    std::vector<int> out;
    for (size_t i = 0; i < pts.size(); ++i) {
        bool ok = true;
        for (int f : which)
            if (dot(facets[f].normal, pts[i]) != facets[f].value) {
                ok = false;
                break;
            }
        if (ok) out.push_back(static_cast<int>(i));
    }
    return out;
}

int affine_dim(const std::vector<Point>& pts) {
    if (pts.size() <= 1) return 0;
    std::vector<Point> diffs;
    for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    return rank_of(diffs);
}

} // namespace

NewtonPolyhedron newton_polyhedron(const LaurentPoly& f) {
    if (f.terms.empty()) fail(Errc::DegenerateInput, "polynomial has no monomials");
    std::vector<Point> pts;
    for (const auto& ex : f.exponents()) pts.emplace_back(ex.begin(), ex.end());
    return newton_polyhedron(pts);
}

NewtonPolyhedron newton_polyhedron(const std::vector<Point>& input) {
    if (input.empty()) fail(Errc::DegenerateInput, "no exponent vectors");
    std::set<Point> uniq(input.begin(), input.end());
    NewtonPolyhedron P;
    P.ambient = static_cast<int>(input[0].size());
    if (P.ambient < 1 || P.ambient > 4) fail(Errc::PreconditionViolated, "ambient dimension must be 1..4");
    for (const Point& p : uniq)
        if (static_cast<int>(p.size()) != P.ambient) fail(Errc::PreconditionViolated, "mixed exponent lengths");
    P.points.assign(uniq.begin(), uniq.end());
    const Point& p0 = P.points[0];
    P.dim = affine_dim(P.points);
    if (P.dim == 0) {
        P.vertices = P.points;
        return P;
    }

    // coordinates on which the affine hull projects injectively
    std::vector<Point> diffs;
    for (size_t i = 1; i < P.points.size(); ++i) diffs.push_back(sub(P.points[i], p0));
    std::vector<int> cols;
    for (int j = 0; j < P.ambient && static_cast<int>(cols.size()) < P.dim; ++j) {
        std::vector<int> trial = cols;
        trial.push_back(j);
        std::vector<Point> restricted;
        for (const Point& v : diffs) {
            Point r;
            for (int c : trial) r.push_back(v[c]);
            restricted.push_back(std::move(r));
        }
        if (rank_of(restricted) == static_cast<int>(trial.size())) cols = trial;
    }
    const int d = P.dim;
    std::vector<Point> proj;
    for (const Point& p : P.points) {
        Point r;
        for (int c : cols) r.push_back(p[c]);
        proj.push_back(std::move(r));
    }

    // brute-force facets: each d-subset spanning a hyperplane with all points on one side
    std::set<std::pair<Point, i64>> seen;
    const int n = static_cast<int>(proj.size());
    subsets(n, d, [&](const std::vector<int>& S) {
        std::vector<Point> dv;
        for (size_t i = 1; i < S.size(); ++i) dv.push_back(sub(proj[S[i]], proj[S[0]]));
        Point nv = cross(dv, d);
        i64 g = 0;
        for (i64 v : nv) g = std::gcd(g, v < 0 ? -v : v);
        if (g == 0) return;
        for (i64& v : nv) v /= g;
        i64 h = dot(nv, proj[S[0]]);
        bool le = true, ge = true;
        for (const Point& x : proj) {
            const i64 t = dot(nv, x);
            if (t > h) le = false;
            if (t < h) ge = false;
        }
        if (!le && !ge) return;
        if (!le) {
            for (i64& v : nv) v = -v;
            h = -h;
        }
        seen.insert({nv, h});
    });
    for (const auto& [nv, h] : seen) {
        Face f;
        f.dim = d - 1;
        f.normal.assign(static_cast<size_t>(P.ambient), 0);
        for (int j = 0; j < d; ++j) f.normal[cols[j]] = nv[j];
        f.value = h;
        P.facets.push_back(std::move(f));
    }

    // a point is a vertex iff the facets through it cut out nothing else
    for (size_t i = 0; i < P.points.size(); ++i) {
        std::vector<int> through;
        for (size_t f = 0; f < P.facets.size(); ++f)
            if (dot(P.facets[f].normal, P.points[i]) == P.facets[f].value) through.push_back(static_cast<int>(f));
        if (through.empty()) continue;
        if (on_face(P.points, P.facets, through).size() == 1) P.vertices.push_back(P.points[i]);
    }
    std::sort(P.vertices.begin(), P.vertices.end());
    for (Face& f : P.facets) {
        for (const Point& v : P.vertices)
            if (dot(f.normal, v) == f.value) f.vertices.push_back(v);
    }
    std::sort(P.facets.begin(), P.facets.end(), [](const Face& a, const Face& b) { return a.vertices < b.vertices; });
    for (size_t i = 0; i < P.facets.size(); ++i) P.facets[i].facets = {static_cast<int>(i)};
    return P;
}

bool NewtonPolyhedron::contains(const Point& x) const {
    if (static_cast<int>(x.size()) != ambient) return false;
    if (dim == 0) return x == points[0];
    std::vector<Point> diffs;
    for (size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], points[0]));
    diffs.push_back(sub(x, points[0]));
    if (rank_of(diffs) != dim) return false;
    for (const Face& f : facets)
        if (dot(f.normal, x) > f.value) return false;
    return true;
}

std::vector<Face> enumerate_faces(const NewtonPolyhedron& P) {
    std::vector<Face> out;
    const int nv = static_cast<int>(P.vertices.size());
    std::vector<int> all(static_cast<size_t>(nv));
    std::iota(all.begin(), all.end(), 0);
    std::set<std::vector<int>> sets;
    std::vector<std::vector<int>> facet_sets;
    for (const Face& f : P.facets) {
        std::vector<int> s;
        for (int i = 0; i < nv; ++i)
            if (dot(f.normal, P.vertices[i]) == f.value) s.push_back(i);
        facet_sets.push_back(s);
        sets.insert(s);
    }
    std::vector<std::vector<int>> frontier(sets.begin(), sets.end());
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& a : frontier)
            for (const auto& b : facet_sets) {
                std::vector<int> c;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
                if (!c.empty() && sets.insert(c).second) next.push_back(c);
            }
        frontier = std::move(next);
    }
    sets.insert(all);
    for (const auto& s : sets) {
        Face f;
        for (int i : s) f.vertices.push_back(P.vertices[i]);
        f.dim = affine_dim(f.vertices);
        f.normal.assign(static_cast<size_t>(P.ambient), 0);
        if (s != all) {
            for (size_t k = 0; k < facet_sets.size(); ++k)
                if (std::includes(facet_sets[k].begin(), facet_sets[k].end(), s.begin(), s.end())) {
                    f.facets.push_back(static_cast<int>(k));
                    for (int j = 0; j < P.ambient; ++j) f.normal[j] += P.facets[k].normal[j];
                }
        }
        f.value = dot(f.normal, f.vertices[0]);
        out.push_back(std::move(f));
    }
    std::stable_sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
    });
    return out;
}

bool face_contains_origin(const NewtonPolyhedron& P, const Face& s) {
    if (!P.origin_inside()) return false;
    for (int k : s.facets)
        if (P.facets[k].value != 0) return false;
    return true;
}

LaurentPoly face_restriction(const LaurentPoly& f, const NewtonPolyhedron& P, const Face& s) {
    bool known = false;
    for (const Face& g : enumerate_faces(P))
        if (g.vertices == s.vertices) {
            known = true;
            break;
        }
    if (!known) fail(Errc::FaceNotOfThisPolyhedron, "vertex set is not a face of the polyhedron");
    LaurentPoly out(f.k);
    for (const auto& [ex, c] : f.terms) {
        Point e(ex.begin(), ex.end());
        if (!P.contains(e)) continue;
        bool on = true;
        for (int k : s.facets)
            if (dot(P.facets[k].normal, e) != P.facets[k].value) {
                on = false;
                break;
            }
        if (on) out.terms[ex] = c;
    }
    return out;
}

NondegeneracyReport nondegeneracy_check(const LaurentPoly& f, i64 p, const NondegeneracyOptions& opt) {
    if (!modular::is_prime(p)) fail(Errc::CompositeModulus, std::to_string(p) + " is not prime");
    NondegeneracyReport rep;
    rep.p = p;
    const LaurentPoly g = f.reduced(p);
    if (g.terms.empty()) fail(Errc::DegenerateInput, "every coefficient vanishes mod p");
    const int full = std::max(opt.expected_monomials, static_cast<int>(f.terms.size()));
    rep.dropped_monomials = full - static_cast<int>(g.terms.size());
    bool a_missing = false;
    if (opt.a_exponent) {
        std::vector<int> ae(opt.a_exponent->begin(), opt.a_exponent->end());
        a_missing = !g.terms.count(ae);
    }
    if (rep.dropped_monomials == 0)
        rep.coefficient_case = "all-nonzero";
    else if (a_missing && rep.dropped_monomials == 1)
        rep.coefficient_case = "a-vanishes";
    else
        rep.coefficient_case = "mixed";
    const NewtonPolyhedron P = newton_polyhedron(g);
    const int k = g.k;
    std::vector<Face> faces;
    for (Face& s : enumerate_faces(P))
        if (!(opt.skip_origin_faces && face_contains_origin(P, s))) faces.push_back(std::move(s));
    const double work = std::pow(static_cast<double>(p - 1), k) * static_cast<double>(std::max<size_t>(1, faces.size()));
    if (work > opt.cap) fail(Errc::WorkCapExceeded, "nondegeneracy scan needs " + std::to_string(work) + " steps");

    struct Mono {
        std::vector<int> e;
        i64 c;
    };
    std::vector<std::vector<Mono>> restricted;
    int emin = 0, emax = 0;
    for (const Face& s : faces) {
        std::vector<Mono> ms;
        for (const auto& [ex, c] : face_restriction(g, P, s).terms) {
            ms.push_back({ex, c});
            for (int v : ex) {
                emin = std::min(emin, v);
                emax = std::max(emax, v);
            }
        }
        restricted.push_back(std::move(ms));
        rep.faces.push_back({s, false, {}});
    }
    const int span = emax - emin + 1;
    std::vector<i64> pw(static_cast<size_t>((p - 1) * span));
    for (i64 u = 1; u < p; ++u)
        for (int e = emin; e <= emax; ++e) pw[(u - 1) * span + (e - emin)] = modular::pow_mod(u, e, p);

    std::vector<i64> x(static_cast<size_t>(k), 1);
    std::vector<i64> part(static_cast<size_t>(k));
    while (true) {
        for (size_t fi = 0; fi < faces.size(); ++fi) {
            if (rep.faces[fi].degenerate) continue;
            std::fill(part.begin(), part.end(), 0);
            for (const Mono& m : restricted[fi]) {
                i64 v = m.c;
                for (int i = 0; i < k; ++i) v = v * pw[(x[i] - 1) * span + (m.e[i] - emin)] % p;
                for (int i = 0; i < k; ++i) part[i] = (part[i] + v * modular::reduce(m.e[i], p)) % p;
            }
            if (std::all_of(part.begin(), part.end(), [](i64 v) { return v == 0; })) {
                rep.faces[fi].degenerate = true;
                rep.faces[fi].witness = x;
                rep.all_nondegenerate = false;
            }
        }
        int i = k - 1;
        while (i >= 0 && ++x[i] == p) x[i--] = 1;
        if (i < 0) break;
    }
    return rep;
}

std::string to_off(const NewtonPolyhedron& P) {
    std::ostringstream os;
    os << "OFF\n" << P.vertices.size() << ' ' << P.facets.size() << " 0\n";
    for (const Point& v : P.vertices) {
        for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
        os << '\n';
    }
    for (const Face& f : P.facets) {
        std::vector<int> idx;
        for (const Point& v : f.vertices)
            idx.push_back(static_cast<int>(std::lower_bound(P.vertices.begin(), P.vertices.end(), v) - P.vertices.begin()));
        if (P.ambient == 3 && P.dim == 3 && idx.size() > 3) {
            // cyclic order around the centroid, in the facet plane
            std::vector<double> cen(3, 0);
            for (int i : idx)
                for (int j = 0; j < 3; ++j) cen[j] += static_cast<double>(P.vertices[i][j]) / idx.size();
            const Point& n = f.normal;
            std::vector<double> u(3), w(3);
            for (int j = 0; j < 3; ++j) u[j] = P.vertices[idx[0]][j] - cen[j];
            w[0] = n[1] * u[2] - n[2] * u[1];
            w[1] = n[2] * u[0] - n[0] * u[2];
            w[2] = n[0] * u[1] - n[1] * u[0];
            auto ang = [&](int i) {
                double a = 0, b = 0;
                for (int j = 0; j < 3; ++j) {
                    a += (P.vertices[i][j] - cen[j]) * u[j];
                    b += (P.vertices[i][j] - cen[j]) * w[j];
                }
                return std::atan2(b, a);
            };
            std::sort(idx.begin(), idx.end(), [&](int a, int b) { return ang(a) < ang(b); });
        }
        os << idx.size();
        for (int i : idx) os << ' ' << i;
        os << '\n';
    }
    return os.str();
}

} // namespace gl3lab::newton
