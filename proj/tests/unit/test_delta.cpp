#include "doctest.h"

#include "gl3lab/delta.hpp"
#include "gl3lab/error.hpp"
#include "gl3lab/frozen.hpp"

#include <cmath>

using namespace gl3lab;
using namespace gl3lab::delta;

namespace {

DeltaConfig fast(double Q, Profile p = Profile::bump) {
    DeltaConfig c;
    c.Q = Q;
    c.profile = p;
    c.U0 = 8 * Q * Q;
    return c;
}

std::vector<i64> range(i64 a, i64 b) {
    std::vector<i64> v;
    for (i64 n = a; n <= b; ++n) v.push_back(n);
    return v;
}

} // namespace

TEST_CASE("weight normalization") {
    for (double Q : {2.0, 7.5, 20.0, 100.0}) {
        Expansion ex(fast(Q));
        CHECK(std::abs(ex.weight_sum() - 1) < 1e-12);
        CHECK(ex.w(Q) == 0);
        CHECK(ex.w(2 * Q) == 0);
        CHECK(ex.w(1.5 * Q) > 0);
    }
}

TEST_CASE("direct detection is exact") {
    Expansion ex(fast(20));
    CHECK(std::abs(ex.detect_direct(0) - 1) < 1e-14);
    for (i64 n = 1; n <= 400; ++n) CHECK(std::abs(ex.detect_direct(n)) < 1e-14);
}

TEST_CASE("Fourier detection") {
    Expansion ex(fast(20));
    auto ns = range(-15, 15);
    auto v = ex.detect_fourier(ns);
    for (size_t i = 0; i < ns.size(); ++i) CHECK(std::abs(v[i] - (ns[i] == 0 ? 1.0 : 0.0)) < 1e-6);
    CHECK(std::abs(v[15 - 7] - v[15 + 7]) < 1e-12);

    // swapping the weight for another admissible one
    Expansion sq(fast(20, Profile::bump_squared));
    auto u = sq.detect_fourier(ns);
    for (size_t i = 0; i < ns.size(); ++i) CHECK(std::abs(u[i] - v[i]) < 2e-6);

    // per-q integrals reproduce Delta_q(n)
    for (i64 q : {1, 3, 17, 33}) {
        auto I = ex.fourier_integrals(q, {0, 5, 12});
        CHECK(std::abs(I[0] - ex.Delta(q, 0)) < 1e-9);
        CHECK(std::abs(I[1] - ex.Delta(q, 5)) < 1e-9);
        CHECK(std::abs(I[2] - ex.Delta(q, 12)) < 1e-9);
    }
    try {
        ex.detect_fourier(100000);
        FAIL("expected PreconditionViolated");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PreconditionViolated);
    }
}

TEST_CASE("a-sum is the Ramanujan sum") {
    for (i64 q = 1; q <= 40; ++q)
        for (i64 n = -15; n <= 15; ++n) {
            KahanSum a;
            for (i64 c = 1; c <= q; ++c)
                if (modular::gcd(c, q) == 1) a.add(e(static_cast<double>(modular::reduce(c * n, q)) / static_cast<double>(q)));
            CHECK(std::abs(a.value() - static_cast<double>(modular::ramanujan_sum(n, q))) < 1e-9);
        }
}

TEST_CASE("g near 1 and decay") {
    for (double Q : {20.0, 100.0}) {
        DeltaConfig c;
        c.Q = Q;
        Expansion ex(c);
        // outside the cutoff spike at the origin and below |x| = 1/2, where the first
        // w(Q/|x|) term switches on
        const double xhi = std::min(std::pow(Q, -0.1), 0.49);
        for (i64 q = 1; q <= std::pow(Q, 0.9); ++q) {
            const double xlo = ex.kappa_max() * static_cast<double>(q) * Q / ex.U0();
            for (double x = xlo; x <= xhi; x += 0.01) CHECK(std::abs(ex.g(q, x) - 1) < 0.1);
            CHECK(std::abs(ex.g(q, std::pow(Q, 0.2))) <= 0.1);
        }
    }
    CHECK(std::abs(g_weight(3, 0.2, DeltaConfig{}) - 1) < 1e-3);
}

TEST_CASE("g property audit against frozen constants") {
    DeltaConfig c;
    c.Q = 20;
    Expansion ex(c);
    std::vector<i64> qs = range(1, 20);
    std::vector<double> xs;
    for (int k = 0;; ++k) {
        const double x = 0.1 * std::pow(1.05, k);
        if (x > std::pow(20.0, 0.3)) break;
        xs.push_back(x);
        xs.push_back(-x);
    }
    auto a = g_property_audit(ex, qs, xs);
    CHECK(a.max_ratio == doctest::Approx(frozen::kDeltaEnvelope).epsilon(1e-6));
    CHECK(a.max_abs_g == doctest::Approx(frozen::kDeltaMaxAbsG).epsilon(1e-6));
    CHECK(a.max_abs_g <= frozen::kDeltaGOverLogQ * std::log(20.0) * (1 + 1e-9));
    CHECK(a.max_second < 1e3);
    for (const auto& r : a.rows) CHECK(std::abs(r.g - ex.g(r.q, -r.x)) < 1e-12);
}
