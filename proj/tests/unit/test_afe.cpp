#include "doctest.h"

#include "gl3lab/afe.hpp"
#include "gl3lab/error.hpp"
#include "gl3lab/special.hpp"

#include <cmath>

using namespace gl3lab;
using namespace gl3lab::gl3;

namespace {

cplx zeta_cubed(cplx s) {
    const cplx z = special::zeta_em(s);
    return z * z * z;
}

} // namespace

TEST_CASE("d3 at 1/2 + 30i against zeta cubed") {
    const cplx s(0.5, 30);
    auto r = l_value_afe_full(s, d3_form());
    const cplx z = zeta_cubed(s);
    CHECK(std::abs(r.value - z) <= 1e-3 * std::abs(z));
    CHECK(std::abs(r.value - z) <= 1e-7 * std::abs(z));
    CHECK(r.neglected_pole < 1e-100);
    CHECK(r.terms1 > 0);
}

TEST_CASE("choice of G does not matter") {
    const cplx s(0.5, 30);
    AfeOptions a, b, c;
    b.G.cosine = true;
    c.G.A = 0.25;
    for (auto f : {d3_form(), sym2_delta_form()}) {
        const cplx u = l_value_afe(s, f, a), v = l_value_afe(s, f, b), w = l_value_afe(s, f, c);
        CHECK(std::abs(u - v) <= 1e-4 * std::abs(u));
        CHECK(std::abs(u - w) <= 1e-4 * std::abs(u));
    }
}

TEST_CASE("d3 on a short ladder of t") {
    AfeOptions o;
    o.G.A = 0.25;
    // the two sums are each hundreds of times larger than L; measure the error against them
    for (double t : {21.5, 60.0, 150.0}) {
        const cplx s(0.5, t), z = zeta_cubed(s);
        auto r = l_value_afe_full(s, d3_form(), o);
        CHECK(std::abs(r.value - z) <= 1e-8 * (std::abs(r.first) + std::abs(r.second)));
    }
    // exp(u^2/4) does not suppress the residue at t = 7
    CHECK_THROWS_AS(l_value_afe({0.5, 7}, d3_form(), o), Error);
    CHECK_NOTHROW(l_value_afe({0.5, 7}, d3_form()));
}

TEST_CASE("pole term guard") {
    CHECK_THROWS_AS(l_value_afe({0.5, 2}, d3_form()), Error);
}

TEST_CASE("symmetric square is self-dual") {
    auto f = sym2_delta_form();
    auto g = f.dual();
    for (double t : {10.0, 30.0}) {
        const cplx a = l_value_afe({0.5, t}, f), b = l_value_afe({0.5, t}, g);
        CHECK(std::abs(std::abs(a) - std::abs(b)) <= 1e-3 * std::abs(a));
        // real coefficients: L(conj s) = conj L(s)
        CHECK(std::abs(a - std::conj(l_value_afe({0.5, -t}, f))) <= 1e-7 * std::abs(a));
    }
}

TEST_CASE("V is close to 1 for small y") {
    auto d = d3_form();
    CHECK(std::abs(afe_V({0.5, 200}, 1, d) - 1.0) < 2e-3);
    CHECK(std::abs(afe_V({0.5, 200}, 2, d) - 1.0) < 5e-3);
    CHECK(std::abs(afe_V({0.5, 200}, 5, d) - 1.0) < 5e-2);
    CHECK_THROWS_AS(afe_V({0.5, 200}, 0.5, d), Error);
    // and negligible far beyond the conductor
    CHECK(std::abs(afe_V({0.5, 30}, 1e6, d)) < 1e-12);
}

TEST_CASE("tabulated V matches direct evaluation") {
    AfeV V({0.5, 40}, sym2_delta_form());
    V.tabulate(1e5);
    for (double y : {1.0, 3.7, 150.0, 9999.0, 6e4}) CHECK(std::abs(V.fast(y) - V(y)) < 1e-10);
}
