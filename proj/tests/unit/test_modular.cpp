#include "doctest.h"

#include "gl3lab/error.hpp"
#include "gl3lab/modular.hpp"

#include <cmath>

using namespace gl3lab;
using namespace gl3lab::modular;

static Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::ConfigError;
}

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(1, 7) == 1);
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(mod_inverse(-4, 7) == 5);
    CHECK(mod_inverse(5, 12) == 5);
    CHECK(code_of([] { mod_inverse(2, 4); }) == Errc::NotInvertible);
    CHECK(code_of([] { mod_inverse(2, 0); }) == Errc::InvalidModulus);
}

TEST_CASE("crt round trip") {
    auto [a, b] = crt_split(7, 3, 4);
    CHECK(a == 1);
    CHECK(b == 3);
    CHECK(crt_split(0, 3, 4) == std::pair<i64, i64>{0, 0});
    CHECK(code_of([] { crt_split(1, 2, 4); }) == Errc::NonCoprimeFactors);
    for (i64 x = 0; x < 35; ++x) {
        auto [r1, r2] = crt_split(x, 5, 7);
        CHECK(crt_combine(r1, 5, r2, 7) == x);
    }
}

TEST_CASE("kloosterman small values") {
    CHECK(std::abs(kloosterman(0, 0, 6) - cplx(2, 0)) < 1e-12);
    CHECK(std::abs(kloosterman(1, 1, 3) - cplx(-1, 0)) < 1e-12);
    CHECK(std::abs(kloosterman(1, 1, 5) - cplx(0.3819660112501051, 0)) < 1e-9);
    CHECK(std::abs(kloosterman(4, 9, 1) - cplx(1, 0)) < 1e-12);
    KloostermanTable K(5);
    CHECK(std::abs(K(1, 1) - kloosterman(1, 1, 5)) < 1e-14);
    CHECK(K.real_fast(1, 1) == doctest::Approx(0.3819660112501051));
}

TEST_CASE("kloosterman twisted multiplicativity") {
    for (i64 c1 = 1; c1 <= 30; ++c1)
        for (i64 c2 = 1; c2 <= 30; c2 += 7) {
            if (gcd(c1, c2) != 1) continue;
            for (i64 a = 0; a < 4; ++a)
                for (i64 b = 1; b < 4; ++b) {
                    const i64 c1b = mod_inverse(c1, c2), c2b = mod_inverse(c2, c1);
                    cplx lhs = kloosterman(a, b, c1 * c2);
                    cplx rhs = kloosterman(a * c2b, b * c2b, c1) * kloosterman(a * c1b, b * c1b, c2);
                    CHECK(std::abs(lhs - rhs) < 1e-9);
                }
        }
}

TEST_CASE("ramanujan sum matches direct sum") {
    CHECK(ramanujan_sum(0, 12) == euler_phi(12));
    CHECK(ramanujan_sum(2, 4) == -2);
    CHECK(ramanujan_sum(1, 13) == -1);
    for (i64 q = 1; q <= 200; q += 3)
        for (i64 n = -200; n <= 200; n += 7) {
            KahanSum s;
            for (i64 a = 1; a <= q; ++a)
                if (gcd(a, q) == 1) s.add(e(static_cast<double>(reduce(a * n, q)) / q));
            CHECK(std::abs(s.value() - cplx(static_cast<double>(ramanujan_sum(n, q)), 0)) < 1e-8);
        }
}

TEST_CASE("exp_sum_bruteforce") {
    LaurentPoly x(1);
    x.add({1}, 1);
    CHECK(std::abs(exp_sum_bruteforce(x, 5) - cplx(-1, 0)) < 1e-12);
    LaurentPoly kl(1);
    kl.add({1}, 1).add({-1}, 1);
    for (i64 p : primes_up_to(97))
        CHECK(std::abs(exp_sum_bruteforce(kl, p) - kloosterman(1, 1, p)) < 1e-9);
    LaurentPoly zero(2);
    CHECK(std::abs(exp_sum_bruteforce(zero, 7) - cplx(36, 0)) < 1e-12);
    CHECK(code_of([&] { exp_sum_bruteforce(x, 9); }) == Errc::CompositeModulus);
    LaurentPoly big(6);
    big.add({1, 1, 1, 1, 1, 1}, 1);
    CHECK(code_of([&] { exp_sum_bruteforce(big, 101, 1e6); }) == Errc::WorkCapExceeded);
}

TEST_CASE("laurent poly drops zero coefficients") {
    LaurentPoly f(2);
    f.add({1, 0}, 3).add({1, 0}, -3).add({0, 1}, 5);
    CHECK(f.terms.size() == 1);
    CHECK(f.reduced(5).terms.empty());
}
