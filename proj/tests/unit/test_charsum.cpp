#include "doctest.h"

#include "gl3lab/charsum.hpp"
#include "gl3lab/error.hpp"

#include <cmath>

using namespace gl3lab;
using namespace gl3lab::charsum;
using modular::gcd;

TEST_CASE("C_eta at m = 0") {
    CHECK(std::abs(c_eta_bruteforce({0, 1, 1, 3, 5, 1})) < 1e-9);
    CHECK(std::abs(c_eta_bruteforce({0, 1, 1, 3, 3, 1}) - cplx(18, 0)) < 1e-9);
    CHECK(std::abs(c_eta_bruteforce({0, 1, 2, 3, 3, 1}) - cplx(-9, 0)) < 1e-9);
    CHECK(c_eta_closed_zero({0, 1, 1, 3, 5, 1}) == 0);
    CHECK(c_eta_closed_zero({0, 3, 3, 4, 4, 1}) == 32);
    CHECK(c_eta_closed_zero({0, 1, 3, 7, 7, -1}) == -49);
}

TEST_CASE("C_eta closed form, small grid") {
    for (i64 q1 = 1; q1 <= 12; ++q1)
        for (i64 q2 = 1; q2 <= 12; ++q2)
            for (int eta : {1, -1}) {
                i64 h1 = q1 > 2 ? q1 - 1 : 1, h2 = 1;
                CharSumParams p{0, h1, h2, q1, q2, eta};
                cplx v = c_eta_bruteforce(p);
                CHECK(std::abs(v.imag()) < 1e-6);
                CHECK(std::llround(v.real()) == c_eta_closed_zero(p));
            }
}

TEST_CASE("C_eta support count") {
    CHECK(c_eta_nonzero_support({1, 1, 1, 2, 2, 1}) == 0);
    CHECK(c_eta_nonzero_support({1, 1, 1, 2, 2, -1}) == 0);
    for (i64 q1 = 1; q1 <= 14; ++q1)
        for (i64 q2 = 1; q2 <= 14; ++q2)
            for (i64 m = 1; m <= 5; ++m) {
                CharSumParams p{m, 1, 1, q1, q2, (m % 2) ? 1 : -1};
                const i64 n = c_eta_nonzero_support(p);
                CHECK(std::abs(c_eta_bruteforce(p)) <= static_cast<double>(q1 * q2 * n) + 1e-6);
                if (gcd(q1, q2) == 1) CHECK(n == c_eta_support_crt(p));
                if (m % gcd(q1, q2) != 0) CHECK(n == 0);
            }
    try {
        c_eta_support_crt({1, 1, 1, 4, 6, 1});
        FAIL("expected NonCoprimeFactors");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonCoprimeFactors);
    }
}

TEST_CASE("C_eta preconditions") {
    try {
        c_eta_bruteforce({0, 3, 1, 3, 5, 1});
        FAIL("expected NonCoprime");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonCoprime);
    }
    try {
        c_eta_bruteforce({0, 1, 1, 101, 103, 1});
        FAIL("expected WorkCapExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::WorkCapExceeded);
    }
}

TEST_CASE("appendix sum, hand expansion at c = 3") {
    // gamma in {1,2}; with q1 = 1, q2 = 2 the inner Kloosterman sums are 2-term sums
    AppendixSumParams p{1, 1, 1, 1, 3, 1, 2};
    cplx hand = 0;
    for (i64 g = 1; g <= 2; ++g) {
        const i64 gb = g; // self-inverse mod 3
        cplx k1 = modular::kloosterman(1 - 1 + gb, g - 1, 3);
        cplx k2 = modular::kloosterman(1 - 2 + gb, g - 2, 3); // 2bar = 2
        hand += e(g / 3.0) * k1 * k2;
    }
    CHECK(std::abs(c_appendix(p) - hand) < 1e-12);
}

TEST_CASE("appendix sum equals the three-variable exponential sum") {
    for (i64 c : {5, 7, 11})
        for (i64 a : {0, 2})
            for (i64 q2 : {2, 3}) {
                AppendixSumParams p{a, 1, 2, 3, c, 1, q2};
                cplx direct = modular::exp_sum_bruteforce(appendix_phase(p), c);
                CHECK(std::abs(c_appendix(p) - direct) < 1e-9);
            }
}

TEST_CASE("appendix sum is real on the a = 0 family") {
    for (i64 c : {5, 7, 11, 13})
        for (i64 b1 = 0; b1 < c; b1 += 3) {
            AppendixSumParams p{0, b1, 1, 2, c, 1, 3};
            CHECK(std::abs(c_appendix(p).imag()) < 1e-6);
        }
}

TEST_CASE("appendix preconditions") {
    try {
        c_appendix({0, 0, 5, 1, 5, 1, 2});
        FAIL("expected PreconditionViolated");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PreconditionViolated);
    }
}

TEST_CASE("index sets") {
    auto s0 = index_sets(0);
    CHECK(s0.I.empty());
    CHECK(s0.J.empty());
    CHECK(index_sets(1).I.empty());
    auto s2 = index_sets(2);
    CHECK(s2.I == std::vector<IndexPair>{{1, 2}, {1, 3}, {3, 4}});
    CHECK(s2.J.size() == 6);
    auto s3 = index_sets(3);
    CHECK(s3.I == std::vector<IndexPair>{{1, 2}, {1, 3}, {2, 6}, {3, 4}, {5, 6}, {5, 7}, {7, 8}});
    for (int nu = 0; nu <= 6; ++nu)
        for (auto& S : index_sets(nu).I) {
            CHECK(S.first < S.second);
            CHECK(S.second <= (1 << nu));
        }
}

TEST_CASE("C_0 equals C") {
    for (i64 c : {3, 5, 7})
        for (i64 a : {0, 1}) {
            IteratedSumSpec s;
            s.nu = 0;
            s.a_gamma = {a};
            s.b1 = 1;
            s.b2 = 1;
            s.b3 = 2;
            s.c = c;
            s.q1 = 1;
            s.q2 = 2;
            AppendixSumParams p{a, 1, 1, 2, c, 1, 2};
            CHECK(std::abs(c_nu_bruteforce(s) - c_appendix(p)) < 1e-9);
        }
}

TEST_CASE("C_nu triangle bound and cap") {
    IteratedSumSpec s;
    s.nu = 2;
    s.a_gamma = {0, 0, 0, 0};
    s.a_S = {0, 0, 0};
    s.c = 3;
    s.q1 = 1;
    s.q2 = 2;
    CHECK(iterated_variable_count(2) == 15);
    cplx v = c_nu_bruteforce(s);
    CHECK(std::abs(v) <= std::pow(3.0, 8) + 1e-9);
    s.c = 13;
    try {
        c_nu_bruteforce(s);
        FAIL("expected WorkCapExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::WorkCapExceeded);
    }
}

TEST_CASE("degeneracy classification") {
    CHECK(is_degenerate({0, 0, 1, 1, 7, 3, 3}));
    CHECK(!is_degenerate({0, 1, 1, 1, 7, 1, 2}) ==
          !(modular::reduce(1 - 1, 7) == 0 || modular::reduce(1 - 4, 7) == 0));
}

TEST_CASE("small audit is deterministic") {
    auto a = bound_audit(5, 23, 30, 7);
    auto b = bound_audit(5, 23, 30, 7);
    REQUIRE(a.records.size() == b.records.size());
    for (size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].ratio == b.records[i].ratio);
    CHECK(a.max_generic > 0);
    CHECK(a.max_degenerate > 0);
}
