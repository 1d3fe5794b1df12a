#pragma once

#include "gl3lab/modular.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gl3lab::charsum {

struct CharSumParams {
    i64 m = 0;
    i64 h1 = 1, h2 = 1;
    i64 q1 = 1, q2 = 1;
    int eta = 1;
};

// C(a,b1,b2,b3,c,q1,q2); requires gcd(q1 q2, c) = 1 and c not dividing b2, b3.
struct AppendixSumParams {
    i64 a = 0, b1 = 0, b2 = 1, b3 = 1;
    i64 c = 3;
    i64 q1 = 1, q2 = 1;
};

using IndexPair = std::pair<int, int>; // always stored with first < second

struct IndexSets {
    int nu = 0;
    std::vector<IndexPair> I;                 // sorted
    std::vector<std::pair<int, IndexPair>> J; // (j, S) with j in S
};

struct IteratedSumSpec {
    int nu = 0;
    std::vector<i64> a_gamma; // a_1..a_{2^nu}
    std::vector<i64> a_S;     // aligned with index_sets(nu).I
    i64 b1 = 0, b2 = 1, b3 = 1;
    i64 c = 3;
    i64 q1 = 1, q2 = 1;
};

// sum over gamma mod q1 q2 of S(h1bar, eta gamma; q1) S(h2bar, eta gamma; q2) e(m gamma / q1 q2)
cplx c_eta_bruteforce(const CharSumParams& p, double cap = 1e6);
// exact value at m = 0
i64 c_eta_closed_zero(const CharSumParams& p);
// #{(a1,a2) units : -eta m = a1 q2 + a2 q1 mod q1 q2}
i64 c_eta_nonzero_support(const CharSumParams& p);
// same count through the CRT decomposition; needs gcd(q1,q2) = 1
i64 c_eta_support_crt(const CharSumParams& p);

cplx c_appendix(const AppendixSumParams& p, i64 cap = 20000);
// The phase f(x,y,z) whose exponential sum over (F_c^x)^3 equals C.
LaurentPoly appendix_phase(const AppendixSumParams& p);

// The four degeneracy conditions (any of them => c^2 regime).
bool is_degenerate(const AppendixSumParams& p);

IndexSets index_sets(int nu);
// f_nu as a Laurent polynomial; variable order: alpha_{J}, beta1, beta2, gamma_1..gamma_{2^nu}, gamma_S.
LaurentPoly iterated_phase(const IteratedSumSpec& s);
int iterated_variable_count(int nu);
cplx c_nu_bruteforce(const IteratedSumSpec& s, double cap = 1e9);

struct AuditRecord {
    i64 c = 0;
    AppendixSumParams params;
    cplx value;
    double ratio = 0;
    std::string cls; // "generic" | "degenerate"
};

struct AuditResult {
    std::vector<AuditRecord> records; // argmax per (c, class), ascending c
    double max_generic = 0, max_degenerate = 0;
    i64 samples_per_class = 0;
    // worst value of r(c2) / r(c1) over primes trend_from < c1 < c2
    double trend_generic = 0, trend_degenerate = 0;
};

// Seeded random tuples per class (a quarter each forced onto a = 0, b1 = 0, both), plus,
// when scan_stratum is set, every tuple of the normalized a = b1 = 0 stratum.
AuditResult bound_audit(i64 c_min, i64 c_max, i64 samples_per_class, std::uint64_t seed,
                        i64 trend_from = 50, bool scan_stratum = true);

} // namespace gl3lab::charsum
