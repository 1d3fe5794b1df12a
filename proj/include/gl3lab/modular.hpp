#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace gl3lab {

using i64 = std::int64_t;
using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// e(x) = exp(2 pi i x)
inline cplx e(double x) { return std::polar(1.0, kTwoPi * x); }

// Neumaier-compensated complex accumulator.
class KahanSum {
public:
    void add(cplx v) {
        add1(re_, cre_, v.real());
        add1(im_, cim_, v.imag());
    }
    void add(double v) { add1(re_, cre_, v); }
    cplx value() const { return {re_ + cre_, im_ + cim_}; }

private:
    static void add1(double& s, double& c, double v) {
        double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    double re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

// Exponent vector -> integer coefficient. Zero coefficients are never stored.
struct LaurentPoly {
    int k = 1;
    std::map<std::vector<int>, i64> terms;

    LaurentPoly() = default;
    explicit LaurentPoly(int nvars) : k(nvars) {}

    LaurentPoly& add(const std::vector<int>& exps, i64 coeff);
    // Coefficients reduced into [0,p); monomials that vanish mod p are dropped.
    LaurentPoly reduced(i64 p) const;
    std::vector<std::vector<int>> exponents() const;
};

namespace modular {

i64 gcd(i64 a, i64 b);
// a mod q in [0, q)
i64 reduce(i64 a, i64 q);
i64 mul_mod(i64 a, i64 b, i64 q);
i64 pow_mod(i64 a, i64 e, i64 q);

// x with a*x = 1 (mod q); extended Euclid so composite q works.
i64 mod_inverse(i64 a, i64 q);

// x mod q1*q2 -> (x mod q1, x mod q2); requires gcd(q1,q2) = 1.
std::pair<i64, i64> crt_split(i64 x, i64 q1, i64 q2);
i64 crt_combine(i64 r1, i64 q1, i64 r2, i64 q2);

std::vector<std::pair<i64, int>> factorize(i64 n);
bool is_prime(i64 n);
int mobius(i64 n);
i64 euler_phi(i64 n);
std::vector<i64> divisors(i64 n);
std::vector<i64> primes_up_to(i64 n);

// S(a,b;c) = sum over units x mod c of e((a x + b xbar)/c)
cplx kloosterman(i64 a, i64 b, i64 c);

// Batched Kloosterman sums for one modulus: inverses and roots of unity are
// tabulated once. Iteration order is ascending x, identical to kloosterman().
class KloostermanTable {
public:
    explicit KloostermanTable(i64 c);
    i64 modulus() const { return c_; }
    cplx operator()(i64 a, i64 b) const;
    // Real part only (the sum is always real); uncompensated, for bulk audits.
    double real_fast(i64 a, i64 b) const;
    const std::vector<i64>& units() const { return units_; }
    i64 inverse(i64 x) const { return inv_[static_cast<size_t>(reduce(x, c_))]; }
    double cos_at(i64 k) const { return cos_[static_cast<size_t>(k)]; }
    double sin_at(i64 k) const { return sin_[static_cast<size_t>(k)]; }

private:
    i64 c_;
    std::vector<i64> units_;
    std::vector<i64> inv_;
    std::vector<double> cos_, sin_;
};

// c_q(n) = sum over units a mod q of e(an/q), via sum_{d | (n,q)} d mu(q/d).
i64 ramanujan_sum(i64 n, i64 q);

// sum over x in (F_p^x)^k of e(f(x)/p); cap bounds (p-1)^k * #terms.
cplx exp_sum_bruteforce(const LaurentPoly& f, i64 p, double cap = 2e9);
// Same sum over ((Z/c)^x)^k for any modulus c (lexicographic order, last variable fastest).
cplx exp_sum_units(const LaurentPoly& f, i64 c, double cap = 2e9);

} // namespace modular
} // namespace gl3lab
