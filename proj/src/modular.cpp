#include "gl3lab/modular.hpp"

#include "gl3lab/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gl3lab {

LaurentPoly& LaurentPoly::add(const std::vector<int>& exps, i64 coeff) {
    if (static_cast<int>(exps.size()) != k)
        fail(Errc::PreconditionViolated, "exponent vector has wrong length");
    i64& c = terms[exps];
    c += coeff;
    if (c == 0) terms.erase(exps);
    return *this;
}

LaurentPoly LaurentPoly::reduced(i64 p) const {
    LaurentPoly out(k);
    for (const auto& [ex, c] : terms) {
        i64 r = modular::reduce(c, p);
        if (r != 0) out.terms[ex] = r;
    }
    return out;
}

std::vector<std::vector<int>> LaurentPoly::exponents() const {
    std::vector<std::vector<int>> out;
    out.reserve(terms.size());
    for (const auto& kv : terms) out.push_back(kv.first);
    return out;
}

namespace modular {

i64 gcd(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 reduce(i64 a, i64 q) {
    if (q <= 0) fail(Errc::InvalidModulus, "modulus must be positive");
    i64 r = a % q;
    return r < 0 ? r + q : r;
}

i64 mul_mod(i64 a, i64 b, i64 q) {
    return static_cast<i64>((static_cast<__int128>(reduce(a, q)) * reduce(b, q)) % q);
}

i64 pow_mod(i64 a, i64 e, i64 q) {
    if (e < 0) return pow_mod(mod_inverse(a, q), -e, q);
    i64 r = 1 % q, b = reduce(a, q);
    while (e > 0) {
        if (e & 1) r = mul_mod(r, b, q);
        b = mul_mod(b, b, q);
        e >>= 1;
    }
    return r;
}

i64 mod_inverse(i64 a, i64 q) {
    if (q <= 0) fail(Errc::InvalidModulus, "modulus must be positive");
    i64 r0 = q, r1 = reduce(a, q);
    i64 s0 = 0, s1 = 1;
    while (r1 != 0) {
        i64 t = r0 / r1;
        i64 r2 = r0 - t * r1;
        r0 = r1;
        r1 = r2;
        i64 s2 = s0 - t * s1;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) fail(Errc::NotInvertible, std::to_string(a) + " mod " + std::to_string(q));
    return reduce(s0, q);
}

std::pair<i64, i64> crt_split(i64 x, i64 q1, i64 q2) {
    if (q1 <= 0 || q2 <= 0) fail(Errc::InvalidModulus, "moduli must be positive");
    if (gcd(q1, q2) != 1) fail(Errc::NonCoprimeFactors, "crt_split needs coprime factors");
    return {reduce(x, q1), reduce(x, q2)};
}

i64 crt_combine(i64 r1, i64 q1, i64 r2, i64 q2) {
    if (q1 <= 0 || q2 <= 0) fail(Errc::InvalidModulus, "moduli must be positive");
    if (gcd(q1, q2) != 1) fail(Errc::NonCoprimeFactors, "crt_combine needs coprime factors");
    const i64 q = q1 * q2;
    // x = r1 + q1 * ((r2 - r1) * q1bar mod q2)
    i64 t = mul_mod(reduce(r2 - r1, q2), mod_inverse(q1, q2), q2);
    return reduce(reduce(r1, q1) + q1 * t, q);
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n <= 0) fail(Errc::InvalidModulus, "factorize needs n >= 1");
    std::vector<std::pair<i64, int>> f;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

int mobius(i64 n) {
    int m = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> d{1};
    for (auto [p, e] : factorize(n)) {
        const size_t m = d.size();
        i64 pk = 1;
        for (int j = 1; j <= e; ++j) {
            pk *= p;
            for (size_t i = 0; i < m; ++i) d.push_back(d[i] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<char> sieve(static_cast<size_t>(n) + 1, 1);
    for (i64 i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= n; j += i) sieve[j] = 0;
    }
    return out;
}

cplx kloosterman(i64 a, i64 b, i64 c) {
    if (c <= 0) fail(Errc::InvalidModulus, "kloosterman needs c >= 1");
    if (c == 1) return 1.0;
    a = reduce(a, c);
    b = reduce(b, c);
    KahanSum s;
    for (i64 x = 1; x < c; ++x) {
        if (gcd(x, c) != 1) continue;
        i64 k = reduce(mul_mod(a, x, c) + mul_mod(b, mod_inverse(x, c), c), c);
        s.add(e(static_cast<double>(k) / static_cast<double>(c)));
    }
    return s.value();
}

KloostermanTable::KloostermanTable(i64 c) : c_(c) {
    if (c <= 0) fail(Errc::InvalidModulus, "kloosterman needs c >= 1");
    inv_.assign(static_cast<size_t>(c), 0);
    cos_.resize(static_cast<size_t>(c));
    sin_.resize(static_cast<size_t>(c));
    for (i64 k = 0; k < c; ++k) {
        cplx z = e(static_cast<double>(k) / static_cast<double>(c));
        cos_[k] = z.real();
        sin_[k] = z.imag();
    }
    if (c == 1) {
        units_.push_back(0);
        return;
    }
    for (i64 x = 1; x < c; ++x) {
        if (gcd(x, c) != 1) continue;
        units_.push_back(x);
        inv_[x] = mod_inverse(x, c);
    }
}

cplx KloostermanTable::operator()(i64 a, i64 b) const {
    a = reduce(a, c_);
    b = reduce(b, c_);
    KahanSum s;
    for (i64 x : units_) {
        i64 k = (a * x + b * inv_[x]) % c_;
        s.add(cplx(cos_[k], sin_[k]));
    }
    return s.value();
}

double KloostermanTable::real_fast(i64 a, i64 b) const {
    a = reduce(a, c_);
    b = reduce(b, c_);
    double s = 0;
    for (i64 x : units_) s += cos_[(a * x + b * inv_[x]) % c_];
    return s;
}

i64 ramanujan_sum(i64 n, i64 q) {
    if (q <= 0) fail(Errc::InvalidModulus, "ramanujan_sum needs q >= 1");
    const i64 g = gcd(n, q); // gcd(0, q) = q
    i64 s = 0;
    for (i64 d : divisors(g)) s += d * mobius(q / d);
    return s;
}

cplx exp_sum_bruteforce(const LaurentPoly& f, i64 p, double cap) {
    if (p <= 0) fail(Errc::InvalidModulus, "modulus must be positive");
    if (!is_prime(p)) fail(Errc::CompositeModulus, std::to_string(p) + " is not prime");
    return exp_sum_units(f, p, cap);
}

cplx exp_sum_units(const LaurentPoly& f, i64 c, double cap) {
    if (c <= 0) fail(Errc::InvalidModulus, "modulus must be positive");
    const int k = f.k;
    if (k < 1) fail(Errc::PreconditionViolated, "need at least one variable");
    if (c == 1) return 1.0;
    const LaurentPoly g = f.reduced(c);
    std::vector<i64> units;
    for (i64 x = 1; x < c; ++x)
        if (gcd(x, c) == 1) units.push_back(x);
    const double nu = static_cast<double>(units.size());
    const double work = std::pow(nu, k) * static_cast<double>(std::max<size_t>(1, g.terms.size()));
    if (work > cap) fail(Errc::WorkCapExceeded, "unit exponential sum needs " + std::to_string(work) + " steps");

    int emin = 0, emax = 0;
    for (const auto& [ex, coef] : g.terms)
        for (int v : ex) {
            emin = std::min(emin, v);
            emax = std::max(emax, v);
        }
    const int span = emax - emin + 1;
    // pw[u * span + (e - emin)] = units[u]^e mod c
    std::vector<i64> pw(units.size() * span);
    for (size_t u = 0; u < units.size(); ++u)
        for (int ee = emin; ee <= emax; ++ee) pw[u * span + (ee - emin)] = pow_mod(units[u], ee, c);

    struct Term {
        std::vector<int> idx;
        i64 coef;
    };
    std::vector<Term> terms;
    for (const auto& [ex, coef] : g.terms) {
        Term t{{}, coef};
        for (int v : ex) t.idx.push_back(v - emin);
        terms.push_back(std::move(t));
    }
    std::vector<cplx> roots(static_cast<size_t>(c));
    for (i64 j = 0; j < c; ++j) roots[j] = e(static_cast<double>(j) / static_cast<double>(c));

    const size_t nunits = units.size();
    std::vector<size_t> x(static_cast<size_t>(k), 0);
    KahanSum s;
    while (true) {
        i64 val = 0;
        for (const Term& t : terms) {
            i64 m = t.coef;
            for (int i = 0; i < k; ++i) m = mul_mod(m, pw[x[i] * span + t.idx[i]], c);
            val = (val + m) % c;
        }
        s.add(roots[val]);
        int i = k - 1;
        while (i >= 0 && ++x[i] == nunits) x[i--] = 0;
        if (i < 0) break;
    }
    return s.value();
}

} // namespace modular
} // namespace gl3lab
