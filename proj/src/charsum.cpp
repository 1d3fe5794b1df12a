#include "gl3lab/charsum.hpp"

#include "gl3lab/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace gl3lab::charsum {

using namespace modular;

namespace {

void require_units(const CharSumParams& p) {
    if (p.q1 <= 0 || p.q2 <= 0) fail(Errc::InvalidModulus, "q1, q2 must be positive");
    if (p.eta != 1 && p.eta != -1) fail(Errc::PreconditionViolated, "eta must be +1 or -1");
    if (gcd(p.h1, p.q1) != 1 || gcd(p.h2, p.q2) != 1)
        fail(Errc::NonCoprime, "need gcd(h1,q1) = gcd(h2,q2) = 1");
}

void require_appendix(const AppendixSumParams& p) {
    if (p.c <= 0) fail(Errc::InvalidModulus, "c must be positive");
    if (gcd(p.q1, p.c) != 1 || gcd(p.q2, p.c) != 1)
        fail(Errc::PreconditionViolated, "need gcd(q1 q2, c) = 1");
    if (reduce(p.b2, p.c) == 0 || reduce(p.b3, p.c) == 0)
        fail(Errc::PreconditionViolated, "c must not divide b2 or b3");
}

// C via a Kloosterman table; real part of each Kloosterman factor only, since S is real.
cplx appendix_with_table(const AppendixSumParams& p, const KloostermanTable& K, bool compensated) {
    const i64 c = p.c;
    const i64 q1b = K.inverse(p.q1), q2b = K.inverse(p.q2);
    const i64 b1 = reduce(p.b1, c), b2 = reduce(p.b2, c), b3 = reduce(p.b3, c), a = reduce(p.a, c);
    const i64 u1 = reduce(b1 - q1b * b2, c), u2 = reduce(b1 - q2b * b2, c);
    const i64 q1 = reduce(p.q1, c), q2 = reduce(p.q2, c);
    KahanSum s;
    double re = 0, im = 0;
    for (i64 g : K.units()) {
        const i64 gb = K.inverse(g);
        const i64 x1 = (u1 + gb * b2) % c, y1 = b3 * ((g - q1 + c) % c) % c;
        const i64 x2 = (u2 + gb * b2) % c, y2 = b3 * ((g - q2 + c) % c) % c;
        double k1, k2;
        if (compensated) {
            k1 = K(x1, y1).real();
            k2 = K(x2, y2).real();
        } else {
            k1 = K.real_fast(x1, y1);
            k2 = K.real_fast(x2, y2);
        }
        const i64 ph = a * g % c;
        const double w = k1 * k2;
        if (compensated)
            s.add(cplx(w * K.cos_at(ph), w * K.sin_at(ph)));
        else {
            re += w * K.cos_at(ph);
            im += w * K.sin_at(ph);
        }
    }
    return compensated ? s.value() : cplx(re, im);
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

cplx c_eta_bruteforce(const CharSumParams& p, double cap) {
    require_units(p);
    const i64 q = p.q1 * p.q2;
    const double work = static_cast<double>(q) * static_cast<double>(p.q1 + p.q2);
    if (work > cap) fail(Errc::WorkCapExceeded, "c_eta_bruteforce work " + std::to_string(work));
    const i64 h1b = mod_inverse(p.h1, p.q1), h2b = mod_inverse(p.h2, p.q2);
    // each Kloosterman factor only sees gamma mod its own modulus
    std::vector<cplx> k1(static_cast<size_t>(p.q1)), k2(static_cast<size_t>(p.q2));
    for (i64 g = 0; g < p.q1; ++g) k1[static_cast<size_t>(g)] = kloosterman(h1b, p.eta * g, p.q1);
    for (i64 g = 0; g < p.q2; ++g) k2[static_cast<size_t>(g)] = kloosterman(h2b, p.eta * g, p.q2);
    KahanSum s;
    for (i64 g = 0; g < q; ++g)
        s.add(k1[static_cast<size_t>(g % p.q1)] * k2[static_cast<size_t>(g % p.q2)] *
              e(static_cast<double>(mul_mod(p.m, g, q)) / static_cast<double>(q)));
    return s.value();
}

i64 c_eta_closed_zero(const CharSumParams& p) {
    require_units(p);
    if (p.m != 0) fail(Errc::PreconditionViolated, "closed form needs m = 0");
    if (p.q1 != p.q2) return 0;
    const i64 q = p.q1;
    i64 s = 0;
    for (i64 d : divisors(q))
        if (reduce(p.h1 - p.h2, d) == 0) s += d * mobius(q / d);
    return q * q * s;
}

i64 c_eta_nonzero_support(const CharSumParams& p) {
    require_units(p);
    const i64 q = p.q1 * p.q2;
    const i64 target = reduce(-p.eta * p.m, q);
    i64 count = 0;
    for (i64 a1 = 0; a1 < p.q1; ++a1) {
        if (gcd(a1, p.q1) != 1) continue;
        for (i64 a2 = 0; a2 < p.q2; ++a2) {
            if (gcd(a2, p.q2) != 1) continue;
            if (reduce(a1 * p.q2 + a2 * p.q1, q) == target) ++count;
        }
    }
    return count;
}

i64 c_eta_support_crt(const CharSumParams& p) {
    require_units(p);
    if (gcd(p.q1, p.q2) != 1) fail(Errc::NonCoprimeFactors, "CRT count needs gcd(q1,q2) = 1");
    // a1 = -eta m q2bar (mod q1), a2 = -eta m q1bar (mod q2); each must be a unit
    const i64 a1 = mul_mod(-p.eta * p.m, mod_inverse(p.q2, p.q1), p.q1);
    const i64 a2 = mul_mod(-p.eta * p.m, mod_inverse(p.q1, p.q2), p.q2);
    return (gcd(a1, p.q1) == 1 ? 1 : 0) * (gcd(a2, p.q2) == 1 ? 1 : 0);
}

cplx c_appendix(const AppendixSumParams& p, i64 cap) {
    require_appendix(p);
    if (p.c > cap) fail(Errc::WorkCapExceeded, "c = " + std::to_string(p.c) + " above cap");
    KloostermanTable K(p.c);
    return appendix_with_table(p, K, true);
}

LaurentPoly appendix_phase(const AppendixSumParams& p) {
    require_appendix(p);
    const i64 c = p.c;
    const i64 q1b = mod_inverse(p.q1, c), q2b = mod_inverse(p.q2, c);
    LaurentPoly f(3);
    f.add({0, 0, 1}, reduce(p.a, c));
    f.add({1, 0, 0}, reduce(p.b1 - q1b * reduce(p.b2, c), c));
    f.add({1, 0, -1}, reduce(p.b2, c));
    f.add({-1, 0, 1}, reduce(p.b3, c));
    f.add({-1, 0, 0}, reduce(-mul_mod(p.b3, p.q1, c), c));
    f.add({0, 1, 0}, reduce(p.b1 - q2b * reduce(p.b2, c), c));
    f.add({0, 1, -1}, reduce(p.b2, c));
    f.add({0, -1, 1}, reduce(p.b3, c));
    f.add({0, -1, 0}, reduce(-mul_mod(p.b3, p.q2, c), c));
    return f;
}

bool is_degenerate(const AppendixSumParams& p) {
    const i64 c = p.c;
    const i64 q1b = mod_inverse(p.q1, c), q2b = mod_inverse(p.q2, c);
    const i64 b1 = reduce(p.b1, c), b2 = reduce(p.b2, c);
    const i64 d = mul_mod(b2, q1b - q2b, c);
    return reduce(p.q1 - p.q2, c) == 0 || reduce(b1 + d, c) == 0 || reduce(b1 - d, c) == 0 ||
           reduce(b1 - q1b * b2, c) == 0 || reduce(b1 - q2b * b2, c) == 0;
}

IndexSets index_sets(int nu) {
    if (nu < 0) fail(Errc::PreconditionViolated, "nu must be >= 0");
    if (nu > 20) fail(Errc::PreconditionViolated, "nu too large");
    const int n = 1 << nu;
    std::set<IndexPair> I;
    for (int j = 0; j <= n - 1; ++j)
        if (2 * j + 2 <= n) I.insert({2 * j + 1, 2 * j + 2});
    for (int k = 0; (1 << k) <= n; ++k)
        for (int j = 0; (1 << k) * (3 + 4 * j) <= n; ++j) I.insert({(1 << k) * (1 + 4 * j), (1 << k) * (3 + 4 * j)});
    if (nu >= 1) I.erase({n / 2, n});
    IndexSets out;
    out.nu = nu;
    out.I.assign(I.begin(), I.end());
    for (const IndexPair& S : out.I) {
        out.J.push_back({S.first, S});
        out.J.push_back({S.second, S});
    }
    return out;
}

int iterated_variable_count(int nu) {
    const IndexSets ix = index_sets(nu);
    return static_cast<int>(ix.J.size()) + 2 + (1 << nu) + static_cast<int>(ix.I.size());
}

LaurentPoly iterated_phase(const IteratedSumSpec& s) {
    const IndexSets ix = index_sets(s.nu);
    const int n = 1 << s.nu;
    const int nJ = static_cast<int>(ix.J.size()), nI = static_cast<int>(ix.I.size());
    if (static_cast<int>(s.a_gamma.size()) != n || static_cast<int>(s.a_S.size()) != nI)
        fail(Errc::PreconditionViolated, "coefficient map does not match index sets");
    AppendixSumParams chk{0, s.b1, s.b2, s.b3, s.c, s.q1, s.q2};
    require_appendix(chk);
    const i64 c = s.c;
    const int k = nJ + 2 + n + nI;
    auto gamma_j = [&](int j) { return nJ + 2 + (j - 1); };
    auto gamma_S = [&](const IndexPair& S) {
        auto it = std::lower_bound(ix.I.begin(), ix.I.end(), S);
        return nJ + 2 + n + static_cast<int>(it - ix.I.begin());
    };
    LaurentPoly f(k);
    auto mono = [&](std::initializer_list<std::pair<int, int>> pw, i64 coeff) {
        std::vector<int> ex(static_cast<size_t>(k), 0);
        for (auto [v, e] : pw) ex[v] += e;
        f.add(ex, reduce(coeff, c));
    };
    const i64 b1 = reduce(s.b1, c), b2 = reduce(s.b2, c), b3 = reduce(s.b3, c);
    for (int j = 1; j <= n; ++j) mono({{gamma_j(j), 1}}, s.a_gamma[j - 1]);
    for (int i = 0; i < nI; ++i) mono({{gamma_S(ix.I[i]), 1}}, s.a_S[i]);
    for (int t = 0; t < nJ; ++t) {
        const int al = t;
        const int gj = gamma_j(ix.J[t].first), gS = gamma_S(ix.J[t].second);
        // alpha (b1 - gS^{-1} b2 + gj^{-1} b2) + alpha^{-1} (gj - gS) b3
        mono({{al, 1}}, b1);
        mono({{al, 1}, {gS, -1}}, -b2);
        mono({{al, 1}, {gj, -1}}, b2);
        mono({{al, -1}, {gj, 1}}, b3);
        mono({{al, -1}, {gS, 1}}, -b3);
    }
    // beta1 pairs with gamma_{2^{nu-1}}, beta2 with gamma_{2^nu}; at nu = 0 both are gamma_1
    const int m1 = gamma_j(s.nu >= 1 ? n / 2 : 1), m2 = gamma_j(n);
    const int be1 = nJ, be2 = nJ + 1;
    const i64 q1b = mod_inverse(s.q1, c), q2b = mod_inverse(s.q2, c);
    mono({{be1, 1}}, b1 - mul_mod(q1b, b2, c));
    mono({{be1, 1}, {m1, -1}}, b2);
    mono({{be1, -1}, {m1, 1}}, b3);
    mono({{be1, -1}}, -mul_mod(s.q1, b3, c));
    mono({{be2, 1}}, b1 - mul_mod(q2b, b2, c));
    mono({{be2, 1}, {m2, -1}}, b2);
    mono({{be2, -1}, {m2, 1}}, b3);
    mono({{be2, -1}}, -mul_mod(s.q2, b3, c));
    return f;
}

cplx c_nu_bruteforce(const IteratedSumSpec& s, double cap) {
    return exp_sum_units(iterated_phase(s), s.c, cap);
}

AuditResult bound_audit(i64 c_min, i64 c_max, i64 samples_per_class, std::uint64_t seed, i64 trend_from,
                        bool scan_stratum) {
    if (samples_per_class < 1) fail(Errc::PreconditionViolated, "need at least one sample per class");
    AuditResult out;
    out.samples_per_class = samples_per_class;
    std::vector<std::pair<i64, double>> rg, rd;
    for (i64 c : primes_up_to(c_max)) {
        if (c < std::max<i64>(c_min, 3)) continue;
        KloostermanTable K(c);
        std::mt19937_64 rng(splitmix(seed ^ splitmix(static_cast<std::uint64_t>(c))));
        auto draw = [&](i64 lo, i64 n) { return lo + static_cast<i64>(rng() % static_cast<std::uint64_t>(n)); };
        for (int cls = 0; cls < 2; ++cls) {
            const bool degenerate = cls == 1;
            const double scale = degenerate ? static_cast<double>(c) * c : std::pow(static_cast<double>(c), 1.5);
            AuditRecord best;
            best.ratio = -1;
            i64 taken = 0, attempts = 0;
            while (taken < samples_per_class && attempts < 50 * samples_per_class) {
                ++attempts;
                AppendixSumParams p;
                p.c = c;
                p.a = draw(0, c);
                p.b1 = draw(0, c);
                p.b2 = draw(1, c - 1);
                p.b3 = draw(1, c - 1);
                p.q1 = draw(1, c - 1);
                p.q2 = draw(1, c - 1);
                // a quarter of the draws each land on a = 0, b1 = 0, or both: the extremes live there
                const i64 stratum = draw(0, 4);
                if (stratum & 1) p.a = 0;
                if (stratum & 2) p.b1 = 0;
                if (degenerate) {
                    const i64 q1b = K.inverse(p.q1), q2b = K.inverse(p.q2);
                    switch (draw(0, 4)) {
                    case 0: p.q2 = p.q1; break;
                    case 1: {
                        const i64 d = mul_mod(p.b2, q1b - q2b, c);
                        p.b1 = reduce(draw(0, 2) ? -d : d, c);
                        break;
                    }
                    case 2: p.b1 = mul_mod(q1b, p.b2, c); break;
                    default: p.b1 = mul_mod(q2b, p.b2, c); break;
                    }
                } else if (is_degenerate(p)) {
                    continue;
                }
                ++taken;
                const cplx v = appendix_with_table(p, K, false);
                const double r = std::abs(v) / scale;
                if (r > best.ratio) {
                    best.c = c;
                    best.params = p;
                    best.value = v;
                    best.ratio = r;
                }
            }
            if (scan_stratum) {
                // With a = b1 = 0 the sum depends only on b2 b3 and q2/q1, so this c^2 scan
                // covers that whole stratum; it is where the largest ratios sit.
                for (i64 k = 1; k < c; ++k)
                    for (i64 q2 = 1; q2 < c; ++q2) {
                        AppendixSumParams p{0, 0, 1, k, c, 1, q2};
                        if (is_degenerate(p) != degenerate) continue;
                        ++taken;
                        const cplx v = appendix_with_table(p, K, false);
                        const double r = std::abs(v) / scale;
                        if (r > best.ratio) {
                            best.c = c;
                            best.params = p;
                            best.value = v;
                            best.ratio = r;
                        }
                    }
            }
            if (taken == 0) continue; // class empty at this c (e.g. c = 3 has no generic tuple)
            // recompute the winner with compensated sums so the stored value is the careful one
            best.value = appendix_with_table(best.params, K, true);
            best.ratio = std::abs(best.value) / scale;
            best.cls = degenerate ? "degenerate" : "generic";
            (degenerate ? rd : rg).push_back({c, best.ratio});
            if (degenerate)
                out.max_degenerate = std::max(out.max_degenerate, best.ratio);
            else
                out.max_generic = std::max(out.max_generic, best.ratio);
            out.records.push_back(best);
        }
    }
    auto trend = [&](const std::vector<std::pair<i64, double>>& r) {
        double worst = 0;
        for (size_t i = 0; i < r.size(); ++i)
            for (size_t j = i + 1; j < r.size(); ++j)
                if (r[i].first > trend_from && r[i].second > 0) worst = std::max(worst, r[j].second / r[i].second);
        return worst;
    };
    out.trend_generic = trend(rg);
    out.trend_degenerate = trend(rd);
    return out;
}

} // namespace gl3lab::charsum
