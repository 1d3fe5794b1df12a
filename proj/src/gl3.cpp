#include "gl3lab/gl3.hpp"

#include "gl3lab/error.hpp"
#include "gl3lab/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>

namespace gl3lab::gl3 {

namespace {

constexpr i64 kP1 = 2305843009213693951LL; // 2^61 - 1
constexpr i64 kP2 = 2305843009213693921LL;
constexpr i64 kTauLimit = 1000000;

i64 mulm(i64 a, i64 b, i64 p) { return static_cast<i64>(static_cast<unsigned __int128>(a) * b % p); }

// both moduli are 2^61 - c with small c, so products fold without division
using u128 = unsigned __int128;
constexpr std::uint64_t kM61 = (1ULL << 61) - 1;

u128 fold(u128 x, std::uint64_t c) { return (x & kM61) + (x >> 61) * c; }

i64 finish(u128 x, i64 p) {
    const std::uint64_t c = (1ULL << 61) - static_cast<std::uint64_t>(p);
    x = fold(fold(fold(x, c), c), c);
    while (x >= static_cast<u128>(p)) x -= static_cast<u128>(p);
    return static_cast<i64>(x);
}

std::vector<i64> delta_mod(i64 n, i64 p) {
    // f = g^8 with g = sum (-1)^k (2k+1) q^{k(k+1)/2}; f_m = (1/m) sum_j (9j - m) g_j f_{m-j}
    const std::uint64_t c = (1ULL << 61) - static_cast<std::uint64_t>(p);
    std::vector<i64> js, g, jg;
    for (i64 k = 1; k * (k + 1) / 2 <= n; ++k) {
        const i64 j = k * (k + 1) / 2;
        js.push_back(j);
        g.push_back(modular::reduce((k % 2 ? -1 : 1) * (2 * k + 1), p));
        jg.push_back(mulm(g.back(), j, p));
    }
    std::vector<i64> inv(static_cast<size_t>(n + 1), 1);
    for (i64 m = 2; m <= n; ++m) inv[static_cast<size_t>(m)] = mulm(p - p / m, inv[static_cast<size_t>(p % m)], p);
    std::vector<i64> f(static_cast<size_t>(n), 0);
    f[0] = 1;
    for (i64 m = 1; m < n; ++m) {
        u128 A = 0, B = 0;
        for (size_t t = 0; t < js.size() && js[t] <= m; ++t) {
            const u128 fm = static_cast<std::uint64_t>(f[static_cast<size_t>(m - js[t])]);
            A += fold(fm * static_cast<std::uint64_t>(g[t]), c);
            B += fold(fm * static_cast<std::uint64_t>(jg[t]), c);
        }
        const i64 a = finish(A, p), b = finish(B, p);
        const i64 s = modular::reduce(mulm(9, b, p) - mulm(m, a, p), p);
        f[static_cast<size_t>(m)] = mulm(s, inv[static_cast<size_t>(m)], p);
    }
    return f;
}

double to_double(i128 v) { return static_cast<double>(static_cast<long double>(v)); }

// ---- d3 ----

class D3Coefficients final : public Coefficients {
public:
    D3Coefficients() : Coefficients("d3") {}

protected:
    std::vector<cplx> compute(i64 n_max) const override {
        std::vector<i64> d(static_cast<size_t>(n_max + 1), 0), d3(static_cast<size_t>(n_max + 1), 0);
        for (i64 a = 1; a <= n_max; ++a)
            for (i64 b = a; b <= n_max; b += a) d[static_cast<size_t>(b)]++;
        for (i64 a = 1; a <= n_max; ++a)
            for (i64 b = a; b <= n_max; b += a) d3[static_cast<size_t>(b)] += d[static_cast<size_t>(b / a)];
        std::vector<cplx> out(static_cast<size_t>(n_max + 1));
        for (i64 k = 1; k <= n_max; ++k) out[static_cast<size_t>(k)] = static_cast<double>(d3[static_cast<size_t>(k)]);
        return out;
    }
    cplx lambda_general(i64 m, i64 n) const override {
        double v = 1;
        i64 g = m * n;
        for (auto [p, e] : modular::factorize(g)) {
            (void)e;
            int a = 0, b = 0;
            while (m % p == 0) m /= p, ++a;
            while (n % p == 0) n /= p, ++b;
            v *= (a + 1) * (b + 1) * (a + b + 2) / 2;
        }
        return v;
    }
};

// ---- sym^2 Delta ----

class Sym2Coefficients final : public Coefficients {
public:
    Sym2Coefficients() : Coefficients("sym2_delta") {}

protected:
    std::vector<cplx> compute(i64 n_max) const override {
        if (n_max > kTauLimit) fail(Errc::PreconditionViolated, "sym2_delta coefficients limited to n <= 10^6");
        auto tau = ramanujan_tau(n_max);
        std::vector<i64> spf(static_cast<size_t>(n_max + 1), 0);
        for (i64 p = 2; p <= n_max; ++p)
            if (!spf[static_cast<size_t>(p)])
                for (i64 k = p; k <= n_max; k += p)
                    if (!spf[static_cast<size_t>(k)]) spf[static_cast<size_t>(k)] = p;
        std::vector<cplx> out(static_cast<size_t>(n_max + 1));
        out[1] = 1;
        std::vector<double> lf; // lambda_f(p^j)
        for (i64 n = 2; n <= n_max; ++n) {
            const i64 p = spf[static_cast<size_t>(n)];
            i64 r = n;
            int k = 0;
            while (r % p == 0) r /= p, ++k;
            const double lp = to_double(tau[static_cast<size_t>(p)]) / std::pow(static_cast<double>(p), 5.5);
            lf.assign(static_cast<size_t>(2 * k + 1), 0);
            lf[0] = 1;
            lf[1] = lp;
            for (int j = 1; j < 2 * k; ++j) lf[static_cast<size_t>(j + 1)] = lp * lf[static_cast<size_t>(j)] - lf[static_cast<size_t>(j - 1)];
            double v = 0;
            for (int i = 0; 2 * i <= k; ++i) v += lf[static_cast<size_t>(2 * (k - 2 * i))];
            out[static_cast<size_t>(n)] = v * out[static_cast<size_t>(r)];
        }
        return out;
    }
};

// contragredient: lambda~(m,n) = lambda(n,m)
class DualCoefficients final : public Coefficients {
public:
    explicit DualCoefficients(std::shared_ptr<const Coefficients> base)
        : Coefficients(base->name() + "~"), base_(std::move(base)) {}

protected:
    std::vector<cplx> compute(i64 n_max) const override {
        base_->ensure(n_max);
        std::vector<cplx> out(static_cast<size_t>(n_max + 1));
        for (i64 k = 1; k <= n_max; ++k) out[static_cast<size_t>(k)] = std::conj(base_->lambda1(k));
        return out;
    }
    cplx lambda_general(i64 m, i64 n) const override { return base_->lambda(n, m); }

private:
    std::shared_ptr<const Coefficients> base_;
};

// ---- cache file ----

bool load_cache(const std::string& name, i64 need, std::vector<cplx>& out) {
    const std::string path = cache_path(name);
    if (path.empty()) return false;
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    char magic[4];
    std::uint32_t len = 0;
    if (!in.read(magic, 4) || std::memcmp(magic, "GL3C", 4) != 0) return false;
    if (!in.read(reinterpret_cast<char*>(&len), 4) || len > 256) return false;
    std::string stored(len, '\0');
    if (!in.read(stored.data(), len) || stored != name) return false;
    std::uint64_t count = 0;
    if (!in.read(reinterpret_cast<char*>(&count), 8) || static_cast<i64>(count) < need) return false;
    std::vector<double> buf(2 * count);
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * 8))) return false;
    out.assign(count + 1, 0);
    for (std::uint64_t k = 0; k < count; ++k) out[k + 1] = {buf[2 * k], buf[2 * k + 1]};
    return true;
}

void store_cache(const std::string& name, const std::vector<cplx>& t) {
    const std::string path = cache_path(name);
    if (path.empty()) return;
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;
        const std::uint32_t len = static_cast<std::uint32_t>(name.size());
        const std::uint64_t count = t.size() - 1;
        out.write("GL3C", 4);
        out.write(reinterpret_cast<const char*>(&len), 4);
        out.write(name.data(), len);
        out.write(reinterpret_cast<const char*>(&count), 8);
        for (size_t k = 1; k < t.size(); ++k) {
            const double re = t[k].real(), im = t[k].imag();
            out.write(reinterpret_cast<const char*>(&re), 8);
            out.write(reinterpret_cast<const char*>(&im), 8);
        }
        if (!out) return;
    }
    std::rename(tmp.c_str(), path.c_str());
}

// numerator / denominator Gamma arguments of gamma_a
struct GammaArgs {
    std::array<cplx, 3> num, den;
    cplx kappa;
};

GammaArgs gamma_args(cplx s, const GL3Form& f, int a) {
    GammaArgs g;
    int sum = 0;
    for (int j = 0; j < 3; ++j) {
        const int aj = (a + f.parity[static_cast<size_t>(j)]) % 2;
        sum += aj;
        g.num[static_cast<size_t>(j)] = 0.5 * (1.0 + s + f.alpha[static_cast<size_t>(j)] + static_cast<double>(aj));
        g.den[static_cast<size_t>(j)] = 0.5 * (-s - f.alpha[static_cast<size_t>(j)] + static_cast<double>(aj));
    }
    static const cplx ipow[4] = {1, {0, 1}, -1, {0, -1}};
    g.kappa = ipow[modular::reduce(sum - 3 * a, 4)];
    return g;
}

cplx gamma_a_regular(cplx s, const GL3Form& f, int a) {
    const GammaArgs g = gamma_args(s, f, a);
    cplx l = (-3.0 * s - 1.5) * std::log(M_PI);
    for (int j = 0; j < 3; ++j) l += special::lgamma(g.num[static_cast<size_t>(j)]) - special::lgamma(g.den[static_cast<size_t>(j)]);
    return 0.5 * g.kappa * std::exp(l);
}

} // namespace

std::vector<i128> ramanujan_tau(i64 n) {
    if (n < 1) return std::vector<i128>(1, 0);
    if (n > kTauLimit) fail(Errc::PreconditionViolated, "tau is exact only for n <= 10^6");
    const auto f1 = delta_mod(n, kP1), f2 = delta_mod(n, kP2);
    const i64 inv = modular::pow_mod(kP1 % kP2, kP2 - 2, kP2);
    const i128 P = static_cast<i128>(kP1) * kP2;
    std::vector<i128> tau(static_cast<size_t>(n + 1), 0);
    for (i64 k = 1; k <= n; ++k) {
        const i64 r1 = f1[static_cast<size_t>(k - 1)], r2 = f2[static_cast<size_t>(k - 1)];
        const i64 t = mulm(modular::reduce(r2 - r1, kP2), inv, kP2);
        i128 x = static_cast<i128>(r1) + static_cast<i128>(kP1) * t;
        if (x > P / 2) x -= P;
        tau[static_cast<size_t>(k)] = x;
    }
    return tau;
}

std::string to_string(i128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (u) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

std::string cache_path(const std::string& name) {
    const char* dir = std::getenv("GL3LAB_CACHE_DIR");
    if (!dir || !*dir) return {};
    return std::string(dir) + "/" + name + ".coef";
}

void Coefficients::ensure(i64 n) const {
    if (n <= limit()) return;
    std::lock_guard<std::mutex> lock(mu_);
    if (n <= limit()) return;
    const i64 want = std::max<i64>(n, std::max<i64>(1024, 2 * limit()));
    std::vector<cplx> t;
    if (load_cache(name_, n, t)) {
        table_ = std::move(t);
        return;
    }
    i64 target = want;
    if (name_ == "sym2_delta") target = std::min(want, kTauLimit);
    t = compute(std::max(n, target));
    store_cache(name_, t);
    table_ = std::move(t);
}

cplx Coefficients::lambda1(i64 n) const {
    if (n < 1) fail(Errc::PreconditionViolated, "coefficients need n >= 1");
    ensure(n);
    return table_[static_cast<size_t>(n)];
}

cplx Coefficients::lambda(i64 m, i64 n) const {
    if (m < 1 || n < 1) fail(Errc::PreconditionViolated, "coefficients need m, n >= 1");
    if (m == 1) return lambda1(n);
    return lambda_general(m, n);
}

cplx Coefficients::lambda_general(i64 m, i64 n) const {
    cplx s = 0;
    for (i64 d : modular::divisors(modular::gcd(m, n))) {
        const int mu = modular::mobius(d);
        if (mu) s += static_cast<double>(mu) * std::conj(lambda1(m / d)) * lambda1(n / d);
    }
    return s;
}

GL3Form GL3Form::dual() const {
    GL3Form d = *this;
    d.name = name + "~";
    for (int j = 0; j < 3; ++j) {
        d.alpha[static_cast<size_t>(j)] = -alpha[static_cast<size_t>(2 - j)];
        d.parity[static_cast<size_t>(j)] = parity[static_cast<size_t>(2 - j)];
        d.mu[static_cast<size_t>(j)] = mu[static_cast<size_t>(j)];
    }
    if (!self_dual) d.coeff = std::make_shared<DualCoefficients>(coeff);
    return d;
}

GL3Form d3_form() {
    static const auto coeff = std::make_shared<D3Coefficients>();
    GL3Form f;
    f.name = "d3";
    f.self_dual = true;
    f.cuspidal = false;
    f.coeff = coeff;
    return f;
}

GL3Form sym2_delta_form(std::array<double, 3> alpha) {
    static const auto coeff = std::make_shared<Sym2Coefficients>();
    GL3Form f;
    f.name = "sym2_delta";
    f.alpha = {alpha[0], alpha[1], alpha[2]};
    f.parity = {1, 1, 0};
    f.mu = {1, 11, 12};
    f.self_dual = true;
    f.cuspidal = true;
    f.coeff = coeff;
    return f;
}

GL3Form builtin_form(const std::string& name) {
    if (name == "d3") return d3_form();
    if (name == "sym2_delta") return sym2_delta_form();
    fail(Errc::ConfigError, "unknown form '" + name + "'");
}

cplx builtin_coefficients(const std::string& name, i64 m, i64 n) { return builtin_form(name).lambda(m, n); }

cplx hecke_defect(const GL3Form& f, i64 m, i64 n) {
    cplx s = 0;
    for (i64 d : modular::divisors(modular::gcd(m, n))) {
        const int mu = modular::mobius(d);
        if (mu) s += static_cast<double>(mu) * f.lambda(m / d, 1) * f.lambda(1, n / d);
    }
    return s - f.lambda(m, n);
}

double ramanujan_average(const GL3Form& f, i64 x) {
    f.ensure(x);
    double s = 0;
    for (i64 n1 = 1; n1 * n1 <= x; ++n1)
        for (i64 n2 = 1; n1 * n1 * n2 <= x; ++n2) s += std::norm(f.lambda(n2, n1));
    return s / static_cast<double>(x);
}

// ---- gamma factors ----

cplx gamma_a(cplx s, const GL3Form& f, int a) {
    if (a != 0 && a != 1) fail(Errc::PreconditionViolated, "a must be 0 or 1");
    const GammaArgs g = gamma_args(s, f, a);
    constexpr double tol = 1e-12;
    int poles = 0, zeros = 0;
    for (int j = 0; j < 3; ++j) {
        poles += special::near_nonpositive_integer(g.num[static_cast<size_t>(j)], tol);
        zeros += special::near_nonpositive_integer(g.den[static_cast<size_t>(j)], tol);
    }
    if (poles > zeros) fail(Errc::PoleEncountered, "gamma_a has a pole at this s");
    if (poles < zeros) return 0;
    if (poles > 0) {
        constexpr double h = 1e-6;
        return 0.5 * (gamma_a_regular(s + h, f, a) + gamma_a_regular(s - h, f, a));
    }
    return gamma_a_regular(s, f, a);
}

cplx gamma_pm(cplx s, const GL3Form& f, int sign) {
    const cplx i(0, 1);
    return gamma_a(s, f, 0) - static_cast<double>(sign > 0 ? 1 : -1) * i * gamma_a(s, f, 1);
}

std::vector<double> gamma_poles(const GL3Form& f, double floor) {
    std::vector<double> out;
    double top = floor;
    for (const cplx& al : f.alpha) top = std::max(top, -al.real());
    for (int a = 0; a <= 1; ++a) {
        std::vector<cplx> num, den;
        for (int j = 0; j < 3; ++j) {
            const int aj = (a + f.parity[static_cast<size_t>(j)]) % 2;
            const cplx al = f.alpha[static_cast<size_t>(j)];
            for (int k = 0;; ++k) {
                const cplx s = -1.0 - al - static_cast<double>(aj + 2 * k);
                if (s.real() < floor) break;
                num.push_back(s);
            }
            for (int k = 0;; ++k) {
                const cplx s = static_cast<double>(aj + 2 * k) - al;
                if (s.real() > top) break;
                den.push_back(s);
            }
        }
        for (size_t i = 0; i < num.size(); ++i) {
            const cplx s = num[i];
            if (std::find_if(out.begin(), out.end(), [&](double r) { return std::abs(r - s.real()) < 1e-12; }) != out.end()) continue;
            auto near = [&](cplx z) { return std::abs(z - s) < 1e-12; };
            const auto np = std::count_if(num.begin(), num.end(), near);
            const auto nz = std::count_if(den.begin(), den.end(), near);
            if (np > nz) out.push_back(s.real());
        }
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

cplx log_l_factor(cplx s, const GL3Form& f) {
    cplx l = 0;
    for (double m : f.mu) l += special::log_gamma_r(s + m);
    return l;
}

ParameterCheck validate_parameters(const GL3Form& f) {
    const GL3Form d = f.dual();
    auto ratio = [&](cplx s) {
        return gamma_a(s, f, 0) * 2.0 * std::exp(log_l_factor(-s, f) - log_l_factor(1.0 + s, d));
    };
    ParameterCheck r;
    const cplx pts[] = {{-0.5, 3.0}, {-0.5, 17.0}, {-0.3, -8.0}, {0.2, 40.0}, {-0.5, 0.7}};
    r.ratio = ratio(pts[0]);
    for (cplx s : pts) r.max_dev = std::max(r.max_dev, std::abs(ratio(s) / r.ratio - 1.0));
    r.ok = r.max_dev < 1e-8 && std::abs(std::abs(r.ratio) - 1.0) < 1e-8;
    return r;
}

} // namespace gl3lab::gl3
