#include "gl3lab/voronoi.hpp"

#include "gl3lab/error.hpp"
#include "gl3lab/quad.hpp"

#include <gsl/gsl_fft_complex.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace gl3lab::gl3 {

SmoothWindow::SmoothWindow(double a, double b, int nodes) : a_(a), b_(b), nodes_(nodes) {
    if (!(a > 0) || !(b > a)) fail(Errc::PreconditionViolated, "window support must satisfy 0 < a < b");
    const double la = std::log(a), lb = std::log(b), dv = (lb - la) / nodes;
    for (int m = 1; m < nodes; ++m) {
        const double v = la + m * dv;
        v_.push_back(v);
        w_.push_back(quad::bump_on(v, la, lb) * dv);
    }
}

double SmoothWindow::operator()(double x) const {
    if (x <= a_ || x >= b_) return 0;
    return quad::bump_on(std::log(x), std::log(a_), std::log(b_));
}

cplx SmoothWindow::mellin(cplx s) const {
    KahanSum acc;
    for (size_t m = 0; m < v_.size(); ++m) acc.add(w_[m] * std::exp(s * v_[m]));
    return acc.value();
}

std::vector<cplx> SmoothWindow::mellin_line(cplx s0, cplx ds, int n) const {
    std::vector<cplx> out(static_cast<size_t>(n), 0);
    constexpr int kRefresh = 512; // restart the rotation now and then to stop drift
    for (size_t m = 0; m < v_.size(); ++m) {
        const double v = v_[m], w = w_[m];
        const cplx r = std::exp(ds * v);
        cplx z;
        for (int k = 0; k < n; ++k) {
            if (k % kRefresh == 0) z = std::exp((s0 + static_cast<double>(k) * ds) * v);
            out[static_cast<size_t>(k)] += w * z;
            z *= r;
        }
    }
    return out;
}

namespace {

void check_contour(const GL3Form& f, double sigma) {
    const auto poles = gamma_poles(f, sigma - 1);
    for (double p : poles)
        if (std::abs(p - sigma) < 0.05) fail(Errc::ContourTooClose, "sigma within 0.05 of a pole of gamma_pm");
    if (!poles.empty() && sigma < poles.front())
        fail(Errc::ContourTooClose, "sigma lies left of the pole at " + std::to_string(poles.front()));
}

} // namespace

HTransform::HTransform(const GL3Form& f, const SmoothWindow& w, int sign) : HTransform(f, w, sign, Options{}) {}

HTransform::HTransform(const GL3Form& f, const SmoothWindow& w, int sign, const Options& opt)
    : sign_(sign > 0 ? 1 : -1), opt_(opt) {
    check_contour(f, opt.sigma);
    const double h = opt.step;
    for (double T = 200;; T *= 2) {
        const int n = 2 * static_cast<int>(std::ceil(T / h)) + 1;
        tau0_ = -h * (n - 1) / 2;
        const auto ht = w.mellin_line(cplx(-opt.sigma, -tau0_), cplx(0, -h), n);
        k_.assign(static_cast<size_t>(n), 0);
        double mx = 0, hmx = 0;
        for (int k = 0; k < n; ++k) {
            const cplx s(opt.sigma, tau0_ + h * k);
            k_[static_cast<size_t>(k)] = gamma_pm(s, f, sign_) * ht[static_cast<size_t>(k)];
            mx = std::max(mx, std::abs(k_[static_cast<size_t>(k)]));
            hmx = std::max(hmx, std::abs(ht[static_cast<size_t>(k)]));
        }
        // below 1e-15 of its peak htilde is rounding noise; gamma's growth must not promote it
        auto small = [&](int k) {
            return std::abs(k_[static_cast<size_t>(k)]) < opt.cutoff * mx || std::abs(ht[static_cast<size_t>(k)]) < 1e-15 * hmx;
        };
        int lo = 0, hi = n - 1;
        while (lo < hi && small(lo)) ++lo;
        while (hi > lo && small(hi)) --hi;
        if ((lo > 0 && hi < n - 1) || T > 1e5) {
            k_ = std::vector<cplx>(k_.begin() + lo, k_.begin() + hi + 1);
            tau0_ += h * lo;
            break;
        }
    }
}

cplx HTransform::operator()(double y) const {
    if (!(y > 0)) fail(Errc::PreconditionViolated, "H_pm needs y > 0");
    const double ly = std::log(y), h = opt_.step;
    const cplx r = std::exp(cplx(0, -h * ly));
    cplx z = std::exp(cplx(0, -tau0_ * ly)), acc = 0;
    for (size_t k = 0; k < k_.size(); ++k) {
        if (k % 1024 == 0) z = std::exp(cplx(0, -(tau0_ + h * static_cast<double>(k)) * ly));
        acc += k_[k] * z;
        z *= r;
    }
    return acc * std::exp(-opt_.sigma * ly) * (h / kTwoPi);
}

double HTransform::tau_extent(double rel) const {
    double mx = 0;
    for (const cplx& v : k_) mx = std::max(mx, std::abs(v));
    double ext = 0;
    for (size_t k = 0; k < k_.size(); ++k)
        if (std::abs(k_[k]) >= rel * mx) ext = std::max(ext, std::abs(tau0_ + opt_.step * static_cast<double>(k)));
    return ext;
}

HTransform::Grid HTransform::grid(double y_min, double y_max) const {
    if (!(y_min > 0) || !(y_max >= y_min)) fail(Errc::PreconditionViolated, "grid needs 0 < y_min <= y_max");
    const double h = opt_.step, tau_max = std::max(std::abs(tau0_), std::abs(tau_hi()));
    const double period = kTwoPi / h; // the trapezoid sum is periodic in log y
    const double l_lo = std::log(y_min) - 1e-9, l_hi = std::log(y_max) + 1e-9;
    if (l_hi - l_lo >= period) fail(Errc::PreconditionViolated, "grid range exceeds the trapezoid period");
    size_t P = 1024;
    while (P < k_.size() || period / static_cast<double>(P) * tau_max > 0.15) P *= 2;
    Grid g;
    g.l0_ = l_lo;
    g.dl_ = period / static_cast<double>(P);
    g.sigma_ = opt_.sigma;
    g.scale_ = h / kTwoPi;
    const size_t m = static_cast<size_t>(std::ceil((l_hi - l_lo) / g.dl_)) + 2;
    // G(l0 + j dl) = e^{-i tau0 l_j} sum_k k_k e^{-i k h l0} e^{-2 pi i k j / P}
    std::vector<double> buf(2 * P);
    for (int d = 0; d < 3; ++d) {
        std::fill(buf.begin(), buf.end(), 0.0);
        for (size_t k = 0; k < k_.size(); ++k) {
            const double tau = tau0_ + h * static_cast<double>(k);
            cplx b = k_[k] * std::exp(cplx(0, -static_cast<double>(k) * h * l_lo));
            if (d >= 1) b *= cplx(0, -tau);
            if (d == 2) b *= cplx(0, -tau);
            buf[2 * k] = b.real();
            buf[2 * k + 1] = b.imag();
        }
        gsl_fft_complex_radix2_forward(buf.data(), 1, P);
        auto& out = d == 0 ? g.g_ : d == 1 ? g.g1_ : g.g2_;
        out.resize(m);
        for (size_t j = 0; j < m; ++j)
            out[j] = cplx(buf[2 * j], buf[2 * j + 1]) * std::exp(cplx(0, -tau0_ * (l_lo + g.dl_ * static_cast<double>(j))));
    }
    return g;
}

cplx HTransform::Grid::operator()(double y) const {
    const double ly = std::log(y);
    const double x = (ly - l0_) / dl_;
    if (x < 0 || x + 1 >= static_cast<double>(g_.size())) fail(Errc::PreconditionViolated, "y outside the H grid");
    const size_t i = static_cast<size_t>(x);
    const double t = x - static_cast<double>(i), t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5, h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
    const double h2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
    const double q0 = 10 * t3 - 15 * t4 + 6 * t5, q1 = -4 * t3 + 7 * t4 - 3 * t5, q2 = 0.5 * (t3 - 2 * t4 + t5);
    const double d = dl_, dd = dl_ * dl_;
    const cplx G = h0 * g_[i] + h1 * d * g1_[i] + h2 * dd * g2_[i] + q0 * g_[i + 1] + q1 * d * g1_[i + 1] + q2 * dd * g2_[i + 1];
    return G * std::exp(-sigma_ * ly) * scale_;
}

cplx h_pm_contour(double y, const SmoothWindow& w, const GL3Form& f, int sign, double sigma) {
    HTransform::Options o;
    o.sigma = sigma;
    return HTransform(f, w, sign, o)(y);
}

std::vector<cplx> asymptotic_basis(double x, const SmoothWindow& w, int sign, int L) {
    // 32-point Gauss-Legendre panels, one per quarter oscillation or so
    static const quad::GaussLegendre gl(32);
    const double osc = 3 * std::cbrt(x) * (std::cbrt(w.b()) - std::cbrt(w.a()));
    const int panels = std::max(8, static_cast<int>(std::ceil(osc)) + 8);
    std::vector<double> xs, ws;
    std::vector<cplx> out(static_cast<size_t>(L), 0);
    const double dy = (w.b() - w.a()) / panels;
    for (int p = 0; p < panels; ++p) {
        gl.map(w.a() + p * dy, w.a() + (p + 1) * dy, xs, ws);
        for (size_t i = 0; i < xs.size(); ++i) {
            const double z = x * xs[i], c = std::cbrt(z);
            const cplx ph = e(sign * 3.0 * c) * (w(xs[i]) * ws[i] * x);
            double pw = 1;
            for (int l = 0; l < L; ++l) {
                pw /= c;
                out[static_cast<size_t>(l)] += ph * pw;
            }
        }
    }
    return out;
}

namespace {

// least squares by modified Gram-Schmidt on the columns of A (rows x cols)
std::vector<cplx> lstsq(std::vector<std::vector<cplx>> A, std::vector<cplx> b) {
    const size_t m = b.size(), n = A.empty() ? 0 : A[0].size();
    std::vector<std::vector<cplx>> Q(n, std::vector<cplx>(m));
    std::vector<std::vector<cplx>> R(n, std::vector<cplx>(n, 0));
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < m; ++i) Q[j][i] = A[i][j];
        for (size_t k = 0; k < j; ++k) {
            cplx d = 0;
            for (size_t i = 0; i < m; ++i) d += std::conj(Q[k][i]) * Q[j][i];
            R[k][j] = d;
            for (size_t i = 0; i < m; ++i) Q[j][i] -= d * Q[k][i];
        }
        double nn = 0;
        for (size_t i = 0; i < m; ++i) nn += std::norm(Q[j][i]);
        nn = std::sqrt(nn);
        R[j][j] = nn;
        for (size_t i = 0; i < m; ++i) Q[j][i] /= nn;
    }
    std::vector<cplx> c(n), x(n);
    for (size_t j = 0; j < n; ++j) {
        cplx d = 0;
        for (size_t i = 0; i < m; ++i) d += std::conj(Q[j][i]) * b[i];
        c[j] = d;
    }
    for (size_t j = n; j-- > 0;) {
        cplx s = c[j];
        for (size_t k = j + 1; k < n; ++k) s -= R[j][k] * x[k];
        x[j] = s / R[j][j];
    }
    return x;
}

} // namespace

GammaFit fit_gamma(const GL3Form& f, int sign, int L, double x_lo, double x_hi, int points) {
    const SmoothWindow w(1, 2);
    const HTransform H(f, w, sign);
    std::vector<std::vector<cplx>> A;
    std::vector<cplx> b;
    for (int k = 0; k < points; ++k) {
        const double x = x_lo * std::pow(x_hi / x_lo, static_cast<double>(k) / (points - 1));
        const cplx h = H(x);
        auto row = asymptotic_basis(x, w, sign, L);
        // weight rows by 1/|H| so the fit is in relative terms
        const double s = 1 / std::abs(h);
        for (auto& v : row) v *= s;
        A.push_back(row);
        b.push_back(h * s);
    }
    GammaFit g;
    g.sign = sign;
    g.gamma = lstsq(A, b);
    for (size_t i = 0; i < b.size(); ++i) {
        cplx r = b[i];
        for (int l = 0; l < L; ++l) r -= A[i][static_cast<size_t>(l)] * g.gamma[static_cast<size_t>(l)];
        g.max_residual = std::max(g.max_residual, std::abs(r));
    }
    return g;
}

const GammaFit& gamma_coefficients(const GL3Form& f, int sign) {
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, GammaFit> cache;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(f.name, sign > 0 ? 1 : -1);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, fit_gamma(f, key.second, 4, 100, 20000, 40)).first;
    return it->second;
}

cplx h_pm_asymptotic(double x, const SmoothWindow& w, const GL3Form& f, int sign, int L) {
    if (x * w.a() < 10) fail(Errc::AsymptoticRegimeViolated, "need x * inf(support) >= 10");
    const GammaFit& g = gamma_coefficients(f, sign);
    if (L < 1 || L > static_cast<int>(g.gamma.size())) fail(Errc::PreconditionViolated, "L out of range");
    const auto basis = asymptotic_basis(x, w, sign, L);
    cplx s = 0;
    for (int l = 0; l < L; ++l) s += g.gamma[static_cast<size_t>(l)] * basis[static_cast<size_t>(l)];
    return s;
}

std::vector<VoronoiReport> voronoi_sweep(const GL3Form& f, i64 q, const SmoothWindow& w, const std::vector<i64>& as,
                                         const VoronoiOptions& opt) {
    if (q < 1) fail(Errc::InvalidModulus, "q must be positive");
    for (i64 a : as)
        if (modular::gcd(a, q) != 1) fail(Errc::NonCoprime, "need gcd(a,q) = 1");
    if (!f.cuspidal) fail(Errc::PreconditionViolated, "the identity has no polar terms only for cusp forms");

    const i64 n_lo = static_cast<i64>(std::floor(w.a())) + 1, n_hi = static_cast<i64>(std::ceil(w.b())) - 1;
    f.ensure(n_hi);
    const HTransform Hp(f, w, 1), Hm(f, w, -1);
    // H(y) is negligible once the stationary point pi (y x)^{1/3}, x in supp h, leaves the
    // region where the kernel exceeds tail_tol of its maximum
    const double T = std::max(Hp.tau_extent(opt.tail_tol), Hm.tau_extent(opt.tail_tol));
    const double y_max = std::pow(T / M_PI, 3) / w.a();

    // dual terms lambda(n,n0)/(n n0) H_pm(y), shared by every a
    struct Block {
        i64 n0, c;
        std::vector<cplx> hp, hm;
    };
    std::vector<Block> blocks;
    i64 dual = 0;
    const auto ns0 = modular::divisors(q);
    for (i64 n0 : ns0) {
        const double scale = static_cast<double>(n0 * n0) / static_cast<double>(q * q * q);
        const i64 N = static_cast<i64>(std::ceil(y_max / scale));
        if (N > opt.truncation)
            fail(Errc::TruncationInsufficient, "dual sum needs " + std::to_string(N) + " terms for n0 = " + std::to_string(n0));
    }
    const double y_min = 1.0 / static_cast<double>(q * q * q);
    const auto Gp = Hp.grid(y_min, y_max * 1.01), Gm = Hm.grid(y_min, y_max * 1.01);
    for (i64 n0 : ns0) {
        const double scale = static_cast<double>(n0 * n0) / static_cast<double>(q * q * q);
        const i64 N = static_cast<i64>(std::ceil(y_max / scale));
        dual = std::max(dual, N);
        f.ensure(N);
        Block b{n0, q / n0, {}, {}};
        b.hp.resize(static_cast<size_t>(N));
        b.hm.resize(static_cast<size_t>(N));
        for (i64 n = 1; n <= N; ++n) {
            const double y = scale * static_cast<double>(n);
            const cplx c = f.lambda(n, n0) / static_cast<double>(n * n0);
            b.hp[static_cast<size_t>(n - 1)] = c * Gp(y);
            b.hm[static_cast<size_t>(n - 1)] = c * Gm(y);
        }
        blocks.push_back(std::move(b));
    }

    std::vector<VoronoiReport> out;
    for (i64 a : as) {
        VoronoiReport r;
        r.a = a;
        r.q = q;
        r.dual_terms = dual;
        KahanSum lhs;
        for (i64 n = n_lo; n <= n_hi; ++n)
            lhs.add(f.lambda1(n) * e(static_cast<double>(modular::reduce(a * n, q)) / static_cast<double>(q)) * w(static_cast<double>(n)));
        r.lhs = lhs.value();
        KahanSum rhs;
        double last = 0;
        for (const Block& b : blocks) {
            const modular::KloostermanTable S(b.c);
            const i64 abar = b.c == 1 ? 0 : modular::mod_inverse(a, b.c);
            const i64 N = static_cast<i64>(b.hp.size());
            for (i64 n = 1; n <= N; ++n) {
                const cplx sp = b.c == 1 ? 1.0 : S(abar, n), sm = b.c == 1 ? 1.0 : S(abar, -n);
                const cplx term = sp * b.hp[static_cast<size_t>(n - 1)] + sm * b.hm[static_cast<size_t>(n - 1)];
                rhs.add(term);
                if (n > N - 10) last = std::max(last, std::abs(term));
            }
        }
        r.rhs = rhs.value() * static_cast<double>(q);
        const double scale = std::max({std::abs(r.lhs), std::abs(r.rhs), opt.floor});
        r.rel_err = std::abs(r.lhs - r.rhs) / scale;
        r.tail = last * static_cast<double>(q) / scale;
        out.push_back(r);
    }
    return out;
}

VoronoiReport voronoi_check(const GL3Form& f, i64 a, i64 q, const SmoothWindow& w, const VoronoiOptions& opt) {
    return voronoi_sweep(f, q, w, {a}, opt).front();
}

} // namespace gl3lab::gl3
