#include "gl3lab/delta.hpp"

#include "gl3lab/error.hpp"
#include "gl3lab/quad.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace gl3lab::delta {

// b(kappa) = int_{-1}^{1} p(v) cos(pi kappa v) dv and its first two derivatives on a uniform
// grid, for the unit profile p; quintic Hermite in between.
struct ProfileTable {
    double h = 0.02;
    double kmax = 0;
    std::vector<double> b, b1, b2;
};

namespace {

double profile(Profile p, double v) {
    const double b = quad::bump(v);
    return p == Profile::bump ? b : b * b;
}

std::shared_ptr<const ProfileTable> build_table(Profile p) {
    auto t = std::make_shared<ProfileTable>();
    // trapezoid on [-1,1] is spectrally accurate for a flat-ended profile; aliasing sits at
    // kappa + 2/dv
    const int M = 512;
    const double dv = 1.0 / M;
    std::vector<double> pv(M + 1);
    for (int j = 0; j <= M; ++j) pv[static_cast<size_t>(j)] = profile(p, j * dv);
    const double cap = 400;
    const size_t n = static_cast<size_t>(cap / t->h) + 1;
    t->b.resize(n);
    t->b1.resize(n);
    t->b2.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const double k = static_cast<double>(i) * t->h;
        double s0 = 0.5 * pv[0], s1 = 0, s2 = 0;
        for (int j = 1; j < M; ++j) {
            const double v = j * dv, a = M_PI * v;
            const double c = std::cos(a * k), s = std::sin(a * k);
            const double f = pv[static_cast<size_t>(j)];
            s0 += f * c;
            s1 -= f * a * s;
            s2 -= f * a * a * c;
        }
        t->b[i] = 2 * dv * s0;
        t->b1[i] = 2 * dv * s1;
        t->b2[i] = 2 * dv * s2;
    }
    // cut the table where the transform has decayed below 1e-14 of its peak for good
    const double floor = 1e-14 * t->b[0];
    size_t last = 0;
    for (size_t i = 0; i < n; ++i)
        if (std::abs(t->b[i]) > floor || std::abs(t->b1[i]) * t->h > floor) last = i;
    t->kmax = std::min(static_cast<double>(last + 1) * t->h, cap);
    return t;
}

std::shared_ptr<const ProfileTable> table_for(Profile p) {
    static std::mutex mu;
    static std::map<Profile, std::shared_ptr<const ProfileTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[p];
    if (!slot) slot = build_table(p);
    return slot;
}

} // namespace

Expansion::Expansion(const DeltaConfig& cfg) : cfg_(cfg) {
    if (!(cfg.Q >= 2)) fail(Errc::PreconditionViolated, "Q must be at least 2");
    U0_ = cfg.U0 > 0 ? cfg.U0 : 400 * cfg.Q * cfg.Q;
    qmax_ = static_cast<i64>(std::floor(2 * cfg.Q));
    double s = 0;
    for (i64 d = static_cast<i64>(std::ceil(cfg.Q)); d <= qmax_; ++d) s += profile(cfg.profile, (2 * d - 3 * cfg.Q) / cfg.Q);
    norm_ = s;
    table_ = table_for(cfg.profile);
}

double Expansion::w(double d) const { return profile(cfg_.profile, (2 * d - 3 * cfg_.Q) / cfg_.Q) / norm_; }

double Expansion::kappa_max() const { return table_->kmax; }

double Expansion::weight_sum() const {
    KahanSum s;
    for (i64 d = 1; d <= qmax_ + 1; ++d) s.add(w(static_cast<double>(d)));
    return s.value().real();
}

double Expansion::c_q(i64 q) const {
    double s = 0;
    for (i64 r = 1; q * r <= qmax_; ++r) s += w(static_cast<double>(q * r)) / static_cast<double>(q * r);
    return s;
}

double Expansion::Delta(i64 q, double u) const {
    const double au = std::abs(u), Q = cfg_.Q;
    double s = c_q(q);
    const i64 r0 = std::max<i64>(1, static_cast<i64>(std::floor(au / (2 * Q * q))));
    const i64 r1 = static_cast<i64>(std::ceil(au / (Q * q)));
    for (i64 r = r0; r <= r1; ++r) {
        const double qr = static_cast<double>(q * r);
        s -= w(au / qr) / qr;
    }
    return s;
}

double Expansion::what(double k) const {
    const ProfileTable& t = *table_;
    if (k >= t.kmax) return 0;
    const double pos = k / t.h;
    const size_t i = static_cast<size_t>(pos);
    const double s = pos - static_cast<double>(i), h = t.h;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const double H0 = 1 - 10 * s3 + 15 * s4 - 6 * s5, H1 = s - 6 * s3 + 8 * s4 - 3 * s5,
                 H2 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5), H3 = 0.5 * (s3 - 2 * s4 + s5),
                 H4 = -4 * s3 + 7 * s4 - 3 * s5, H5 = 10 * s3 - 15 * s4 + 6 * s5;
    return t.b[i] * H0 + h * t.b1[i] * H1 + h * h * t.b2[i] * H2 + t.b[i + 1] * H5 + h * t.b1[i + 1] * H4 +
           h * h * t.b2[i + 1] * H3;
}

double Expansion::g(i64 q, double x) const {
    const double Q = cfg_.Q, ax = std::abs(x), qQ = static_cast<double>(q) * Q;
    // smooth cutoff of the constant part: box[-1.5,1.5] convolved with a Gaussian of width sigma
    const double xi = U0_ * ax / qQ;
    const double box = xi == 0 ? 3.0 : std::sin(3 * M_PI * xi) / (M_PI * xi);
    const double spike = c_q(q) * U0_ * box * std::exp(-std::pow(M_PI * sigma_ * xi, 2));
    // each w(|u|/qr)/qr transforms to 2 What(r x/Q) = (Q/norm) cos(3 pi r x) b(r x)
    const i64 R = static_cast<i64>(std::floor(U0_ / qQ));
    const double kmax = table_->kmax;
    i64 rmax = R;
    if (ax > 0) rmax = std::min<i64>(R, static_cast<i64>(kmax / ax) + 1);
    // cos(3 pi r x) by the Chebyshev recurrence
    const double c1 = std::cos(3 * M_PI * ax);
    double cprev = 1, ccur = c1, s = 0;
    for (i64 r = 1; r <= rmax; ++r) {
        s += ccur * what(static_cast<double>(r) * ax);
        const double cn = 2 * c1 * ccur - cprev;
        cprev = ccur;
        ccur = cn;
    }
    return spike - Q / norm_ * s;
}

std::vector<double> Expansion::fourier_integrals(i64 q, const std::vector<i64>& ns) const {
    const double Q = cfg_.Q, qQ = static_cast<double>(q) * Q;
    const double R = std::floor(U0_ / qQ), kmax = table_->kmax;
    const double xs = 6.5 / (M_PI * sigma_) / U0_ * qQ;
    double nmax = 0;
    for (i64 n : ns) nmax = std::max(nmax, std::abs(static_cast<double>(n)));
    static const quad::GaussLegendre gl(16);
    std::vector<double> acc(ns.size(), 0.0), px, pw;
    const double xend = std::max(kmax, xs);
    double x = 0;
    while (x < xend) {
        double f = 1.5 * (x > 0 ? std::min(R, kmax / x) : R) + nmax / qQ + 0.5;
        if (x < xs) f += 1.5 * U0_ / qQ;
        const double b = std::min(xend, x + 1 / f);
        gl.map(x, b, px, pw);
        for (size_t j = 0; j < px.size(); ++j) {
            const double gv = 2 * pw[j] * g(q, px[j]);
            for (size_t k = 0; k < ns.size(); ++k)
                acc[k] += gv * std::cos(kTwoPi * static_cast<double>(ns[k]) * px[j] / qQ);
        }
        x = b;
    }
    for (double& a : acc) a /= qQ;
    return acc;
}

double Expansion::detect_direct(i64 n) const {
    // sum over d of (1/d) sum_{c mod d} e(cn/d) (w(d) - w(|n|/d)); the c-sum is d [d | n]
    KahanSum s;
    if (n == 0) {
        for (i64 d = 1; d <= qmax_ + 1; ++d) s.add(w(static_cast<double>(d)));
        return s.value().real();
    }
    const i64 an = std::abs(n);
    for (i64 d : modular::divisors(an)) s.add(w(static_cast<double>(d)) - w(static_cast<double>(an / d)));
    return s.value().real();
}

double Expansion::detect_fourier(i64 n) const { return detect_fourier(std::vector<i64>{n})[0]; }

std::vector<double> Expansion::detect_fourier(const std::vector<i64>& ns) const {
    for (i64 n : ns)
        if (static_cast<double>(std::abs(n)) > U0_) fail(Errc::PreconditionViolated, "|n| beyond the truncation radius");
    std::vector<KahanSum> acc(ns.size());
    for (i64 q = 1; q <= qmax_; ++q) {
        // the a-sum, literally
        std::vector<double> as(ns.size());
        for (size_t k = 0; k < ns.size(); ++k) {
            KahanSum a;
            for (i64 c = 1; c <= q; ++c)
                if (modular::gcd(c, q) == 1)
                    a.add(e(static_cast<double>(modular::reduce(c * ns[k], q)) / static_cast<double>(q)));
            as[k] = a.value().real();
        }
        const auto I = fourier_integrals(q, ns);
        for (size_t k = 0; k < ns.size(); ++k) acc[k].add(as[k] * I[k]);
    }
    std::vector<double> out;
    for (auto& a : acc) out.push_back(a.value().real());
    return out;
}

double delta_detect(i64 n, const DeltaConfig& cfg, bool fourier) {
    Expansion ex(cfg);
    const double v = fourier ? ex.detect_fourier(n) : ex.detect_direct(n);
    const double target = n == 0 ? 1.0 : 0.0;
    if (std::abs(v - target) > cfg.tol)
        fail(Errc::QuadratureFailure, "detection identity off by " + std::to_string(std::abs(v - target)));
    return v;
}

double g_weight(i64 q, double x, const DeltaConfig& cfg) {
    Expansion ex(cfg);
    if (q < 1 || q > ex.qmax()) fail(Errc::PreconditionViolated, "q outside [1, 2Q]");
    return ex.g(q, x);
}

GAudit g_property_audit(const Expansion& ex, const std::vector<i64>& qs, const std::vector<double>& xs) {
    GAudit out;
    const double Q = ex.config().Q, logQ = std::log(Q);
    for (i64 q : qs)
        for (double x : xs) {
            const double h = 1e-4 * std::max(1e-2, std::abs(x));
            const double gm = ex.g(q, x - h), g0 = ex.g(q, x), gp = ex.g(q, x + h);
            GAuditRow r;
            r.q = q;
            r.x = x;
            r.g = g0;
            r.dg = (gp - gm) / (2 * h);
            const double ax = std::abs(x);
            r.envelope = std::min(1 / ax, Q / static_cast<double>(q)) * logQ / ax;
            r.ratio = std::abs(r.dg) / r.envelope;
            r.second = (gp - 2 * g0 + gm) / (h * h);
            out.max_ratio = std::max(out.max_ratio, r.ratio);
            out.max_second = std::max(out.max_second, std::abs(r.second));
            out.max_abs_g = std::max(out.max_abs_g, std::abs(g0));
            out.rows.push_back(r);
        }
    return out;
}

} // namespace gl3lab::delta
