#include "gl3lab/afe.hpp"

#include "gl3lab/error.hpp"

#include <algorithm>
#include <cmath>

namespace gl3lab::gl3 {

cplx AfeG::operator()(cplx u) const {
    cplx g = std::exp(A * u * u);
    if (cosine) g *= std::cos(u / 3.0);
    return g;
}

AfeV::AfeV(cplx s, const GL3Form& f, const AfeOptions& opt) : c_(opt.c), step_(opt.step) {
    const cplx ls = log_l_factor(s, f);
    for (double V = 8 / std::sqrt(opt.G.A);; V *= 1.5) {
        const int n = 2 * static_cast<int>(std::ceil(V / step_)) + 1;
        v0_ = -step_ * (n - 1) / 2;
        k_.resize(static_cast<size_t>(n));
        double mx = 0;
        for (int k = 0; k < n; ++k) {
            const cplx u(c_, v0_ + step_ * k);
            k_[static_cast<size_t>(k)] = opt.G(u) / u * std::exp(log_l_factor(s + u, f) - ls);
            mx = std::max(mx, std::abs(k_[static_cast<size_t>(k)]));
        }
        const double thr = 1e-17 * mx;
        if (std::abs(k_.front()) < thr && std::abs(k_.back()) < thr) {
            int lo = 0, hi = n - 1;
            while (std::abs(k_[static_cast<size_t>(lo)]) < thr) ++lo;
            while (std::abs(k_[static_cast<size_t>(hi)]) < thr) --hi;
            k_ = std::vector<cplx>(k_.begin() + lo, k_.begin() + hi + 1);
            v0_ += step_ * lo;
            break;
        }
        if (V > 200) fail(Errc::NoConvergence, "V_s integrand does not decay on the contour");
    }
}

cplx AfeV::eval(double ly, cplx* d1, cplx* d2) const {
    const cplx r = std::exp(cplx(0, -step_ * ly));
    cplx z = std::exp(cplx(0, -v0_ * ly)), acc = 0, a1 = 0, a2 = 0;
    for (size_t k = 0; k < k_.size(); ++k) {
        const cplx t = k_[k] * z;
        acc += t;
        if (d1) {
            const cplx u(c_, v0_ + step_ * static_cast<double>(k));
            a1 -= t * u;
            a2 += t * u * u;
        }
        z *= r;
    }
    const double pre = std::exp(-c_ * ly) * step_ / kTwoPi;
    if (d1) *d1 = a1 * pre;
    if (d2) *d2 = a2 * pre;
    return acc * pre;
}

cplx AfeV::operator()(double y) const {
    // on Re u = c the terms carry y^{-c}; below y = 1 they cancel catastrophically at large t
    if (!(y >= 1)) fail(Errc::DomainViolation, "V_s(y) is evaluated for y >= 1 only");
    return eval(std::log(y), nullptr, nullptr);
}

double AfeV::cutoff(double tol) const {
    // past the transition V decays like a Gaussian in log y; wait for a full unit below tol
    constexpr double dl = 0.05;
    double run_start = -1;
    for (double ly = 0; ly < 40; ly += dl) {
        if (std::abs(eval(ly, nullptr, nullptr)) < tol) {
            if (run_start < 0) run_start = ly;
            if (ly - run_start >= 1) return std::exp(run_start);
        } else {
            run_start = -1;
        }
    }
    fail(Errc::TruncationInsufficient, "V_s does not fall below tolerance for y < e^40");
}

void AfeV::tabulate(double y_max, double h) {
    th_ = h;
    const int n = static_cast<int>(std::ceil(std::log(std::max(y_max, 1.0)) / h)) + 2;
    tv_.resize(static_cast<size_t>(n));
    td_.resize(static_cast<size_t>(n));
    tdd_.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const size_t k = static_cast<size_t>(i);
        tv_[k] = eval(h * i, &td_[k], &tdd_[k]);
    }
}

cplx AfeV::fast(double y) const {
    const double x = std::log(y) / th_;
    const size_t i = static_cast<size_t>(x);
    if (tv_.empty() || i + 1 >= tv_.size()) return (*this)(y);
    // quintic Hermite on [i, i+1] from values and first two derivatives
    const double t = x - static_cast<double>(i), t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5, h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
    const double h2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
    const double g0 = 10 * t3 - 15 * t4 + 6 * t5, g1 = -4 * t3 + 7 * t4 - 3 * t5, g2 = 0.5 * (t3 - 2 * t4 + t5);
    const double hh = th_ * th_;
    return h0 * tv_[i] + h1 * th_ * td_[i] + h2 * hh * tdd_[i] + g0 * tv_[i + 1] + g1 * th_ * td_[i + 1] +
           g2 * hh * tdd_[i + 1];
}

cplx afe_V(cplx s, double y, const GL3Form& f, const AfeG& G) {
    AfeOptions o;
    o.G = G;
    return AfeV(s, f, o)(y);
}

namespace {

cplx dirichlet_sum(const GL3Form& f, cplx s, AfeV& V, const AfeOptions& opt, i64& terms) {
    const double y = V.cutoff(opt.v_tol);
    if (y > static_cast<double>(opt.max_terms))
        fail(Errc::TruncationInsufficient, "AFE needs " + std::to_string(y) + " terms");
    terms = static_cast<i64>(std::ceil(y));
    f.ensure(terms);
    V.tabulate(static_cast<double>(terms) + 1);
    KahanSum acc;
    for (i64 n = 1; n <= terms; ++n) {
        const double ln = std::log(static_cast<double>(n));
        acc.add(f.lambda1(n) * std::exp(-s * ln) * V.fast(static_cast<double>(n)));
    }
    return acc.value();
}

} // namespace

AfeResult l_value_afe_full(cplx s, const GL3Form& f, const AfeOptions& opt) {
    AfeResult r;
    const double t = s.imag();
    if (f.name == "d3") {
        if (std::abs(t) < 5) fail(Errc::PreconditionViolated, "d3 testbed needs |t| >= 5 (pole of zeta^3 at s = 1)");
        r.neglected_pole = std::abs(opt.G(1.0 - s)) * std::exp(0.75 * M_PI * std::abs(t));
        // a narrow G lets the residue through at moderate t
        if (r.neglected_pole > 1e-9)
            fail(Errc::PreconditionViolated, "pole term of relative size " + std::to_string(r.neglected_pole) +
                                                 " is not negligible for this G");
    }
    const GL3Form d = f.dual();
    AfeV V1(s, f, opt), V2(1.0 - s, d, opt);
    r.first = dirichlet_sum(f, s, V1, opt, r.terms1);
    r.ratio = std::exp(log_l_factor(1.0 - s, d) - log_l_factor(s, f));
    r.second = r.ratio * dirichlet_sum(d, 1.0 - s, V2, opt, r.terms2);
    r.value = r.first + r.second;
    return r;
}

cplx l_value_afe(cplx s, const GL3Form& f, const AfeOptions& opt) { return l_value_afe_full(s, f, opt).value; }

} // namespace gl3lab::gl3
