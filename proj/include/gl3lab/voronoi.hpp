#pragma once

#include "gl3lab/gl3.hpp"

#include <vector>

namespace gl3lab::gl3 {

// h(x) = bump in log x, supported on [a,b] with peak 1 at sqrt(ab).
class SmoothWindow {
public:
    SmoothWindow(double a, double b, int nodes = 2048);
    double a() const { return a_; }
    double b() const { return b_; }
    double operator()(double x) const;
    // Mellin transform int h(x) x^{s-1} dx, trapezoid in v = log x
    cplx mellin(cplx s) const;
    // mellin(s0 + k ds) for k = 0..n-1
    std::vector<cplx> mellin_line(cplx s0, cplx ds, int n) const;
    SmoothWindow scaled(double c) const { return SmoothWindow(a_ * c, b_ * c, nodes_); }

private:
    double a_, b_;
    int nodes_;
    std::vector<double> v_, w_; // log-nodes and weight h(e^v) * dv
};

// H_pm(y) = (1/2 pi i) int_(sigma) y^{-s} gamma_pm(s) htilde(-s) ds, by the trapezoid rule in
// tau = Im s. The integrand is tabulated once; each y costs one pass over the table.
class HTransform {
public:
    struct Options {
        double sigma = -0.5;
        double step = 0.05;
        double cutoff = 1e-13; // drop tau where |gamma htilde| < cutoff * max
    };
    HTransform(const GL3Form& f, const SmoothWindow& w, int sign);
    HTransform(const GL3Form& f, const SmoothWindow& w, int sign, const Options& opt);
    cplx operator()(double y) const;
    int sign() const { return sign_; }
    double tau_lo() const { return tau0_; }
    double tau_hi() const { return tau0_ + opt_.step * static_cast<double>(k_.size() - 1); }
    // |tau| beyond which the kernel stays below rel * max (used to size dual sums)
    double tau_extent(double rel) const;

    // H on a uniform grid in log y, filled by three FFTs (value and two log-derivatives) and
    // read back with quintic Hermite. The grid step keeps tau_max * step <= 0.15.
    class Grid {
    public:
        cplx operator()(double y) const;

    private:
        friend class HTransform;
        double l0_ = 0, dl_ = 0, sigma_ = 0, scale_ = 0;
        std::vector<cplx> g_, g1_, g2_; // band-limited part and its derivatives in log y
    };
    Grid grid(double y_min, double y_max) const;

private:
    int sign_;
    Options opt_;
    double tau0_ = 0;
    std::vector<cplx> k_; // gamma_pm(s) htilde(-s) at s = sigma + i(tau0 + k step)
};

cplx h_pm_contour(double y, const SmoothWindow& w, const GL3Form& f, int sign, double sigma = -0.5);

// Leading-term integrals x int h(y) (xy)^{-l/3} e(sign 3 (xy)^{1/3}) dy, l = 1..L
std::vector<cplx> asymptotic_basis(double x, const SmoothWindow& w, int sign, int L);

struct GammaFit {
    int sign = 1;
    std::vector<cplx> gamma; // gamma_1..gamma_L
    double max_residual = 0; // relative, over the calibration ladder
};
// gamma_l fitted by least squares to the contour integral on x in [x_lo, x_hi], window [1,2].
// Cached per (form, sign); the constants do not depend on the window.
const GammaFit& gamma_coefficients(const GL3Form& f, int sign);
GammaFit fit_gamma(const GL3Form& f, int sign, int L, double x_lo, double x_hi, int points);

// requires x * a >= 10
cplx h_pm_asymptotic(double x, const SmoothWindow& w, const GL3Form& f, int sign, int L);

struct VoronoiReport {
    i64 a = 0, q = 0;
    cplx lhs, rhs;
    double rel_err = 0;
    i64 dual_terms = 0; // largest dual n used over all n0 | q
    double tail = 0;    // size of the last dual terms, relative to max(|lhs|, |rhs|)
};

struct VoronoiOptions {
    i64 truncation = 2000000; // cap on dual terms per n0
    double tail_tol = 1e-6;   // relative size of the discarded kernel
    double floor = 1e-12;
};

// sum lambda(1,n) e(an/q) h(n) against
// q sum_pm sum_{n0 | q} sum_n lambda(n,n0)/(n n0) S(abar, pm n; q/n0) H_pm(n0^2 n / q^3)
VoronoiReport voronoi_check(const GL3Form& f, i64 a, i64 q, const SmoothWindow& w, const VoronoiOptions& opt = {});
// same for several a at once; the dual H values are computed once
std::vector<VoronoiReport> voronoi_sweep(const GL3Form& f, i64 q, const SmoothWindow& w, const std::vector<i64>& as,
                                         const VoronoiOptions& opt = {});

} // namespace gl3lab::gl3
