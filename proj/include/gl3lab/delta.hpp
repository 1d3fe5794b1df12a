#pragma once

#include "gl3lab/modular.hpp"

#include <memory>
#include <vector>

namespace gl3lab::delta {

enum class Profile { bump, bump_squared };

struct DeltaConfig {
    double Q = 20;
    Profile profile = Profile::bump;
    double tol = 1e-6;
    // Delta_q(u) is cut off smoothly beyond |u| ~ 1.5 U0; identity exact for |n| <= U0.
    // 0 selects 400 Q^2, which keeps the cutoff's spike in g(q, .) inside |x| < 0.1 for q <= Q.
    double U0 = 0;
};

// w(d) on [Q,2Q], normalized so that sum over d >= 1 of w(d) is 1; g(q,x) is the Fourier
// transform of the truncated Delta_q, assembled from tabulated transforms of the profile.
class Expansion {
public:
    explicit Expansion(const DeltaConfig& cfg);

    const DeltaConfig& config() const { return cfg_; }
    double U0() const { return U0_; }
    i64 qmax() const { return qmax_; }
    double kappa_max() const;
    double w(double d) const;
    double weight_sum() const; // sum of w(d), should be 1

    // sum over r of (w(qr) - w(|u|/qr))/(qr), untruncated
    double Delta(i64 q, double u) const;
    double g(i64 q, double x) const;

    double detect_direct(i64 n) const;
    // (1/Q) sum_q (1/q) sum*_a e(an/q) int g(q,x) e(nx/qQ) dx, x-integral by composite Gauss-Legendre
    double detect_fourier(i64 n) const;
    std::vector<double> detect_fourier(const std::vector<i64>& ns) const;
    // int g(q,x) e(nx/qQ) dx / (qQ) for every n in ns (should equal Delta_q(n))
    std::vector<double> fourier_integrals(i64 q, const std::vector<i64>& ns) const;

private:
    double c_q(i64 q) const;
    double what(double kappa) const; // transform of the unit profile at kappa, interpolated

    DeltaConfig cfg_;
    double U0_ = 0, norm_ = 1, sigma_ = 0.05;
    i64 qmax_ = 0;
    std::shared_ptr<const struct ProfileTable> table_;
};

double delta_detect(i64 n, const DeltaConfig& cfg, bool fourier = true);
double g_weight(i64 q, double x, const DeltaConfig& cfg);

struct GAuditRow {
    i64 q;
    double x, g, dg, envelope, ratio, second;
};

struct GAudit {
    std::vector<GAuditRow> rows;
    double max_ratio = 0;   // max |dg/dx| / (|x|^{-1} min(|x|^{-1}, Q/q) log Q)
    double max_second = 0;  // max centred second difference
    double max_abs_g = 0;
};

GAudit g_property_audit(const Expansion& ex, const std::vector<i64>& qs, const std::vector<double>& xs);

} // namespace gl3lab::delta
