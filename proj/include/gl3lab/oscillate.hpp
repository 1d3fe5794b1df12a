#pragma once

#include "gl3lab/quad.hpp"

#include <functional>
#include <vector>

namespace gl3lab::oscillate {

struct InertWeight {
    std::function<double(double)> w;
    double X = 1;
    double Z = 1;     // support [lo, hi], nominally [Z, 2Z]
    double lo = 1, hi = 2;
};

// Phase with derivative oracle d(t, j) = phi^{(j)}(t), j = 0..3.
struct Phase {
    std::function<double(double, int)> d;
    double Y = 1, Z = 1, R = 1;
    double operator()(double t) const { return d(t, 0); }
};

InertWeight bump_weight(double lo, double hi);
// Y (t - t0)^2
Phase quadratic_phase(double Y, double t0);
// Y t
Phase linear_phase(double Y);
// Y [(t - t0)^2 + kappa (t - t0)^3]
Phase cubic_phase(double Y, double t0, double kappa);

// max over a grid of |w^{(j)}| (Z/X)^j, by central differences
double inert_constant(const InertWeight& w, int j, int grid = 400);
// max relative mismatch between the oracle's phi', phi'' and differences of phi
double phase_oracle_mismatch(const Phase& p, double a, double b, int grid = 200);

// Integral of w e^{i phi}; the oracle for every asymptotic claim.
quad::Result integrate_oscillatory(const InertWeight& w, const Phase& p, double tol);

// Roots of phi' in [a,b], refined to |phi'| < 1e-10 Y/Z.
std::vector<double> stationary_points(const Phase& p, double a, double b, int grid = 2000);

// sqrt(2 pi/|phi''|) e^{i phi(t0) + i pi/4 sgn phi''} w(t0)
cplx stationary_phase_main_term(const InertWeight& w, const Phase& p, double t0);

// Integral with plateau((t - t0)/U) inserted.
quad::Result truncate_near_stationary(const InertWeight& w, const Phase& p, double t0, double U, double tol);

// Closed-form phase of the cubic-root type and its listed partials.
struct AppendixPoint {
    double x = 1, y = 1, h1 = 1, h2 = 1;
    int eta = 1;
    double A1 = 0, A2 = 0;
};

enum class Quantity { f, f_x, f_xx, f_xy, f_xxy, g, g_x };

double appendix_derivative(const AppendixPoint& p, Quantity which);
// R = -eta (y/h1x)^{1/3} + eta (x/h2y)^{1/3}; f = R^{3/2}
double appendix_radicand(const AppendixPoint& p);
// f with the principal branch of R^{3/2}, defined off the domain too
cplx appendix_f_principal(double x, double y, double h1, double h2, int eta);

struct F3Params {
    double t = 1e4, n = 1, N = 1e3, Nj = 1e3, H = 10, eps = 0;
    double n0 = 1, h1 = 1, h2 = 1, u1 = 0, u2 = 0;
    int eta = 1;
};

// K_i = n0 q_i t/(2 pi h_i N) + N u_i/(H t^{1-eps})
double f3_K(const F3Params& p, double q, double h, double u);
double f3(const F3Params& p, double q1, double q2, double z);
double z0_stationary(const F3Params& p, double q1, double q2);
// |F3'(z0)| / (n Nj/(n0^2 q1 q2)), derivative by a 5-point stencil
double z0_residual(const F3Params& p, double q1, double q2);

struct GParams {
    double t = 1e4, n = 1, h1 = 1, h2 = 1, u1 = 0, u2 = 0, C = 10, H = 10, N = 1e3, eps = 0;
    int eta = 1;
};
double phase_G(double y, double z, const GParams& p);

} // namespace gl3lab::oscillate
