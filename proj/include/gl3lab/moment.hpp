#pragma once

#include "gl3lab/afe.hpp"
#include "gl3lab/gl3.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gl3lab::moment {

using Coefficient = std::function<cplx(i64)>; // n -> lambda(1,n)

// Uhat(xi) = int U(v) e^{i xi v} dv for U = plateau (1 on [-1,1], support [-2,2]); real and
// even. Tabulated lazily with quintic Hermite in xi; taken as 0 beyond xi = 600.
double u_hat(double xi);

struct ShiftedSumParams {
    double M = 100, H = 10, N = 1000, t = 1000;
    int sign = 1;
    double cap = 1e8; // bound on the number of (n,h) terms
};

// W_pm(x,y) = V(x) phi(pm y) e(t/2pi (log(1 + Hy/Nx) - Hy/Nx)) Uhat(M log(1 + Hy/Nx)),
// V = phi = bump on [1,2]
cplx shifted_weight(const ShiftedSumParams& p, double x, double y);

// M sum_h sum_n lambda(1,n) conj(lambda(1,n+h)) W_pm(n/N, h/H) e(th / 2 pi n)
cplx shifted_sum(const ShiftedSumParams& p, const Coefficient& lambda);
cplx shifted_sum(const ShiftedSumParams& p, const gl3::GL3Form& f);
// sum over the support of |lambda(1,n)| |lambda(1,n+h)|, times M (the trivial majorant)
double shifted_sum_majorant(const ShiftedSumParams& p, const Coefficient& lambda);

enum class MomentMode { afe, direct_zeta3 };
MomentMode parse_mode(const std::string& s);

// |L(1/2 + iv)|^2. The afe path uses G(u) = exp(u^2/4) so the sums stay short at large v.
double l_squared(const gl3::GL3Form& f, double v, MomentMode mode);

struct MomentResult {
    double value = 0;
    double error = 0; // Simpson estimate
    int evals = 0;
};
// int_{t-M}^{t+M} |L(1/2+iv)|^2 dv by adaptive Simpson to rel_tol; SamplingTooCoarse when the
// error estimate is above 1% of the value.
MomentResult second_moment(const gl3::GL3Form& f, double t, double M, MomentMode mode, double rel_tol = 1e-4);

struct ShortMomentReport {
    double t = 0;
    double value = 0;    // |L(1/2+it)|^2
    double integral = 0; // int_{-log t}^{log t} |L(1/2+it+iv)|^2 e^{-v^2/2} dv
    double C = 0;        // value / (log t (1 + integral))
};
ShortMomentReport short_moment_inequality(const gl3::GL3Form& f, double t, MomentMode mode);

// ---- duality ----

struct Matrix {
    int rows = 0, cols = 0;
    std::vector<cplx> a; // row-major
    cplx& operator()(int i, int j) { return a[static_cast<size_t>(i * cols + j)]; }
    cplx operator()(int i, int j) const { return a[static_cast<size_t>(i * cols + j)]; }
};

struct DualityReport {
    double lhs = 0;        // sum_n |sum_m a_m Phi(m,n)|^2
    double norm_a = 0;     // sum |a_m|^2
    double sup = 0;        // top squared singular value by power iteration
    double ratio = 0;      // lhs / (norm_a * sup)
    double sampled_sup = 0; // max over random unit beta of sum_m |sum_n beta(n) Phi(m,n)|^2
    int iterations = 0;
    bool holds = false;
};

double top_singular_squared(const Matrix& phi, int* iterations = nullptr, std::uint64_t seed = 1);
DualityReport duality_check(const Matrix& phi, const std::vector<cplx>& a, int trials, std::uint64_t seed = 1);

// ---- exponent fit ----

struct ScanPoint {
    double t = 0, I = 0;
};
struct ExponentFit {
    double slope = 0, intercept = 0;
    double stderr_slope = 0;
    std::vector<double> residuals;
};
ExponentFit exponent_fit(const std::vector<ScanPoint>& pts);

} // namespace gl3lab::moment
