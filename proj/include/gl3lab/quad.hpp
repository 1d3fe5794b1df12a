#pragma once

#include "gl3lab/modular.hpp"

#include <functional>
#include <vector>

namespace gl3lab::quad {

struct Result {
    cplx value;
    double error = 0;
};

// Adaptive 61-point Gauss-Kronrod (GSL QAG) on [a,b]; real and imaginary parts are
// integrated separately. Throws NoConvergence when the subdivision limit is hit.
Result qag(const std::function<cplx(double)>& f, double a, double b, double epsabs, double epsrel = 0,
           size_t limit = 10000);
double qag_real(const std::function<double(double)>& f, double a, double b, double epsabs, double epsrel = 0,
                double* err = nullptr, size_t limit = 10000);

class GaussLegendre {
public:
    explicit GaussLegendre(int n);
    int size() const { return static_cast<int>(x_.size()); }
    // nodes/weights mapped to [a,b]
    void map(double a, double b, std::vector<double>& x, std::vector<double>& w) const;
    template <class F>
    auto integrate(F&& f, double a, double b) const {
        const double c = 0.5 * (a + b), r = 0.5 * (b - a);
        decltype(f(c)) s{};
        for (size_t i = 0; i < x_.size(); ++i) s += w_[i] * f(c + r * x_[i]);
        return s * r;
    }

private:
    std::vector<double> x_, w_; // on [-1,1]
};

struct SimpsonResult {
    double value = 0;
    double error = 0; // sum of |S2 - S1|/15 over accepted panels
    int evals = 0;
    bool converged = true;
};

// Adaptive Simpson; panels narrower than min_width are accepted as they stand and
// flag converged = false.
SimpsonResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                               double min_width = 0, int max_depth = 40);

// exp(1 - 1/(1-v^2)) on (-1,1): peak 1 at 0, C-infinity, zero outside.
double bump(double v);
// bump rescaled to support [a,b]
double bump_on(double t, double a, double b);
// C-infinity step, 0 for u <= 0 and 1 for u >= 1
double smooth_step(double u);
// 1 on [-1,1], supported on [-2,2]
double plateau(double x);

} // namespace gl3lab::quad
