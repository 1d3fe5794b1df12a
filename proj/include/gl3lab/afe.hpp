#pragma once

#include "gl3lab/gl3.hpp"

#include <vector>

namespace gl3lab::gl3 {

// Even test function with G(0) = 1: exp(A u^2), optionally times cos(u/3).
struct AfeG {
    double A = 1;
    bool cosine = false;
    cplx operator()(cplx u) const;
};

struct AfeOptions {
    AfeG G;
    double c = 3;          // contour Re u = c
    double step = 0.05;    // trapezoid step in Im u
    double v_tol = 1e-12;  // drop n once |V| falls below this
    i64 max_terms = 20000000;
};

// V_s(y) = (1/2 pi i) int_(c) y^{-u} G(u) gamma(s+u)/gamma(s) du/u, with gamma the L-factor of f;
// defined here for y >= 1 (the sums only need y = n).
// The integrand is tabulated once per s; V and its log-derivative are then cheap per y.
class AfeV {
public:
    AfeV(cplx s, const GL3Form& f, const AfeOptions& opt = {});
    cplx operator()(double y) const;
    // y beyond which |V| stays under tol, found by stepping up in log y
    double cutoff(double tol) const;
    // quintic Hermite table of V in log y on [0, log y_max]; fast() reads it
    void tabulate(double y_max, double h = 0.01);
    cplx fast(double y) const;

private:
    cplx eval(double ly, cplx* d1, cplx* d2) const; // V and its first two log y derivatives

    double c_, step_;
    double v0_ = 0;
    std::vector<cplx> k_; // G(u) gamma(s+u) / (u gamma(s)) at u = c + i(v0 + k step)
    double th_ = 0;
    std::vector<cplx> tv_, td_, tdd_;
};

cplx afe_V(cplx s, double y, const GL3Form& f, const AfeG& G = {});

struct AfeResult {
    cplx value;
    cplx first, second;      // the two Dirichlet sums, second already multiplied by the ratio
    cplx ratio;              // gamma(1-s, dual) / gamma(s)
    i64 terms1 = 0, terms2 = 0;
    double neglected_pole = 0; // size of the dropped pole term (d3 only), relative
};

// L(s) = sum lambda(1,n) n^{-s} V_s(n) + ratio * sum conj-lambda(1,n) n^{s-1} V~_{1-s}(n).
// Root number 1 for both built-in forms. For d3 the pole of zeta^3 at 1 contributes a term
// of size |G(1-s)| e^{3 pi |t| / 4} relative; |t| >= 5 is required, the estimate is reported, and
// it must be below 1e-9 (a narrow G needs larger |t|).
AfeResult l_value_afe_full(cplx s, const GL3Form& f, const AfeOptions& opt = {});
cplx l_value_afe(cplx s, const GL3Form& f, const AfeOptions& opt = {});

} // namespace gl3lab::gl3
