#include "gl3lab/quad.hpp"

#include "gl3lab/error.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>

namespace gl3lab::quad {

namespace {

struct Workspace {
    explicit Workspace(size_t n) : w(gsl_integration_workspace_alloc(n)) {}
    ~Workspace() { gsl_integration_workspace_free(w); }
    gsl_integration_workspace* w;
};

double call_real(double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); }

double run_qag(const std::function<double(double)>& f, double a, double b, double epsabs, double epsrel,
               size_t limit, double* err) {
    gsl_set_error_handler_off();
    Workspace ws(limit);
    gsl_function F;
    F.function = &call_real;
    F.params = const_cast<std::function<double(double)>*>(&f);
    double r = 0, e = 0;
    int st = gsl_integration_qag(&F, a, b, epsabs, epsrel, limit, GSL_INTEG_GAUSS61, ws.w, &r, &e);
    // roundoff detection on an already tiny error estimate is not a failure
    if (st == GSL_EROUND && e <= 1e3 * std::max(epsabs, epsrel * std::abs(r))) st = GSL_SUCCESS;
    if (st != GSL_SUCCESS)
        fail(Errc::NoConvergence, std::string("qag: ") + gsl_strerror(st) + ", error estimate " + std::to_string(e));
    if (err) *err = e;
    return r;
}

} // namespace

Result qag(const std::function<cplx(double)>& f, double a, double b, double epsabs, double epsrel, size_t limit) {
    double er = 0, ei = 0;
    const double re = run_qag([&](double x) { return f(x).real(); }, a, b, epsabs, epsrel, limit, &er);
    const double im = run_qag([&](double x) { return f(x).imag(); }, a, b, epsabs, epsrel, limit, &ei);
    return {{re, im}, std::hypot(er, ei)};
}

double qag_real(const std::function<double(double)>& f, double a, double b, double epsabs, double epsrel,
                double* err, size_t limit) {
    return run_qag(f, a, b, epsabs, epsrel, limit, err);
}

GaussLegendre::GaussLegendre(int n) {
    std::unique_ptr<gsl_integration_glfixed_table, void (*)(gsl_integration_glfixed_table*)> t(
        gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)), gsl_integration_glfixed_table_free);
    x_.resize(static_cast<size_t>(n));
    w_.resize(static_cast<size_t>(n));
    for (size_t i = 0; i < x_.size(); ++i) gsl_integration_glfixed_point(-1, 1, i, &x_[i], &w_[i], t.get());
}

void GaussLegendre::map(double a, double b, std::vector<double>& x, std::vector<double>& w) const {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    x.resize(x_.size());
    w.resize(w_.size());
    for (size_t i = 0; i < x_.size(); ++i) {
        x[i] = c + r * x_[i];
        w[i] = r * w_[i];
    }
}

namespace {

struct Simpson {
    const std::function<double(double)>& f;
    double min_width;
    int max_depth;
    SimpsonResult out;

    double eval(double x) {
        ++out.evals;
        return f(x);
    }

    void step(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = eval(lm), frm = eval(rm);
        const double left = (m - a) / 6 * (fa + 4 * flm + fm);
        const double right = (b - m) / 6 * (fm + 4 * frm + fb);
        const double diff = left + right - whole;
        if (std::abs(diff) <= 15 * tol) {
            out.value += left + right + diff / 15;
            out.error += std::abs(diff) / 15;
            return;
        }
        if (depth >= max_depth || (b - a) <= min_width) {
            out.converged = false;
            out.value += left + right + diff / 15;
            out.error += std::abs(diff) / 15;
            return;
        }
        step(a, m, fa, flm, fm, left, tol / 2, depth + 1);
        step(m, b, fm, frm, fb, right, tol / 2, depth + 1);
    }
};

} // namespace

SimpsonResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                               double min_width, int max_depth) {
    Simpson s{f, min_width, max_depth, {}};
    const double fa = s.eval(a), fb = s.eval(b), fm = s.eval(0.5 * (a + b));
    s.step(a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, 0);
    return s.out;
}

double bump(double v) {
    if (std::abs(v) >= 1) return 0;
    return std::exp(1 - 1 / (1 - v * v));
}

double bump_on(double t, double a, double b) { return bump((2 * t - a - b) / (b - a)); }

double smooth_step(double u) {
    if (u <= 0) return 0;
    if (u >= 1) return 1;
    const double p = std::exp(-1 / u), q = std::exp(-1 / (1 - u));
    return p / (p + q);
}

double plateau(double x) { return smooth_step(2 - std::abs(x)); }

} // namespace gl3lab::quad
