#include "gl3lab/oscillate.hpp"

#include "gl3lab/error.hpp"

#include <cmath>

namespace gl3lab::oscillate {

InertWeight bump_weight(double lo, double hi) {
    InertWeight w;
    w.w = [lo, hi](double t) { return quad::bump_on(t, lo, hi); };
    w.X = 1;
    w.Z = lo;
    w.lo = lo;
    w.hi = hi;
    return w;
}

Phase quadratic_phase(double Y, double t0) {
    Phase p;
    p.d = [Y, t0](double t, int j) {
        const double s = t - t0;
        switch (j) {
        case 0: return Y * s * s;
        case 1: return 2 * Y * s;
        case 2: return 2 * Y;
        default: return 0.0;
        }
    };
    p.Y = p.R = Y;
    return p;
}

Phase linear_phase(double Y) {
    Phase p;
    p.d = [Y](double t, int j) { return j == 0 ? Y * t : (j == 1 ? Y : 0.0); };
    p.Y = p.R = Y;
    return p;
}

Phase cubic_phase(double Y, double t0, double kappa) {
    Phase p;
    p.d = [Y, t0, kappa](double t, int j) {
        const double s = t - t0;
        switch (j) {
        case 0: return Y * (s * s + kappa * s * s * s);
        case 1: return Y * (2 * s + 3 * kappa * s * s);
        case 2: return Y * (2 + 6 * kappa * s);
        case 3: return 6 * Y * kappa;
        default: return 0.0;
        }
    };
    p.Y = p.R = Y;
    return p;
}

double inert_constant(const InertWeight& w, int j, int grid) {
    const double h = (w.hi - w.lo) * 1e-3;
    double worst = 0;
    for (int i = 1; i < grid; ++i) {
        const double t = w.lo + (w.hi - w.lo) * i / grid;
        double d = 0;
        switch (j) {
        case 0: d = w.w(t); break;
        case 1: d = (w.w(t + h) - w.w(t - h)) / (2 * h); break;
        case 2: d = (w.w(t + h) - 2 * w.w(t) + w.w(t - h)) / (h * h); break;
        default:
            d = (w.w(t + 2 * h) - 2 * w.w(t + h) + 2 * w.w(t - h) - w.w(t - 2 * h)) / (2 * h * h * h);
            break;
        }
        worst = std::max(worst, std::abs(d) * std::pow(w.Z / w.X, j));
    }
    return worst;
}

double phase_oracle_mismatch(const Phase& p, double a, double b, int grid) {
    const double h = 1e-5 * p.Z;
    double worst = 0;
    for (int i = 0; i <= grid; ++i) {
        const double t = a + (b - a) * i / grid;
        for (int j = 1; j <= 2; ++j) {
            const double fd = (p.d(t + h, j - 1) - p.d(t - h, j - 1)) / (2 * h);
            worst = std::max(worst, std::abs(fd - p.d(t, j)) / (p.Y / std::pow(p.Z, j)));
        }
    }
    return worst;
}

quad::Result integrate_oscillatory(const InertWeight& w, const Phase& p, double tol) {
    return quad::qag([&](double t) { return w.w(t) * std::polar(1.0, p(t)); }, w.lo, w.hi, tol);
}

std::vector<double> stationary_points(const Phase& p, double a, double b, int grid) {
    std::vector<double> roots;
    const double target = 1e-10 * p.Y / p.Z;
    auto d1 = [&](double t) { return p.d(t, 1); };
    double tl = a, fl = d1(a);
    for (int i = 1; i <= grid; ++i) {
        const double tr = a + (b - a) * i / grid;
        const double fr = d1(tr);
        if (fl == 0) {
            if (roots.empty() || roots.back() != tl) roots.push_back(tl);
        } else if (fl * fr < 0) {
            double lo = tl, hi = tr, flo = fl;
            double m = 0.5 * (lo + hi);
            for (int it = 0; it < 200; ++it) {
                m = 0.5 * (lo + hi);
                const double fm = d1(m);
                if (std::abs(fm) < target || hi - lo < 1e-15 * std::abs(m)) break;
                if ((fm < 0) == (flo < 0)) {
                    lo = m;
                    flo = fm;
                } else {
                    hi = m;
                }
            }
            // one Newton polish when the second derivative is usable
            const double f2 = p.d(m, 2);
            if (f2 != 0) {
                const double n = m - d1(m) / f2;
                if (n > tl && n < tr && std::abs(d1(n)) <= std::abs(d1(m))) m = n;
            }
            roots.push_back(m);
        }
        tl = tr;
        fl = fr;
    }
    if (fl == 0 && (roots.empty() || roots.back() != tl)) roots.push_back(tl);
    return roots;
}

cplx stationary_phase_main_term(const InertWeight& w, const Phase& p, double t0) {
    const double f2 = p.d(t0, 2);
    if (std::abs(f2) < 1e-8 * p.Y / (p.Z * p.Z)) fail(Errc::DegenerateStationaryPoint, "phi'' too small at t0");
    const double arg = p(t0) + (f2 > 0 ? 1 : -1) * M_PI / 4;
    return std::sqrt(kTwoPi / std::abs(f2)) * std::polar(1.0, arg) * w.w(t0);
}

quad::Result truncate_near_stationary(const InertWeight& w, const Phase& p, double t0, double U, double tol) {
    const double f2 = p.d(t0, 2);
    if (std::abs(p.d(t0, 1)) > 1e-6 * p.Y / p.Z || f2 == 0)
        fail(Errc::PreconditionViolated, "t0 is not a stationary point of phi");
    if (U < 3 / std::sqrt(std::abs(f2))) fail(Errc::PreconditionViolated, "U below 3 |phi''(t0)|^{-1/2}");
    if (t0 - U <= w.lo && t0 + U >= w.hi) return integrate_oscillatory(w, p, tol);
    const double a = std::max(w.lo, t0 - 2 * U), b = std::min(w.hi, t0 + 2 * U);
    if (a >= b) return {};
    return quad::qag([&](double t) { return w.w(t) * quad::plateau((t - t0) / U) * std::polar(1.0, p(t)); }, a, b,
                     tol);
}

// ---- closed-form phase derivatives ----

namespace {

struct Roots {
    double a, b, R; // a = (y/h1x)^{1/3}, b = (x/h2y)^{1/3}, R = eta (b - a)
};

Roots roots_f(const AppendixPoint& p) {
    if (!(p.x > 0 && p.y > 0 && p.h1 > 0 && p.h2 > 0)) fail(Errc::DomainViolation, "x, y, h1, h2 must be positive");
    Roots r;
    r.a = std::cbrt(p.y / (p.h1 * p.x));
    r.b = std::cbrt(p.x / (p.h2 * p.y));
    r.R = p.eta * (r.b - r.a);
    return r;
}

} // namespace

double appendix_radicand(const AppendixPoint& p) { return roots_f(p).R; }

double appendix_derivative(const AppendixPoint& p, Quantity which) {
    const double x = p.x, y = p.y;
    const int eta = p.eta;
    if (which == Quantity::g || which == Quantity::g_x) {
        if (!(x > 0 && y > 0 && p.h1 > 0 && p.h2 > 0)) fail(Errc::DomainViolation, "x, y, h1, h2 must be positive");
        const double tA = p.A1 * y / (x * x);
        const double ag = y / (p.h1 * x) + tA, bg = x / (p.h2 * y) + p.A2 * x / (y * y);
        if (ag <= 0 || bg <= 0) fail(Errc::DomainViolation, "cube-root argument not positive");
        const double ca = std::cbrt(ag), cb = std::cbrt(bg);
        const double R = eta * (cb - ca);
        if (R < 0) fail(Errc::DomainViolation, "radicand negative");
        if (which == Quantity::g) return std::pow(R, 1.5);
        return eta / (2 * x) * std::sqrt(R) * (ca + cb + tA / (ca * ca));
    }
    const Roots r = roots_f(p);
    const double a = r.a, b = r.b, R = r.R;
    if (R < 0 || (R == 0 && which != Quantity::f && which != Quantity::f_x))
        fail(Errc::DomainViolation, "radicand negative");
    switch (which) {
    case Quantity::f: return std::pow(R, 1.5);
    case Quantity::f_x: return eta / (2 * x) * std::sqrt(R) * (a + b);
    case Quantity::f_xx: return (9 * a * a - 2 * a * b - 3 * b * b) / (12 * x * x * std::sqrt(R));
    case Quantity::f_xy: return -(3 * a * a + 3 * b * b - 2 * a * b) / (12 * x * y * std::sqrt(R));
    case Quantity::f_xxy:
        return eta * (9 * b * b * b + 43 * a * a * b - 17 * a * b * b - 27 * a * a * a) /
               (72 * x * x * y * R * std::sqrt(R));
    default: break;
    }
    return 0;
}

cplx appendix_f_principal(double x, double y, double h1, double h2, int eta) {
    const double R = eta * (std::cbrt(x / (h2 * y)) - std::cbrt(y / (h1 * x)));
    return std::exp(1.5 * std::log(cplx(R, 0.0)));
}

// ---- the F3 phase and its stationary point ----

double f3_K(const F3Params& p, double q, double h, double u) {
    return p.n0 * q * p.t / (kTwoPi * h * p.N) + p.N * u / (p.H * std::pow(p.t, 1 - p.eps));
}

double f3(const F3Params& p, double q1, double q2, double z) {
    const double K1 = f3_K(p, q1, p.h1, p.u1), K2 = f3_K(p, q2, p.h2, p.u2);
    if (K1 <= 0 || K2 <= 0 || z <= 0) fail(Errc::DomainViolation, "F3 needs K1, K2, z > 0");
    const double NN = p.Nj * p.N * z;
    const double c1 = std::cbrt(NN * K1) / (p.n0 * q1), c2 = std::cbrt(NN * K2) / (p.n0 * q2);
    return 3 * p.eta * (c2 - c1) - p.n * p.Nj * z / (p.n0 * p.n0 * q1 * q2);
}

double z0_stationary(const F3Params& p, double q1, double q2) {
    const double K1 = f3_K(p, q1, p.h1, p.u1), K2 = f3_K(p, q2, p.h2, p.u2);
    if (K1 <= 0 || K2 <= 0 || p.n <= 0) fail(Errc::DomainViolation, "z0 needs K1, K2, n > 0");
    const double E = p.eta * p.n0 * (q1 * std::cbrt(K2) - q2 * std::cbrt(K1));
    if (E <= 0) fail(Errc::DomainViolation, "no stationary point: bracket not positive");
    return std::sqrt(p.N) / (std::pow(p.n, 1.5) * p.Nj) * std::pow(E, 1.5);
}

double z0_residual(const F3Params& p, double q1, double q2) {
    const double z = z0_stationary(p, q1, q2), h = 1e-3 * z;
    auto F = [&](double s) { return f3(p, q1, q2, s); };
    const double d = (-F(z + 2 * h) + 8 * F(z + h) - 8 * F(z - h) + F(z - 2 * h)) / (12 * h);
    return std::abs(d) / (p.n * p.Nj / (p.n0 * p.n0 * q1 * q2));
}

double phase_G(double y, double z, const GParams& p) {
    if (!(y > 0 && z > 0 && p.t > 0 && p.n > 0)) fail(Errc::DomainViolation, "G needs y, z, t, n > 0");
    const double A = kTwoPi * p.N * p.N / (p.C * p.H * std::pow(p.t, 2 - p.eps));
    const double a = z / (p.h1 * y) + A * p.u1 * z / (y * y);
    const double b = y / (p.h2 * z) + A * p.u2 * y / (z * z);
    if (a <= 0 || b <= 0) fail(Errc::DomainViolation, "cube-root argument not positive");
    const double R = p.eta * (std::cbrt(b) - std::cbrt(a));
    if (R < 0) fail(Errc::DomainViolation, "bracket negative");
    return std::sqrt(2 * p.t / (M_PI * p.n)) * std::pow(R, 1.5);
}

} // namespace gl3lab::oscillate
