#include "gl3lab/moment.hpp"

#include "gl3lab/error.hpp"
#include "gl3lab/quad.hpp"
#include "gl3lab/special.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <mutex>
#include <random>
#include <thread>

namespace gl3lab::moment {

namespace {

// Uhat on [0, xi_max], quintic Hermite with value, first and second derivative per node.
// U = 1 on [0,1], so that piece is done in closed form; [1,2] uses a fixed Gauss-Legendre grid.
class UHatTable {
public:
    double operator()(double xi) {
        xi = std::abs(xi);
        if (xi > kXiMax) return 0;
        std::lock_guard<std::mutex> lock(mu_);
        grow(xi);
        const double u = xi / kStep;
        size_t k = static_cast<size_t>(u);
        if (k + 1 >= v_.size()) k = v_.size() - 2;
        const double s = u - static_cast<double>(k), h = kStep;
        const double p0 = v_[k], p1 = v_[k + 1];
        const double d0 = d_[k] * h, d1 = d_[k + 1] * h;
        const double e0 = dd_[k] * h * h, e1 = dd_[k + 1] * h * h;
        const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
        const double h0 = 1 - 10 * s3 + 15 * s4 - 6 * s5, h1 = s - 6 * s3 + 8 * s4 - 3 * s5;
        const double h2 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
        const double g0 = 10 * s3 - 15 * s4 + 6 * s5, g1 = -4 * s3 + 7 * s4 - 3 * s5;
        const double g2 = 0.5 * (s3 - 2 * s4 + s5);
        return p0 * h0 + d0 * h1 + e0 * h2 + p1 * g0 + d1 * g1 + e1 * g2;
    }

private:
    // |Uhat| is at roundoff level (< 1e-14) from here on
    static constexpr double kXiMax = 600;
    static constexpr double kStep = 0.05;

    void grow(double xi) {
        if (x_.empty()) {
            quad::GaussLegendre gl(20);
            std::vector<double> px, pw;
            const int panels = 200;
            for (int p = 0; p < panels; ++p) {
                gl.map(1 + p / double(panels), 1 + (p + 1) / double(panels), px, pw);
                for (size_t i = 0; i < px.size(); ++i) {
                    x_.push_back(px[i]);
                    w_.push_back(pw[i] * quad::plateau(px[i]));
                }
            }
        }
        while (v_.size() < 2 || static_cast<double>(v_.size() - 2) * kStep < xi) {
            const double z = static_cast<double>(v_.size()) * kStep;
            // closed forms on [0,1]: int cos, -int v sin, -int v^2 cos
            double c0, c1, c2;
            if (z < 1e-3) {
                c0 = 1 - z * z / 6;
                c1 = -z / 3 + z * z * z / 30;
                c2 = -1.0 / 3 + z * z / 10;
            } else {
                const double sz = std::sin(z), cz = std::cos(z);
                c0 = sz / z;
                c1 = -(sz - z * cz) / (z * z);
                c2 = -((z * z - 2) * sz + 2 * z * cz) / (z * z * z);
            }
            for (size_t i = 0; i < x_.size(); ++i) {
                const double v = x_[i], c = std::cos(z * v), s = std::sin(z * v);
                c0 += w_[i] * c;
                c1 -= w_[i] * v * s;
                c2 -= w_[i] * v * v * c;
            }
            v_.push_back(2 * c0);
            d_.push_back(2 * c1);
            dd_.push_back(2 * c2);
        }
    }

    std::mutex mu_;
    std::vector<double> x_, w_;
    std::vector<double> v_, d_, dd_;
};

UHatTable& uhat_table() {
    static UHatTable t;
    return t;
}

void check_shifted(const ShiftedSumParams& p) {
    if (!(p.N >= 1) || !(p.M > 0) || !(p.H >= 0) || (p.sign != 1 && p.sign != -1))
        fail(Errc::PreconditionViolated, "shifted_sum needs N >= 1, M > 0, H >= 0, sign = +-1");
    if (4 * p.H >= p.N) fail(Errc::PreconditionViolated, "shifted_sum needs H < N/4 so that n + h stays positive");
    if ((p.N + 1) * (p.H + 1) > p.cap) fail(Errc::WorkCapExceeded, "shifted_sum: N*H above the work cap");
}

template <class F>
void for_each_term(const ShiftedSumParams& p, F&& f) {
    const i64 n0 = static_cast<i64>(std::ceil(p.N)), n1 = static_cast<i64>(std::floor(2 * p.N));
    const i64 h0 = static_cast<i64>(std::ceil(p.H)), h1 = static_cast<i64>(std::floor(2 * p.H));
    for (i64 ha = std::max<i64>(h0, 1); ha <= h1; ++ha) {
        const i64 h = p.sign * ha;
        for (i64 n = n0; n <= n1; ++n) f(n, h);
    }
}

Coefficient form_coefficient(const gl3::GL3Form& f, const ShiftedSumParams& p) {
    f.ensure(static_cast<i64>(std::floor(2 * p.N + 2 * p.H)) + 1);
    return [&f](i64 n) { return f.lambda1(n); };
}

// panels evaluated independently; partial sums are added in panel order
template <class R, class F>
std::vector<R> parallel_map(int count, F&& f) {
    std::vector<R> out(static_cast<size_t>(count));
    const int workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers == 1 || count < 2) {
        for (int i = 0; i < count; ++i) out[static_cast<size_t>(i)] = f(i);
        return out;
    }
    for (int base = 0; base < count; base += workers) {
        std::vector<std::future<R>> fs;
        for (int i = base; i < std::min(count, base + workers); ++i) fs.push_back(std::async(std::launch::async, f, i));
        for (size_t j = 0; j < fs.size(); ++j) out[static_cast<size_t>(base) + j] = fs[j].get();
    }
    return out;
}

// Adaptive Simpson of f over [a,b] on panels of width <= 1: the rough size from a
// trapezoid pass sets the absolute tolerance.
MomentResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    const int panels = std::max(1, static_cast<int>(std::ceil(b - a)));
    const double w = (b - a) / panels;
    const auto coarse = parallel_map<double>(panels + 1, [&](int i) { return f(a + i * w); });
    double rough = 0;
    for (int i = 0; i <= panels; ++i) rough += (i == 0 || i == panels ? 0.5 : 1.0) * coarse[static_cast<size_t>(i)];
    rough *= w;
    const double tol = rel_tol * std::max(std::abs(rough), 1e-300) / panels;
    const auto parts = parallel_map<quad::SimpsonResult>(panels, [&](int i) {
        return quad::adaptive_simpson(f, a + i * w, a + (i + 1) * w, tol, 1e-4, 30);
    });
    MomentResult r;
    r.evals = panels + 1;
    bool converged = true;
    for (const auto& s : parts) {
        r.value += s.value;
        r.error += s.error;
        r.evals += s.evals;
        converged = converged && s.converged;
    }
    if (!converged || r.error > 0.01 * std::abs(r.value))
        fail(Errc::SamplingTooCoarse, "Simpson error estimate " + std::to_string(r.error) + " against value " +
                                          std::to_string(r.value));
    return r;
}

} // namespace

double u_hat(double xi) { return uhat_table()(xi); }

cplx shifted_weight(const ShiftedSumParams& p, double x, double y) {
    const double vx = quad::bump_on(x, 1, 2), py = quad::bump_on(p.sign * y, 1, 2);
    if (vx == 0 || py == 0) return 0;
    const double r = p.H * y / (p.N * x);
    const double l = std::log1p(r);
    return vx * py * std::polar(1.0, p.t * (l - r)) * u_hat(p.M * l);
}

cplx shifted_sum(const ShiftedSumParams& p, const Coefficient& lambda) {
    check_shifted(p);
    cplx s = 0;
    for_each_term(p, [&](i64 n, i64 h) {
        const cplx w = shifted_weight(p, n / p.N, h / p.H);
        if (w == cplx(0)) return;
        s += lambda(n) * std::conj(lambda(n + h)) * w * std::polar(1.0, p.t * static_cast<double>(h) / n);
    });
    return p.M * s;
}

cplx shifted_sum(const ShiftedSumParams& p, const gl3::GL3Form& f) {
    check_shifted(p);
    return shifted_sum(p, form_coefficient(f, p));
}

double shifted_sum_majorant(const ShiftedSumParams& p, const Coefficient& lambda) {
    check_shifted(p);
    double s = 0;
    for_each_term(p, [&](i64 n, i64 h) { s += std::abs(lambda(n)) * std::abs(lambda(n + h)) * std::abs(shifted_weight(p, n / p.N, h / p.H)); });
    return p.M * s;
}

MomentMode parse_mode(const std::string& s) {
    if (s == "afe") return MomentMode::afe;
    if (s == "direct_zeta3") return MomentMode::direct_zeta3;
    fail(Errc::ConfigError, "unknown moment mode '" + s + "'");
}

double l_squared(const gl3::GL3Form& f, double v, MomentMode mode) {
    const cplx s(0.5, v);
    if (mode == MomentMode::direct_zeta3) {
        if (f.name != "d3") fail(Errc::PreconditionViolated, "direct_zeta3 mode is only for the d3 form");
        return std::pow(std::norm(special::zeta_em(s)), 3);
    }
    gl3::AfeOptions opt;
    opt.G.A = 0.25;
    return std::norm(gl3::l_value_afe(s, f, opt));
}

MomentResult second_moment(const gl3::GL3Form& f, double t, double M, MomentMode mode, double rel_tol) {
    if (!(M > 0) || !(t > M)) fail(Errc::PreconditionViolated, "second_moment needs 0 < M < t");
    if (mode == MomentMode::afe) f.ensure(1024);
    return integrate([&](double v) { return l_squared(f, v, mode); }, t - M, t + M, rel_tol);
}

ShortMomentReport short_moment_inequality(const gl3::GL3Form& f, double t, MomentMode mode) {
    if (!(t >= 10)) fail(Errc::PreconditionViolated, "short_moment_inequality needs t >= 10");
    ShortMomentReport r;
    r.t = t;
    const double L = std::log(t);
    r.value = l_squared(f, t, mode);
    r.integral = integrate([&](double v) { return l_squared(f, t + v, mode) * std::exp(-0.5 * v * v); }, -L, L, 1e-6).value;
    r.C = r.value / (L * (1 + r.integral));
    return r;
}

// ---- duality ----

namespace {

void apply(const Matrix& phi, const std::vector<cplx>& x, std::vector<cplx>& y) { // y = phi x
    y.assign(static_cast<size_t>(phi.rows), 0);
    for (int i = 0; i < phi.rows; ++i) {
        cplx s = 0;
        for (int j = 0; j < phi.cols; ++j) s += phi(i, j) * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = s;
    }
}

void apply_adjoint(const Matrix& phi, const std::vector<cplx>& y, std::vector<cplx>& x) { // x = phi^* y
    x.assign(static_cast<size_t>(phi.cols), 0);
    for (int i = 0; i < phi.rows; ++i)
        for (int j = 0; j < phi.cols; ++j) x[static_cast<size_t>(j)] += std::conj(phi(i, j)) * y[static_cast<size_t>(i)];
}

double norm2(const std::vector<cplx>& v) {
    double s = 0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

std::vector<cplx> random_unit(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(static_cast<size_t>(n));
    for (auto& z : v) z = {g(rng), g(rng)};
    const double s = std::sqrt(norm2(v));
    for (auto& z : v) z /= s;
    return v;
}

} // namespace

double top_singular_squared(const Matrix& phi, int* iterations, std::uint64_t seed) {
    if (phi.rows < 1 || phi.cols < 1 || phi.rows > 500 || phi.cols > 500)
        fail(Errc::PreconditionViolated, "duality matrices must be between 1x1 and 500x500");
    std::mt19937_64 rng(seed);
    std::vector<cplx> x = random_unit(phi.cols, rng), y, z;
    double prev = -1;
    int stable = 0, restarts = 0;
    const int min_iter = 50, max_iter = 20000;
    for (int k = 1; k <= max_iter; ++k) {
        apply(phi, x, y);
        const double lam = norm2(y); // Rayleigh quotient of phi^* phi at the unit vector x
        apply_adjoint(phi, y, z);
        const double nz = std::sqrt(norm2(z));
        if (!(nz > 0)) { // x fell into the kernel: restart
            if (++restarts > 10) break;
            x = random_unit(phi.cols, rng);
            prev = -1;
            continue;
        }
        for (auto& c : z) c /= nz;
        x.swap(z);
        stable = (prev >= 0 && std::abs(lam - prev) <= 1e-14 * lam) ? stable + 1 : 0;
        prev = lam;
        if (k >= min_iter && stable >= 5) {
            if (iterations) *iterations = k;
            return lam;
        }
    }
    if (norm2(phi.a) == 0) {
        if (iterations) *iterations = 0;
        return 0;
    }
    fail(Errc::PowerIterationNoConvergence, "top singular value did not settle");
}

DualityReport duality_check(const Matrix& phi, const std::vector<cplx>& a, int trials, std::uint64_t seed) {
    if (static_cast<int>(a.size()) != phi.rows) fail(Errc::PreconditionViolated, "a must have one entry per row of phi");
    DualityReport r;
    r.sup = top_singular_squared(phi, &r.iterations, seed);
    // sum_n |sum_m a_m phi(m,n)|^2
    for (int j = 0; j < phi.cols; ++j) {
        cplx s = 0;
        for (int i = 0; i < phi.rows; ++i) s += a[static_cast<size_t>(i)] * phi(i, j);
        r.lhs += std::norm(s);
    }
    r.norm_a = norm2(a);
    const double rhs = r.norm_a * r.sup;
    r.ratio = rhs > 0 ? r.lhs / rhs : (r.lhs == 0 ? 1 : INFINITY);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<cplx> y;
    for (int k = 0; k < trials; ++k) {
        apply(phi, random_unit(phi.cols, rng), y);
        r.sampled_sup = std::max(r.sampled_sup, norm2(y));
    }
    const double slack = 1 + 1e-10;
    r.holds = r.lhs <= rhs * slack + 1e-300 && r.sampled_sup <= r.sup * slack + 1e-300;
    return r;
}

// ---- exponent fit ----

ExponentFit exponent_fit(const std::vector<ScanPoint>& pts) {
    if (pts.size() < 3) fail(Errc::InsufficientPoints, "exponent_fit needs at least 3 points");
    double lo = INFINITY, hi = 0;
    for (const auto& p : pts) {
        if (!(p.t > 0) || !(p.I > 0)) fail(Errc::PreconditionViolated, "exponent_fit needs positive t and I");
        lo = std::min(lo, p.t);
        hi = std::max(hi, p.t);
    }
    if (std::log10(hi / lo) < 1 - 1e-12) fail(Errc::InsufficientPoints, "scan points must span a decade");
    const double n = static_cast<double>(pts.size());
    double mx = 0, my = 0;
    for (const auto& p : pts) {
        mx += std::log(p.t);
        my += std::log(p.I);
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (const auto& p : pts) {
        const double dx = std::log(p.t) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p.I) - my);
    }
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0;
    for (const auto& p : pts) {
        const double e = std::log(p.I) - (fit.intercept + fit.slope * std::log(p.t));
        fit.residuals.push_back(e);
        ssr += e * e;
    }
    fit.stderr_slope = std::sqrt(ssr / (n - 2) / sxx);
    return fit;
}

} // namespace gl3lab::moment
