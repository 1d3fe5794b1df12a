#pragma once

#include "gl3lab/modular.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace gl3lab::gl3 {

using i128 = __int128;

// tau(1..n) from Delta = q prod (1-q^k)^24 = q (sum (-1)^k (2k+1) q^{k(k+1)/2})^8, computed
// modulo two 61-bit primes and recombined; exact for n <= 10^6. Index 0 is unused.
std::vector<i128> ramanujan_tau(i64 n);
std::string to_string(i128 v);

// Stores lambda(1,n) for 1 <= n <= limit, grown on demand. Growth is serialised by a
// mutex; reads of already-computed entries need no lock.
class Coefficients {
public:
    virtual ~Coefficients() = default;
    const std::string& name() const { return name_; }
    cplx lambda1(i64 n) const; // lambda(1,n)
    cplx lambda(i64 m, i64 n) const;
    void ensure(i64 n) const;
    i64 limit() const { return static_cast<i64>(table_.size()) - 1; }

protected:
    explicit Coefficients(std::string name) : name_(std::move(name)) {}
    // fill lambda(1,n) for n in [1, n_max]; old entries may be recomputed
    virtual std::vector<cplx> compute(i64 n_max) const = 0;
    virtual cplx lambda_general(i64 m, i64 n) const;

private:
    std::string name_;
    mutable std::vector<cplx> table_;
    mutable std::mutex mu_;
};

struct GL3Form {
    std::string name;
    std::array<cplx, 3> alpha{};   // Langlands parameters, sum zero
    std::array<int, 3> parity{};   // delta_j in the Voronoi gamma factor
    std::array<double, 3> mu{};    // archimedean L-factor prod Gamma_R(s + mu_j)
    bool self_dual = false;
    bool cuspidal = false;
    std::shared_ptr<const Coefficients> coeff;

    cplx lambda1(i64 n) const { return coeff->lambda1(n); }
    cplx lambda(i64 m, i64 n) const { return coeff->lambda(m, n); }
    void ensure(i64 n) const { coeff->ensure(n); }
    // parameters of the contragredient: alpha -> (-alpha_3, -alpha_2, -alpha_1)
    GL3Form dual() const;
};

// lambda(1,n) = d_3(n); lambda(p^a, p^b) = (a+1)(b+1)(a+b+2)/2.
GL3Form d3_form();
// Symmetric square of Delta. alpha is configurable; parity and mu are those of the
// weight-12 lift and are checked by validate_parameters, not trusted.
GL3Form sym2_delta_form(std::array<double, 3> alpha = {11, 0, -11});
GL3Form builtin_form(const std::string& name);
cplx builtin_coefficients(const std::string& name, i64 m, i64 n);

// sum over d | (m,n) of mu(d) lambda(m/d,1) lambda(1,n/d) minus lambda(m,n)
cplx hecke_defect(const GL3Form& f, i64 m, i64 n);
// sum over n1^2 n2 <= x of |lambda(n2,n1)|^2, divided by x
double ramanujan_average(const GL3Form& f, i64 x);

// Coefficient cache: $GL3LAB_CACHE_DIR/<name>.coef, else no persistence.
// Layout: "GL3C" magic, u32 name length, name bytes, u64 count, then count pairs of
// little-endian f64 (re, im) for lambda(1,1..count).
std::string cache_path(const std::string& name);

// ---- gamma factors ----

// gamma_a(s) = (kappa_a/2) pi^{-3s-3/2} prod_j Gamma((1+s+alpha_j+a_j)/2) / Gamma((-s-alpha_j+a_j)/2)
// with a_j = (a + delta_j) mod 2 and kappa_a = i^{sum a_j - 3a} (1 for spherical forms).
// Denominator poles are exact zeros; a numerator pole not cancelled throws PoleEncountered.
cplx gamma_a(cplx s, const GL3Form& f, int a);
cplx gamma_pm(cplx s, const GL3Form& f, int sign); // gamma_0 -/+ i gamma_1
// real parts of the poles of gamma_0 and gamma_1 that survive cancellation, above floor
std::vector<double> gamma_poles(const GL3Form& f, double floor = -40);

// log prod Gamma_R(s + mu_j)
cplx log_l_factor(cplx s, const GL3Form& f);

struct ParameterCheck {
    bool ok = false;
    double max_dev = 0; // max | ratio / ratio(s_0) - 1 |
    cplx ratio;         // gamma_0(s) * 2 gamma(-s) / gamma_dual(1+s), constant when consistent
};
// gamma_0 must equal a constant multiple of the L-factor ratio; checked on a few points.
ParameterCheck validate_parameters(const GL3Form& f);

} // namespace gl3lab::gl3
