#include "gl3lab/special.hpp"

#include "gl3lab/error.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_zeta.h>

#include <array>
#include <cmath>

namespace gl3lab::special {

bool near_nonpositive_integer(cplx z, double tol) {
    if (std::abs(z.imag()) > tol || z.real() > tol) return false;
    return std::abs(z.real() - std::round(z.real())) <= tol;
}

cplx lgamma(cplx z) {
    if (near_nonpositive_integer(z, 1e-14)) fail(Errc::PoleEncountered, "Gamma pole");
    gsl_set_error_handler_off();
    gsl_sf_result lnr, arg;
    const int st = gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
    if (st != GSL_SUCCESS) fail(Errc::PoleEncountered, std::string("lngamma_complex: ") + gsl_strerror(st));
    return {lnr.val, arg.val};
}

cplx log_gamma_r(cplx s) { return -0.5 * s * std::log(M_PI) + lgamma(0.5 * s); }

namespace {

constexpr int kMaxTerms = 40;

// B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}
const std::array<double, kMaxTerms + 1>& bernoulli_ratios() {
    static const std::array<double, kMaxTerms + 1> b = [] {
        std::array<double, kMaxTerms + 1> r{};
        for (int k = 1; k <= kMaxTerms; ++k)
            r[static_cast<size_t>(k)] = (k % 2 ? 2.0 : -2.0) * gsl_sf_zeta_int(2 * k) / std::pow(kTwoPi, 2 * k);
        return r;
    }();
    return b;
}

} // namespace

cplx zeta_em(cplx s) {
    if (std::abs(s - 1.0) < 1e-15) fail(Errc::PoleEncountered, "zeta pole at s = 1");
    const long N = std::max(20L, static_cast<long>(std::ceil(std::abs(s.imag()) / M_PI)) + 10);
    KahanSum acc;
    for (long n = N - 1; n >= 1; --n) acc.add(std::exp(-s * std::log(static_cast<double>(n))));
    const double lN = std::log(static_cast<double>(N));
    const cplx Ns = std::exp(-s * lN); // N^{-s}
    acc.add(Ns * static_cast<double>(N) / (s - 1.0));
    acc.add(0.5 * Ns);
    const auto& B = bernoulli_ratios();
    // T_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k}
    cplx poch = s;
    cplx pw = Ns / static_cast<double>(N);
    const double inv2 = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
    double prev = INFINITY;
    for (int k = 1; k <= kMaxTerms; ++k) {
        const cplx term = B[static_cast<size_t>(k)] * poch * pw;
        const double mag = std::abs(term);
        if (mag > prev) break; // asymptotic series started diverging
        acc.add(term);
        prev = mag;
        if (mag < 1e-18 * std::abs(acc.value())) break;
        poch *= (s + (2.0 * k - 1)) * (s + 2.0 * k);
        pw *= inv2;
    }
    return acc.value();
}

} // namespace gl3lab::special
