#pragma once

#include "gl3lab/modular.hpp"

namespace gl3lab::special {

// log Gamma(z) (GSL); the imaginary part is reduced to (-pi, pi], so only exp() of
// sums of these is meaningful. Throws PoleEncountered at non-positive integers.
cplx lgamma(cplx z);
bool near_nonpositive_integer(cplx z, double tol);

// Gamma_R(s) = pi^{-s/2} Gamma(s/2), as a logarithm
cplx log_gamma_r(cplx s);

// Riemann zeta by Euler-Maclaurin; |error| <= 1e-10 for 0 < Re s <= 2, |Im s| <= 1e5.
cplx zeta_em(cplx s);

} // namespace gl3lab::special
