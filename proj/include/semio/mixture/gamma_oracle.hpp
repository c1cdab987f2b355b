#pragma once

#include <cmath>

#include "semio/detail/quadrature.hpp"
#include "semio/error.hpp"

namespace semio::mixture {

/// Numerically evaluates  integral_0^inf  phi(lambda) lambda e^(-lambda z) dlambda
/// with phi = Gamma(shape nu, rate b), i.e. the exponential law mixed over a
/// Gamma-distributed rate. Closed-form elimination of the integral yields the
/// Lomax density, so this routine exists purely as an independent check of
/// that reduction; it never takes the closed-form shortcut.
inline double gamma_mixed_exponential_pdf(double nu, double b, double z) {
    if (!(nu > 0.0) || !(b > 0.0) || z < 0.0)
        throw data_error("gamma_mixed_exponential_pdf: need nu > 0, b > 0, z >= 0");

    const double log_norm = nu * std::log(b) - std::lgamma(nu);
    const double decay = b + z;
    auto integrand = [&](double lam) {
        if (lam <= 0.0) return 0.0;
        return std::exp(log_norm + nu * std::log(lam) - decay * lam);
    };

    // The integrand is proportional to a Gamma(nu + 1, rate b + z) density;
    // truncate where that density's mass is negligible.
    const double mean = (nu + 1.0) / decay;
    const double sd = std::sqrt(nu + 1.0) / decay;
    const double upper = mean + 14.0 * sd + 40.0 / decay;
    return detail::integrate(integrand, 0.0, upper, 1e-10);
}

}  // namespace semio::mixture
