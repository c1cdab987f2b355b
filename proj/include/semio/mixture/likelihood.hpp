#pragma once

#include <cmath>
#include <limits>

#include "semio/corpus/counts.hpp"
#include "semio/mixture/model.hpp"

namespace semio::mixture {

/// Log-likelihood of a spectrum under the discrete mixture law; each word
/// type is one observation, so the contribution of z is n(z) * ln p(z).
/// Returns -inf when any observed z has numerically zero probability.
inline double log_likelihood(const LomaxMixture& m, const corpus::FrequencySpectrum& s) {
    if (s.empty()) throw data_error("log_likelihood: empty spectrum");
    double ll = 0.0;
    for (const auto& [z, n] : s.entries) {
        const double lp = m.log_discrete_pmf(z);
        if (!std::isfinite(lp)) return -std::numeric_limits<double>::infinity();
        ll += static_cast<double>(n) * lp;
    }
    return ll;
}

}  // namespace semio::mixture
