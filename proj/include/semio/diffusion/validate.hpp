#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "semio/detail/stats.hpp"
#include "semio/diffusion/config.hpp"
#include "semio/diffusion/simulate.hpp"
#include "semio/error.hpp"

namespace semio::diffusion {

struct ExponentialCheck {
    double lambda_hat = 0.0;    // exponential MLE, 1/mean
    double lambda_theory = 0.0;
    double lambda_rel_error = 0.0;
    double ks_distance = 0.0;
    std::size_t samples = 0;
    bool ks_pass = false;       // ks < 0.05
    bool lambda_pass = false;   // |lambda_hat - theory| / theory < 0.20
    bool pass = false;
};

/// Checks that the retained occurrence values follow the exponential law
/// with the configured rate: lambda is estimated by 1/mean, the KS distance
/// is taken against Exp(lambda_hat), and the run passes when ks < 0.05 and
/// the estimated rate is within 20% of theory.
inline ExponentialCheck validate_exponential(const DiffusionRun& run) {
    if (run.samples.size() < 1000)
        throw data_error("validate_exponential: need at least 1000 samples, have " +
                         std::to_string(run.samples.size()));
    ExponentialCheck out;
    out.samples = run.samples.size();
    double mean = 0.0;
    for (double z : run.samples) mean += z;
    mean /= static_cast<double>(run.samples.size());
    if (!(mean > 0.0)) throw data_error("validate_exponential: non-positive sample mean");

    out.lambda_hat = 1.0 / mean;
    out.lambda_theory = theoretical_lambda(run.config);
    out.lambda_rel_error =
        std::fabs(out.lambda_hat - out.lambda_theory) / out.lambda_theory;

    const double lam = out.lambda_hat;
    out.ks_distance = detail::ks_distance(
        run.samples, [lam](double z) { return 1.0 - std::exp(-lam * z); });

    out.ks_pass = out.ks_distance < 0.05;
    out.lambda_pass = out.lambda_rel_error < 0.20;
    out.pass = out.ks_pass && out.lambda_pass;
    return out;
}

}  // namespace semio::diffusion
