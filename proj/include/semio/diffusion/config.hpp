#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "semio/error.hpp"

namespace semio::diffusion {

enum class InitMode {
    zeros,     // all rates start at 0
    constant,  // all rates start at init_value
    uniform,   // each rate drawn uniformly from [0, init_value]
};

/// Configuration of the representation-rate competition process:
/// N + 1 rates relax toward the hyperplane sum(tau) = rho * mu under
/// independent Gaussian noise; the observed occurrence value is
/// z = theta * tau_0 at retained steps.
struct DiffusionConfig {
    std::size_t N = 200;        // competing alternatives; N + 1 rates in total
    double mu = 201.0;          // inner-state rate
    double rho = 1.0;           // parallelism coefficient, >= 1
    double theta = 1.0;         // observation time
    std::vector<double> a{0.1}; // relaxation coefficients; size 1 broadcasts
    double sigma = 0.3;         // noise intensity
    double dt = 0.01;           // integration step
    std::size_t burn_in = 10000;
    std::size_t sample_stride = 0;  // 0 = auto: ceil(5 / (min(a) * dt))
    std::size_t samples_per_replica = 20;
    std::size_t replicas = 50;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    InitMode init = InitMode::zeros;
    double init_value = 0.0;

    void validate() const {
        if (N < 1) throw data_error("diffusion: N must be >= 1");
        if (!(mu > 0.0)) throw data_error("diffusion: mu must be > 0");
        if (!(rho >= 1.0)) throw data_error("diffusion: rho must be >= 1");
        if (!(theta > 0.0)) throw data_error("diffusion: theta must be > 0");
        if (!(dt > 0.0)) throw data_error("diffusion: dt must be > 0");
        if (sigma < 0.0) throw data_error("diffusion: sigma must be >= 0");
        if (a.empty() || (a.size() != 1 && a.size() != N + 1))
            throw data_error("diffusion: a must have 1 or N+1 entries");
        for (double ai : a)
            if (!(ai > 0.0)) throw data_error("diffusion: every a_i must be > 0");
        if (samples_per_replica < 1)
            throw data_error("diffusion: samples_per_replica must be >= 1");
        if (replicas < 1) throw data_error("diffusion: replicas must be >= 1");
        if (sample_stride_or_default() < 1)
            throw data_error("diffusion: sample_stride must be >= 1");
        if (init == InitMode::uniform && !(init_value > 0.0))
            throw data_error("diffusion: uniform init needs init_value > 0");
        if (init == InitMode::constant && init_value < 0.0)
            throw data_error("diffusion: constant init must be >= 0");
    }

    /// Sampling cadence: about five relaxation times of the slowest rate,
    /// so retained draws are roughly decorrelated.
    std::size_t sample_stride_or_default() const {
        if (sample_stride != 0) return sample_stride;
        double amin = a[0];
        for (double ai : a) amin = std::min(amin, ai);
        return static_cast<std::size_t>(std::ceil(5.0 / (amin * dt)));
    }
};

/// Rate parameter of the limiting exponential law: the average
/// representation time 1/tau_bar with tau_bar = mu/(N+1), divided by
/// theta * rho, i.e. lambda = (N+1) / (mu * theta * rho).
inline double theoretical_lambda(const DiffusionConfig& cfg) {
    return static_cast<double>(cfg.N + 1) / (cfg.mu * cfg.theta * cfg.rho);
}

}  // namespace semio::diffusion
