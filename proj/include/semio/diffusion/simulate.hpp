#pragma once

#include <cmath>
#include <cstdint>
#include <future>
#include <string>
#include <vector>

#include "semio/detail/fast_normal.hpp"
#include "semio/detail/rng.hpp"
#include "semio/diffusion/config.hpp"
#include "semio/error.hpp"

namespace semio::diffusion {

struct DiffusionRun {
    DiffusionConfig config;
    /// theta * tau_0 at retained steps, pooled over replicas in replica order.
    std::vector<double> samples;
    /// sum of all rates at stride intervals of replica 0 (burn-in included),
    /// for drift and fixed-point diagnostics.
    std::vector<double> trajectory_sum;
};

namespace sim_detail {

struct ReplicaOut {
    std::vector<double> samples;
    std::vector<double> trajectory;  // only filled for replica 0
};

inline ReplicaOut run_replica(const DiffusionConfig& cfg, std::size_t replica) {
    const std::size_t n1 = cfg.N + 1;
    const std::size_t stride = cfg.sample_stride_or_default();
    const std::size_t total_steps = cfg.burn_in + cfg.samples_per_replica * stride;
    const bool record_traj = replica == 0;
    const double target = cfg.rho * cfg.mu;
    const double noise_scale = cfg.sigma * std::sqrt(cfg.dt);
    const bool uniform_a = cfg.a.size() == 1;

    detail::Xoshiro256pp rng(detail::derive_seed(cfg.seed, replica));
    detail::NormalBlockSampler noise_gen(detail::derive_seed(cfg.seed, replica));

    // noise is produced in blocks of whole steps so the transform loops vectorize
    constexpr std::size_t kBlockSteps = 256;
    std::vector<float> noise;
    std::size_t noise_row = kBlockSteps;  // forces a fill on first use
    const std::size_t row_len = (n1 + 1) & ~std::size_t{1};
    if (cfg.sigma > 0.0) noise.resize(kBlockSteps * row_len);

    std::vector<double> tau(n1);
    switch (cfg.init) {
        case InitMode::zeros: break;
        case InitMode::constant:
            for (double& t : tau) t = cfg.init_value;
            break;
        case InitMode::uniform:
            for (double& t : tau) t = cfg.init_value * rng.u01();
            break;
    }

    double sum = 0.0;
    for (double t : tau) sum += t;

    ReplicaOut out;
    out.samples.reserve(cfg.samples_per_replica);
    if (record_traj) {
        out.trajectory.reserve(total_steps / stride + 2);
        out.trajectory.push_back(sum);
    }

    for (std::size_t step = 1; step <= total_steps; ++step) {
        // four accumulators keep the clipped sum reduction off the serial
        // dependency chain without reassociating across runs
        double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
        if (cfg.sigma == 0.0) {
            if (uniform_a) {
                const double d = cfg.a[0] * cfg.dt * (target - sum);
                for (std::size_t i = 0; i < n1; ++i) {
                    double v = tau[i] + d;
                    v = v > 0.0 ? v : 0.0;
                    tau[i] = v;
                    (i & 1 ? acc1 : acc0) += v;
                }
            } else {
                const double base = cfg.dt * (target - sum);
                for (std::size_t i = 0; i < n1; ++i) {
                    double v = tau[i] + cfg.a[i] * base;
                    v = v > 0.0 ? v : 0.0;
                    tau[i] = v;
                    (i & 1 ? acc1 : acc0) += v;
                }
            }
        } else {
            if (noise_row == kBlockSteps) {
                noise_gen.fill(noise.data(), noise.size());
                noise_row = 0;
            }
            const float* __restrict__ row = noise.data() + noise_row * row_len;
            ++noise_row;
            if (uniform_a) {
                const double d = cfg.a[0] * cfg.dt * (target - sum);
                std::size_t i = 0;
                for (; i + 4 <= n1; i += 4) {
                    double v0 = tau[i] + d + noise_scale * static_cast<double>(row[i]);
                    double v1 = tau[i + 1] + d + noise_scale * static_cast<double>(row[i + 1]);
                    double v2 = tau[i + 2] + d + noise_scale * static_cast<double>(row[i + 2]);
                    double v3 = tau[i + 3] + d + noise_scale * static_cast<double>(row[i + 3]);
                    v0 = v0 > 0.0 ? v0 : 0.0;
                    v1 = v1 > 0.0 ? v1 : 0.0;
                    v2 = v2 > 0.0 ? v2 : 0.0;
                    v3 = v3 > 0.0 ? v3 : 0.0;
                    tau[i] = v0;
                    tau[i + 1] = v1;
                    tau[i + 2] = v2;
                    tau[i + 3] = v3;
                    acc0 += v0;
                    acc1 += v1;
                    acc2 += v2;
                    acc3 += v3;
                }
                for (; i < n1; ++i) {
                    double v = tau[i] + d + noise_scale * static_cast<double>(row[i]);
                    v = v > 0.0 ? v : 0.0;
                    tau[i] = v;
                    acc0 += v;
                }
            } else {
                const double base = cfg.dt * (target - sum);
                for (std::size_t i = 0; i < n1; ++i) {
                    double v = tau[i] + cfg.a[i] * base + noise_scale * static_cast<double>(row[i]);
                    v = v > 0.0 ? v : 0.0;
                    tau[i] = v;
                    (i & 1 ? acc1 : acc0) += v;
                }
            }
        }
        sum = (acc0 + acc1) + (acc2 + acc3);
        if (!std::isfinite(sum))
            throw numeric_error("diffusion: non-finite state at step " +
                                std::to_string(step) + " in replica " +
                                std::to_string(replica));
        if (record_traj && step % stride == 0) out.trajectory.push_back(sum);
        if (step > cfg.burn_in && (step - cfg.burn_in) % stride == 0)
            out.samples.push_back(cfg.theta * tau[0]);
    }
    return out;
}

}  // namespace sim_detail

/// Euler-Maruyama integration of the rate-competition equations
/// d tau_i = a_i (rho mu - sum_j tau_j) dt + sigma sqrt(dt) xi_i, with rates
/// clipped at zero. Replicas evolve independently from per-replica seeds and
/// may run concurrently; the pooled sample multiset does not depend on the
/// thread count.
inline DiffusionRun simulate(const DiffusionConfig& cfg) {
    cfg.validate();
    DiffusionRun run;
    run.config = cfg;
    run.samples.reserve(cfg.replicas * cfg.samples_per_replica);

    const unsigned threads = std::max(1u, cfg.threads);
    if (threads == 1 || cfg.replicas == 1) {
        for (std::size_t r = 0; r < cfg.replicas; ++r) {
            auto out = sim_detail::run_replica(cfg, r);
            if (r == 0) run.trajectory_sum = std::move(out.trajectory);
            run.samples.insert(run.samples.end(), out.samples.begin(), out.samples.end());
        }
        return run;
    }

    std::vector<std::future<sim_detail::ReplicaOut>> futures;
    futures.reserve(cfg.replicas);
    for (std::size_t r = 0; r < cfg.replicas; ++r)
        futures.push_back(std::async(std::launch::async | std::launch::deferred,
                                     [&cfg, r] { return sim_detail::run_replica(cfg, r); }));
    for (std::size_t r = 0; r < cfg.replicas; ++r) {
        auto out = futures[r].get();
        if (r == 0) run.trajectory_sum = std::move(out.trajectory);
        run.samples.insert(run.samples.end(), out.samples.begin(), out.samples.end());
    }
    return run;
}

}  // namespace semio::diffusion
