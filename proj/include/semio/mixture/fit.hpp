#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "semio/corpus/counts.hpp"
#include "semio/detail/optimize.hpp"
#include "semio/detail/rng.hpp"
#include "semio/mixture/chi_square.hpp"
#include "semio/mixture/likelihood.hpp"
#include "semio/mixture/loglog.hpp"
#include "semio/mixture/model.hpp"

namespace semio::mixture {

struct FitOptions {
    std::size_t restarts = 3;
    std::uint64_t seed = 0;
    std::size_t max_iterations = 500;
    double tolerance = 1e-8;       // stop when the log-likelihood gain drops below this
    int mstep_evaluations = 60;    // Nelder-Mead budget per component per iteration
};

/// Fitted mixture plus goodness-of-fit diagnostics. r and slope come from
/// the log-binned histogram diagnostic; the raw per-count diagnostic is
/// available separately through loglog_diagnostics.
struct FitReport {
    LomaxMixture mixture;
    double log_likelihood = 0.0;
    double chi_square = 0.0;
    std::size_t degrees_of_freedom = 0;
    double loglog_r = 0.0;
    double loglog_slope = 0.0;
    std::vector<Bin> bins;

    // per-iteration log-likelihood of the winning restart
    std::vector<double> em_trace;
};

namespace fit_detail {

// search box, in log space; heavy tails push unconstrained searches to overflow
inline constexpr double kLogBLo = -13.815510557964274;  // ln 1e-6
inline constexpr double kLogBHi = 20.72326583694641;    // ln 1e9
inline constexpr double kLogNuLo = -6.907755278982137;  // ln 1e-3
inline constexpr double kLogNuHi = 9.210340371976184;   // ln 1e4

struct EmState {
    std::vector<double> c, b, nu;
    std::vector<double> trace;
    double log_likelihood = -std::numeric_limits<double>::infinity();
    bool at_bounds = false;
};

inline bool near(double v, double bound) { return std::fabs(v - bound) < 1e-6; }

inline EmState run_em(const std::vector<double>& z, const std::vector<double>& n,
                      std::vector<double> c, std::vector<double> b, std::vector<double> nu,
                      const FitOptions& opts) {
    const std::size_t M = c.size(), nz = z.size();
    double total = 0.0;
    for (double w : n) total += w;

    auto comp_log_pmf = [](double bb, double vv, double zz) {
        const double lsp = -vv * std::log1p((zz - 1.0) / bb);
        const double step = vv * std::log1p(1.0 / (bb + zz - 1.0));
        return lsp + std::log(-std::expm1(-step));
    };

    std::vector<double> lp(M * nz), lmix(nz), resp(M * nz);
    EmState st;
    double ll_prev = -std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
        // E-step: per-component log pmf, mixture log pmf, responsibilities
        for (std::size_t i = 0; i < M; ++i) {
            const double lc = std::log(c[i]);
            for (std::size_t k = 0; k < nz; ++k)
                lp[i * nz + k] = lc + comp_log_pmf(b[i], nu[i], z[k]);
        }
        double ll = 0.0;
        for (std::size_t k = 0; k < nz; ++k) {
            double m = lp[k];
            for (std::size_t i = 1; i < M; ++i) m = std::max(m, lp[i * nz + k]);
            double acc = 0.0;
            for (std::size_t i = 0; i < M; ++i) acc += std::exp(lp[i * nz + k] - m);
            lmix[k] = m + std::log(acc);
            ll += n[k] * lmix[k];
            for (std::size_t i = 0; i < M; ++i)
                resp[i * nz + k] = std::exp(lp[i * nz + k] - lmix[k]) * n[k];
        }
        if (!std::isfinite(ll)) {
            st.log_likelihood = -std::numeric_limits<double>::infinity();
            return st;
        }
        st.trace.push_back(ll);
        if (iter > 0 && ll - ll_prev < opts.tolerance) {
            ll_prev = ll;
            break;
        }
        ll_prev = ll;

        // M-step: closed-form weights, bounded numerical search per component
        for (std::size_t i = 0; i < M; ++i) {
            double w = 0.0;
            for (std::size_t k = 0; k < nz; ++k) w += resp[i * nz + k];
            c[i] = std::max(w / total, 1e-12);
        }
        double csum = 0.0;
        for (double w : c) csum += w;
        for (double& w : c) w /= csum;

        for (std::size_t i = 0; i < M; ++i) {
            const double* wi = &resp[i * nz];
            auto neg_q = [&](const std::array<double, 2>& u) {
                const double bb = std::exp(u[0]), vv = std::exp(u[1]);
                double q = 0.0;
                for (std::size_t k = 0; k < nz; ++k) {
                    if (wi[k] == 0.0) continue;
                    const double l = comp_log_pmf(bb, vv, z[k]);
                    if (!std::isfinite(l)) return std::numeric_limits<double>::infinity();
                    q += wi[k] * l;
                }
                return -q;
            };
            const auto res = detail::nelder_mead_2d(
                neg_q, {std::log(b[i]), std::log(nu[i])}, {kLogBLo, kLogNuLo},
                {kLogBHi, kLogNuHi}, opts.mstep_evaluations);
            b[i] = std::exp(res.x[0]);
            nu[i] = std::exp(res.x[1]);
        }
    }

    st.c = std::move(c);
    st.b = std::move(b);
    st.nu = std::move(nu);
    st.log_likelihood = ll_prev;
    for (std::size_t i = 0; i < M; ++i) {
        if (near(std::log(st.b[i]), kLogBLo) || near(std::log(st.b[i]), kLogBHi) ||
            near(std::log(st.nu[i]), kLogNuLo) || near(std::log(st.nu[i]), kLogNuHi))
            st.at_bounds = true;
    }
    return st;
}

}  // namespace fit_detail

/// Maximum-likelihood fit of an M-component mixture by EM over the latent
/// component indicator. The M-step improves each component's weighted
/// log-likelihood by bounded Nelder-Mead in log-parameter space (generalized
/// EM), so the log-likelihood is non-decreasing across iterations. Best of
/// `restarts` jittered initializations wins.
inline FitReport fit(const corpus::FrequencySpectrum& s, std::size_t M,
                     const FitOptions& opts = {}) {
    if (M < 1) throw data_error("fit: M must be >= 1");
    if (s.entries.size() < 3 * M)
        throw data_error("fit: spectrum has " + std::to_string(s.entries.size()) +
                         " distinct counts; need at least " + std::to_string(3 * M));

    std::vector<double> z, n;
    z.reserve(s.entries.size());
    n.reserve(s.entries.size());
    double total = 0.0;
    for (const auto& [zz, nn] : s.entries) {
        z.push_back(static_cast<double>(zz));
        n.push_back(static_cast<double>(nn));
        total += static_cast<double>(nn);
    }

    // quantile lookup over the type-weighted counts
    auto quantile = [&](double q) {
        double acc = 0.0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            acc += n[k];
            if (acc >= q * total) return z[k];
        }
        return z.back();
    };

    detail::Xoshiro256pp rng(detail::derive_seed(opts.seed, 0x66697453ULL));
    fit_detail::EmState best;
    std::size_t failures = 0;
    std::string last_failure;
    for (std::size_t r = 0; r < std::max<std::size_t>(1, opts.restarts); ++r) {
        std::vector<double> c(M, 1.0 / static_cast<double>(M));
        std::vector<double> b(M), nu(M, 1.5);
        for (std::size_t i = 0; i < M; ++i) {
            b[i] = std::max(quantile(static_cast<double>(i + 1) / static_cast<double>(M + 1)), 1e-3);
            if (r > 0) {
                b[i] *= std::exp(rng.u01() - 0.5);
                nu[i] *= std::exp(0.6 * (rng.u01() - 0.5));
            }
        }
        auto st = fit_detail::run_em(z, n, std::move(c), std::move(b), std::move(nu), opts);
        if (!std::isfinite(st.log_likelihood)) {
            ++failures;
            last_failure = "restart " + std::to_string(r) + " diverged";
            continue;
        }
        if (st.at_bounds) {
            ++failures;
            last_failure = "restart " + std::to_string(r) + " hit a parameter bound";
            continue;
        }
        if (st.log_likelihood > best.log_likelihood) best = std::move(st);
    }
    if (!std::isfinite(best.log_likelihood))
        throw numeric_error("fit: all " + std::to_string(failures) +
                            " restarts failed (" + last_failure + ")");

    std::vector<WeightedComponent> comps(M);
    for (std::size_t i = 0; i < M; ++i) comps[i] = {best.c[i], {best.b[i], best.nu[i]}};
    LomaxMixture mix(std::move(comps));

    FitReport report{std::move(mix)};
    report.log_likelihood = log_likelihood(report.mixture, s);
    const auto chi = chi_square(report.mixture, s);
    report.chi_square = chi.chi_square;
    report.degrees_of_freedom = chi.degrees_of_freedom;
    report.bins = chi.bins;
    const auto hist = histogram_diagnostics(report.mixture, s);
    report.loglog_r = hist.r;
    report.loglog_slope = hist.slope;
    report.em_trace = std::move(best.trace);
    return report;
}

}  // namespace semio::mixture
