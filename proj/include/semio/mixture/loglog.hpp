#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "semio/corpus/counts.hpp"
#include "semio/detail/stats.hpp"
#include "semio/mixture/model.hpp"

namespace semio::mixture {

struct LogLogPoint {
    std::uint64_t z = 0;         // occurrence count (for the raw view) or range lo (binned)
    double log_observed = 0.0;   // ln of the observed proportion
    double log_predicted = 0.0;  // ln of the predicted probability
};

struct LogLogDiagnostics {
    double r = 0.0;
    double slope = 0.0;
    std::vector<LogLogPoint> points;
};

/// Raw predicted-versus-observed diagnostic: one point per observed count z,
/// x = ln(n(z)/V), y = ln p(z); r is the Pearson correlation and slope the
/// least-squares slope of predicted on observed. On natural spectra the deep
/// tail contributes many points with n(z) = 1 whose observed proportion is
/// constant, which caps r well below 1; see histogram_diagnostics for the
/// aggregated view this toolkit reports.
inline LogLogDiagnostics loglog_diagnostics(const LomaxMixture& m,
                                            const corpus::FrequencySpectrum& s) {
    if (s.empty()) throw data_error("loglog_diagnostics: empty spectrum");
    const double types = static_cast<double>(s.total_types());
    LogLogDiagnostics out;
    std::vector<double> x, y;
    for (const auto& [z, n] : s.entries) {
        const double lo = std::log(static_cast<double>(n) / types);
        const double lp = m.log_discrete_pmf(z);
        out.points.push_back({z, lo, lp});
        x.push_back(lo);
        y.push_back(lp);
    }
    const auto fit = detail::linear_fit(x, y);
    out.r = fit.r;
    out.slope = fit.slope;
    return out;
}

/// Histogram (log-binned) predicted-versus-observed diagnostic. Counts are
/// aggregated over doubling ranges [2^k, 2^(k+1)); each occupied range
/// contributes one point (ln of observed proportion, ln of expected
/// proportion). This is the aggregation a log-log frequency histogram
/// performs and is the r / slope reported alongside fits.
inline LogLogDiagnostics histogram_diagnostics(const LomaxMixture& m,
                                               const corpus::FrequencySpectrum& s) {
    if (s.empty()) throw data_error("histogram_diagnostics: empty spectrum");
    const double types = static_cast<double>(s.total_types());
    const std::uint64_t zmax = s.max_count();

    LogLogDiagnostics out;
    std::vector<double> x, y;
    auto it = s.entries.begin();
    for (std::uint64_t lo = 1; lo <= zmax; lo *= 2) {
        const std::uint64_t hi = 2 * lo - 1;
        double observed = 0.0;
        while (it != s.entries.end() && it->first <= hi) {
            observed += static_cast<double>(it->second);
            ++it;
        }
        if (observed < 1.0) continue;
        const double expected =
            types * (m.survival(static_cast<double>(lo) - 1.0) - m.survival(static_cast<double>(hi)));
        if (!(expected > 0.0)) continue;
        const double lx = std::log(observed / types);
        const double ly = std::log(expected / types);
        out.points.push_back({lo, lx, ly});
        x.push_back(lx);
        y.push_back(ly);
    }
    const auto fit = detail::linear_fit(x, y);
    out.r = fit.r;
    out.slope = fit.slope;
    return out;
}

}  // namespace semio::mixture
