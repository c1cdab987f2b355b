#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semio/corpus/counts.hpp"
#include "semio/mixture/model.hpp"

namespace semio::mixture {

/// One chi-square cell: the consecutive count range [lo, hi], with hi == 0
/// meaning the open tail [lo, inf).
struct Bin {
    std::uint64_t lo = 1;
    std::uint64_t hi = 1;  // 0 = unbounded tail
    double observed = 0.0;
    double expected = 0.0;
};

struct ChiSquareResult {
    double chi_square = 0.0;
    std::size_t degrees_of_freedom = 0;
    std::vector<Bin> bins;
};

/// Pearson chi-square of the spectrum against the mixture, over consecutive
/// count ranges built greedily from z = 1 so every cell has expected count
/// >= min_expected; the final cell absorbs the tail, including counts beyond
/// the observed maximum. Throws when fewer cells remain than free
/// parameters + 2.
inline ChiSquareResult chi_square(const LomaxMixture& m, const corpus::FrequencySpectrum& s,
                                  double min_expected = 5.0) {
    if (s.empty()) throw data_error("chi_square: empty spectrum");
    const double types = static_cast<double>(s.total_types());
    const std::uint64_t zmax = s.max_count();

    std::vector<Bin> bins;
    std::uint64_t lo = 1;
    double observed_acc = 0.0;
    auto it = s.entries.begin();
    for (std::uint64_t zc = 1; zc <= zmax; ++zc) {
        while (it != s.entries.end() && it->first < zc) ++it;
        if (it != s.entries.end() && it->first == zc)
            observed_acc += static_cast<double>(it->second);
        const double expected =
            types * (m.survival(static_cast<double>(lo) - 1.0) - m.survival(static_cast<double>(zc)));
        if (expected >= min_expected) {
            bins.push_back({lo, zc, observed_acc, expected});
            lo = zc + 1;
            observed_acc = 0.0;
        }
    }
    // tail cell [lo, inf)
    const double tail_expected = types * m.survival(static_cast<double>(lo) - 1.0);
    if (!bins.empty() && tail_expected < min_expected) {
        bins.back().hi = 0;
        bins.back().observed += observed_acc;
        bins.back().expected += tail_expected;
    } else {
        bins.push_back({lo, 0, observed_acc, tail_expected});
    }

    const std::size_t free_params = 3 * m.order() - 1;
    if (bins.size() < free_params + 2)
        throw data_error("chi_square: only " + std::to_string(bins.size()) +
                         " cells for " + std::to_string(free_params) +
                         " free parameters; insufficient data");

    ChiSquareResult out;
    out.bins = std::move(bins);
    out.degrees_of_freedom = out.bins.size() - free_params - 1;
    for (const auto& b : out.bins) {
        const double d = b.observed - b.expected;
        out.chi_square += d * d / b.expected;
    }
    return out;
}

}  // namespace semio::mixture
