#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "semio/error.hpp"

namespace semio::corpus {

/// Word-form -> occurrence count. Keys are the tokenizer's output: non-empty,
/// case-folded, free of separator characters. Ordered map so that iteration
/// (and every serialization) is deterministic.
struct TokenCounts {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total_tokens = 0;

    std::size_t vocabulary() const { return counts.size(); }
};

/// Exact multiset count of a token sequence. Order-independent.
inline TokenCounts count(std::span<const std::string> tokens) {
    TokenCounts tc;
    for (const auto& t : tokens) ++tc.counts[t];
    tc.total_tokens = tokens.size();
    return tc;
}

/// Merge partial counts; count is a monoid homomorphism over token-stream
/// concatenation, so merging per-document counts equals counting the pool.
inline TokenCounts merge(const TokenCounts& a, const TokenCounts& b) {
    TokenCounts out = a;
    for (const auto& [word, n] : b.counts) out.counts[word] += n;
    out.total_tokens += b.total_tokens;
    return out;
}

/// Occurrence count z -> number of word types observed exactly z times.
/// The sufficient statistic the occurrence-frequency model is fitted to.
struct FrequencySpectrum {
    std::map<std::uint64_t, std::uint64_t> entries;

    std::uint64_t total_types() const {
        std::uint64_t v = 0;
        for (const auto& [z, n] : entries) v += n;
        return v;
    }
    std::uint64_t total_tokens() const {
        std::uint64_t t = 0;
        for (const auto& [z, n] : entries) t += z * n;
        return t;
    }
    std::uint64_t max_count() const {
        return entries.empty() ? 0 : entries.rbegin()->first;
    }
    bool empty() const { return entries.empty(); }
};

inline FrequencySpectrum spectrum(const TokenCounts& tc) {
    FrequencySpectrum s;
    for (const auto& [word, n] : tc.counts) {
        if (n == 0) throw data_error("spectrum: zero count for word '" + word + "'");
        ++s.entries[n];
    }
    return s;
}

/// Spectrum built from raw draws (used with synthetic samples).
inline FrequencySpectrum spectrum_of_draws(std::span<const std::uint64_t> draws) {
    std::map<std::uint64_t, std::uint64_t> tally;
    for (auto z : draws) ++tally[z];
    FrequencySpectrum s;
    for (const auto& [z, n] : tally) {
        if (z == 0) throw data_error("spectrum_of_draws: draws must be >= 1");
        s.entries[z] = n;
    }
    return s;
}

}  // namespace semio::corpus
