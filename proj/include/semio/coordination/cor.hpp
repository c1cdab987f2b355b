#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "semio/coordination/index.hpp"
#include "semio/error.hpp"

namespace semio::coordination {

/// Per-step behavioral-coordination values COR(1..T); each value lies in
/// [0, T-1] since it sums T-1 Jaccard terms.
struct CorSeries {
    std::vector<double> values;

    std::vector<double> log_view() const {
        std::vector<double> out(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::log(values[i]);
        return out;
    }
};

/// Jaccard similarity |A .. B| / |A u B| over sorted unique ranges;
/// two empty sets score 0 (no evidence of coordination).
inline double jaccard(std::span<const std::string> a, std::span<const std::string> b) {
    std::size_t inter = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const int c = a[i].compare(b[j]);
        if (c == 0) {
            ++inter;
            ++i;
            ++j;
        } else if (c < 0) {
            ++i;
        } else {
            ++j;
        }
    }
    const std::size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

/// COR(t) = sum over t' != t of the Jaccard similarity between the state
/// sets of the signs observed at t and t'. Exact and deterministic.
inline CorSeries cor(const Session& session, const SignIndex& index) {
    if (session.empty()) throw data_error("cor: session must contain at least one step");

    // resolve each step once, then reuse pairwise similarities of distinct signs
    std::vector<const std::vector<std::string>*> sets;
    std::vector<std::size_t> distinct_id(session.size());
    std::map<std::string, std::size_t> seen;
    std::vector<const std::vector<std::string>*> distinct;
    for (std::size_t t = 0; t < session.size(); ++t) {
        const auto it = index.signs.find(session[t]);
        if (it == index.signs.end())
            throw data_error("cor: sign '" + session[t] + "' at step " +
                             std::to_string(t + 1) + " is not in the index");
        auto [pos, inserted] = seen.emplace(session[t], distinct.size());
        if (inserted) distinct.push_back(&it->second);
        distinct_id[t] = pos->second;
    }
    const std::size_t D = distinct.size();
    std::vector<double> sim(D * D, 1.0);
    for (std::size_t a = 0; a < D; ++a)
        for (std::size_t b = a + 1; b < D; ++b)
            sim[a * D + b] = sim[b * D + a] = jaccard(*distinct[a], *distinct[b]);

    CorSeries out;
    out.values.resize(session.size(), 0.0);
    for (std::size_t t = 0; t < session.size(); ++t) {
        double acc = 0.0;
        for (std::size_t u = 0; u < session.size(); ++u)
            if (u != t) acc += sim[distinct_id[t] * D + distinct_id[u]];
        out.values[t] = acc;
    }
    return out;
}

/// Mean COR over a session collection: each session is truncated to its
/// first `horizon` steps, COR is computed on the truncated prefix, and the
/// per-step arithmetic mean is returned.
inline CorSeries average_cor(std::span<const Session> sessions, const SignIndex& index,
                             std::size_t horizon) {
    if (horizon < 1) throw data_error("average_cor: horizon must be >= 1");
    if (sessions.empty()) throw data_error("average_cor: need at least one session");
    CorSeries out;
    out.values.assign(horizon, 0.0);
    for (std::size_t k = 0; k < sessions.size(); ++k) {
        if (sessions[k].size() < horizon)
            throw data_error("average_cor: session " + std::to_string(k + 1) + " has " +
                             std::to_string(sessions[k].size()) + " steps, horizon is " +
                             std::to_string(horizon));
        Session prefix(sessions[k].begin(),
                       sessions[k].begin() + static_cast<std::ptrdiff_t>(horizon));
        const auto series = cor(prefix, index);
        for (std::size_t t = 0; t < horizon; ++t) out.values[t] += series.values[t];
    }
    for (double& v : out.values) v /= static_cast<double>(sessions.size());
    return out;
}

}  // namespace semio::coordination
