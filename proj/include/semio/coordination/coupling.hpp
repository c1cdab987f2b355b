#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "semio/coordination/index.hpp"
#include "semio/detail/rng.hpp"
#include "semio/error.hpp"

namespace semio::coordination {

enum class CouplingMode { expert, non_expert, adaptive };

/// Illustrative coupled-systems scenario: a psychic agent holding an
/// association-weight matrix converses with a social sign index. The
/// concrete update operators are one deliberately simple instantiation of
/// the coupled dynamics and are parameterized so alternatives can be
/// swapped in.
struct CouplingScenario {
    CouplingMode mode = CouplingMode::non_expert;
    std::size_t state_count = 10;
    std::size_t sign_count = 25;
    std::size_t session_length = 40;
    std::size_t session_count = 100;
    double learning_rate = 0.5;
    std::size_t set_size_min = 1;  // sign state-set sizes drawn from this range
    std::size_t set_size_max = 2;
    std::uint64_t seed = 0;

    void validate() const {
        if (state_count < 1 || sign_count < 1)
            throw data_error("coupling: state and sign counts must be positive");
        if (session_length < 1) throw data_error("coupling: session_length must be >= 1");
        if (session_count < 1) throw data_error("coupling: session_count must be >= 1");
        if (learning_rate < 0.0 || learning_rate > 1.0)
            throw data_error("coupling: learning_rate must lie in [0, 1]");
        if (set_size_min < 1 || set_size_max < set_size_min || set_size_max > state_count)
            throw data_error("coupling: need 1 <= set_size_min <= set_size_max <= state_count");
    }
};

struct CouplingResult {
    std::vector<Session> sessions;
    SignIndex index;  // the final index (mutated in adaptive mode)
};

namespace coupling_detail {

inline std::string padded_id(char prefix, std::size_t i, std::size_t count) {
    std::size_t width = 1, c = count > 0 ? count - 1 : 0;
    while (c >= 10) {
        c /= 10;
        ++width;
    }
    std::string num = std::to_string(i);
    return prefix + std::string(width - num.size(), '0') + num;
}

}  // namespace coupling_detail

/// Generates a sign index and seeded sessions. Per session the agent walks
/// a balanced goal schedule (shuffled round robin over states); at each step
/// it emits the argmax-weight sign for the goal, ties broken uniformly, and
/// reinforces the weight toward the observed success. Expert weights start
/// concentrated on one index-aligned sign per state and the other modes
/// start flat; adaptive mode additionally re-weights the index toward the
/// agent's usage, adding pursued goals and narrowing never-pursued states
/// out of emitted signs.
inline CouplingResult simulate_coupling(const CouplingScenario& sc) {
    sc.validate();
    detail::Xoshiro256pp rng(detail::derive_seed(sc.seed, 0xc0551eULL));

    const std::size_t S = sc.state_count, K = sc.sign_count;
    std::vector<std::uint8_t> member(S * K, 0);  // state x sign incidence

    // random state sets, sizes uniform in [set_size_min, set_size_max]
    std::vector<std::size_t> perm(S);
    for (std::size_t g = 0; g < S; ++g) perm[g] = g;
    for (std::size_t s = 0; s < K; ++s) {
        const std::size_t size =
            sc.set_size_min + rng.below(sc.set_size_max - sc.set_size_min + 1);
        for (std::size_t i = 0; i < size; ++i) {  // partial Fisher-Yates
            const std::size_t j = i + rng.below(S - i);
            std::swap(perm[i], perm[j]);
            member[perm[i] * K + s] = 1;
        }
    }
    // every state must be reachable through some sign
    for (std::size_t g = 0; g < S; ++g) {
        bool covered = false;
        for (std::size_t s = 0; s < K && !covered; ++s) covered = member[g * K + s] != 0;
        if (!covered) member[g * K + rng.below(K)] = 1;
    }

    std::vector<std::uint8_t> used_with(S * K, 0);  // adaptive usage profile
    std::vector<double> weights(S * K, 0.0);
    std::vector<std::size_t> schedule, ties;

    CouplingResult out;
    out.sessions.reserve(sc.session_count);
    for (std::size_t session = 0; session < sc.session_count; ++session) {
        // fresh communication episode: re-seat the agent
        std::fill(weights.begin(), weights.end(), 0.0);
        if (sc.mode == CouplingMode::expert) {
            for (std::size_t g = 0; g < S; ++g)
                for (std::size_t s = 0; s < K; ++s)
                    if (member[g * K + s]) {
                        weights[g * K + s] = 1.0;  // one concentrated aligned sign
                        break;
                    }
        }

        // balanced goal schedule: shuffled round robin over the states
        schedule.clear();
        while (schedule.size() < sc.session_length) {
            for (std::size_t g = 0; g < S; ++g) perm[g] = g;
            for (std::size_t g = 0; g + 1 < S; ++g)
                std::swap(perm[g], perm[g + rng.below(S - g)]);
            schedule.insert(schedule.end(), perm.begin(), perm.end());
        }
        schedule.resize(sc.session_length);

        Session sess;
        sess.reserve(sc.session_length);
        for (const std::size_t goal : schedule) {
            const double* row = &weights[goal * K];
            double best = row[0];
            for (std::size_t s = 1; s < K; ++s) best = std::max(best, row[s]);
            ties.clear();
            for (std::size_t s = 0; s < K; ++s)
                if (row[s] == best) ties.push_back(s);
            const std::size_t sign = ties[rng.below(ties.size())];
            sess.push_back(coupling_detail::padded_id('k', sign, K));

            const double reward = member[goal * K + sign] ? 1.0 : 0.0;
            weights[goal * K + sign] +=
                sc.learning_rate * (reward - weights[goal * K + sign]);

            if (sc.mode == CouplingMode::adaptive) {
                used_with[goal * K + sign] = 1;
                if (!member[goal * K + sign] && rng.u01() < sc.learning_rate)
                    member[goal * K + sign] = 1;
                // narrow: drop one indexed state this sign was never used for
                ties.clear();
                for (std::size_t g = 0; g < S; ++g)
                    if (member[g * K + sign] && !used_with[g * K + sign]) ties.push_back(g);
                if (!ties.empty() && rng.u01() < sc.learning_rate) {
                    member[ties[rng.below(ties.size())] * K + sign] = 0;
                    bool any = false;
                    for (std::size_t g = 0; g < S && !any; ++g) any = member[g * K + sign] != 0;
                    if (!any) member[goal * K + sign] = 1;  // state sets stay non-empty
                }
            }
        }
        out.sessions.push_back(std::move(sess));
    }

    for (std::size_t s = 0; s < K; ++s) {
        std::vector<std::string> states;
        for (std::size_t g = 0; g < S; ++g)
            if (member[g * K + s]) states.push_back(coupling_detail::padded_id('s', g, S));
        if (states.empty()) states.push_back(coupling_detail::padded_id('s', 0, S));
        out.index.add(coupling_detail::padded_id('k', s, K), std::move(states));
    }
    return out;
}

}  // namespace semio::coordination
