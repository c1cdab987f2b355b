#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "semio/error.hpp"

namespace semio::coordination {

/// Sign identifier -> set of inner-state identifiers sharing that
/// observable. State lists are kept sorted and unique; identifiers are
/// opaque and only compared for equality.
struct SignIndex {
    std::map<std::string, std::vector<std::string>> signs;

    void add(const std::string& sign, std::vector<std::string> states) {
        std::sort(states.begin(), states.end());
        states.erase(std::unique(states.begin(), states.end()), states.end());
        if (states.empty())
            throw data_error("SignIndex: sign '" + sign + "' must map to at least one state");
        signs[sign] = std::move(states);
    }

    void validate() const {
        for (const auto& [sign, states] : signs) {
            if (states.empty())
                throw data_error("SignIndex: sign '" + sign + "' maps to an empty state set");
            if (!std::is_sorted(states.begin(), states.end()) ||
                std::adjacent_find(states.begin(), states.end()) != states.end())
                throw data_error("SignIndex: state list of '" + sign +
                                 "' must be sorted and unique");
        }
    }
};

/// Time-ordered sign observations R_t, t = 1..T.
using Session = std::vector<std::string>;

}  // namespace semio::coordination
