#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semio/mixture/fit.hpp"

namespace semio::mixture {

struct CandidateFit {
    std::size_t M = 0;
    std::optional<FitReport> report;  // empty when the fit failed
    std::string error;
    bool data_failure = false;  // failed on insufficient data rather than numerics
};

/// The full (M, chi-square) front plus the chosen order.
struct ModelSelection {
    std::vector<CandidateFit> candidates;
    std::size_t chosen_M = 0;

    const FitReport& chosen() const {
        for (const auto& c : candidates)
            if (c.M == chosen_M && c.report) return *c.report;
        throw numeric_error("model selection produced no usable fit");
    }
};

// 99% quantile of the chi-square distribution with 3 degrees of freedom:
// the deviance one extra component (3 parameters) claims by chance alone.
inline constexpr double kComponentDeviance99 = 11.344866730144373;

/// Fits M = 1..M_max and picks the knee of the chi-square front: the
/// smallest M whose successor fails to improve chi-square both by
/// `improvement` (relative) and beyond the chance-level deviance of the
/// three added parameters. Per-M failures are recorded, not fatal, unless
/// every order fails.
inline ModelSelection select_model(const corpus::FrequencySpectrum& s, std::size_t M_max,
                                   const FitOptions& opts = {}, double improvement = 0.05) {
    if (M_max < 1) throw data_error("select_model: M_max must be >= 1");
    ModelSelection sel;
    for (std::size_t M = 1; M <= M_max; ++M) {
        CandidateFit cand;
        cand.M = M;
        try {
            cand.report = fit(s, M, opts);
        } catch (const data_error& e) {
            cand.error = e.what();
            cand.data_failure = true;
        } catch (const std::exception& e) {
            cand.error = e.what();
        }
        sel.candidates.push_back(std::move(cand));
    }

    // successive usable fits only
    std::vector<const CandidateFit*> ok;
    for (const auto& c : sel.candidates)
        if (c.report) ok.push_back(&c);
    if (ok.empty()) {
        std::string detail;
        bool all_data = true;
        for (const auto& c : sel.candidates) {
            detail += " M=" + std::to_string(c.M) + ": " + c.error + ";";
            all_data = all_data && c.data_failure;
        }
        if (all_data) throw data_error("select_model: every order failed --" + detail);
        throw numeric_error("select_model: every order failed --" + detail);
    }

    sel.chosen_M = ok.back()->M;
    for (std::size_t i = 0; i + 1 < ok.size(); ++i) {
        const double prev = ok[i]->report->chi_square;
        const double next = ok[i + 1]->report->chi_square;
        const double gain = prev - next;
        const bool meaningful =
            prev > 0.0 && gain / prev >= improvement && gain >= kComponentDeviance99;
        if (!meaningful) {  // ties break toward the smaller order
            sel.chosen_M = ok[i]->M;
            break;
        }
    }
    return sel;
}

}  // namespace semio::mixture
