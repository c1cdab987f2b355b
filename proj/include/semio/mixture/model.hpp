#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "semio/detail/rng.hpp"
#include "semio/error.hpp"

namespace semio::mixture {

/// One Lomax (Pareto type II) component: density nu * b^nu / (z + b)^(nu+1).
/// Arises as a Gamma(shape nu, rate b) mixture of exponentials, so the
/// ratio nu/b tracks the underlying mean rate and is exposed as a
/// diagnostic; b and nu themselves are the identifiable parameters.
struct LomaxComponent {
    double b = 1.0;   // scale, same units as the occurrence count
    double nu = 1.0;  // shape

    /// Mean-rate proxy nu/b; the microparameters behind it (observation
    /// time, parallelism, representation time) are not identifiable
    /// separately from count data.
    double rate_ratio() const { return nu / b; }
};

struct WeightedComponent {
    double c = 1.0;  // mixing weight in (0, 1]
    LomaxComponent component;
};

/// Finite mixture of Lomax components over occurrence counts.
/// Invariants: weights sum to 1 within 1e-12, components are stored in
/// canonical order (ascending b, ties by ascending nu), M >= 1.
class LomaxMixture {
public:
    explicit LomaxMixture(std::vector<WeightedComponent> components)
        : components_(std::move(components)) {
        if (components_.empty())
            throw data_error("LomaxMixture: at least one component required");
        double sum = 0.0;
        for (const auto& wc : components_) {
            if (!(wc.c > 0.0) || wc.c > 1.0 + 1e-12)
                throw data_error("LomaxMixture: weights must lie in (0, 1]");
            if (!(wc.component.b > 0.0) || !(wc.component.nu > 0.0))
                throw data_error("LomaxMixture: b and nu must be positive");
            sum += wc.c;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw data_error("LomaxMixture: weights must sum to 1 (got " +
                             std::to_string(sum) + ")");
        std::sort(components_.begin(), components_.end(),
                  [](const WeightedComponent& a, const WeightedComponent& b) {
                      if (a.component.b != b.component.b) return a.component.b < b.component.b;
                      return a.component.nu < b.component.nu;
                  });
    }

    /// Single-component convenience constructor.
    LomaxMixture(double b, double nu)
        : LomaxMixture(std::vector<WeightedComponent>{{1.0, {b, nu}}}) {}

    std::size_t order() const { return components_.size(); }
    const std::vector<WeightedComponent>& components() const { return components_; }

    bool operator==(const LomaxMixture& other) const {
        if (components_.size() != other.components_.size()) return false;
        for (std::size_t i = 0; i < components_.size(); ++i) {
            if (components_[i].c != other.components_[i].c ||
                components_[i].component.b != other.components_[i].component.b ||
                components_[i].component.nu != other.components_[i].component.nu)
                return false;
        }
        return true;
    }

    /// Density f(z) = sum_i c_i nu_i b_i^nu_i / (z + b_i)^(nu_i + 1),
    /// evaluated in log space per component so large nu does not overflow.
    double pdf(double z) const {
        double f = 0.0;
        for (const auto& wc : components_) {
            const double lb = std::log(wc.component.b);
            const double lzb = std::log(z + wc.component.b);
            const double lf = std::log(wc.component.nu) + wc.component.nu * lb -
                              (wc.component.nu + 1.0) * lzb;
            f += wc.c * std::exp(lf);
        }
        return f;
    }

    /// F(z) = sum_i c_i (1 - (b_i / (z + b_i))^nu_i).
    double cdf(double z) const {
        double f = 0.0;
        for (const auto& wc : components_)
            f += wc.c * -std::expm1(-wc.component.nu * std::log1p(z / wc.component.b));
        return f;
    }

    /// Survival 1 - F(z), computed directly for tail accuracy.
    double survival(double z) const {
        double s = 0.0;
        for (const auto& wc : components_)
            s += wc.c * std::exp(-wc.component.nu * std::log1p(z / wc.component.b));
        return s;
    }

    /// Discrete adaptation p(z) = F(z) - F(z-1) on z >= 1. Telescopes to
    /// exactly 1 over z = 1, 2, ... since F(0) = 0.
    double discrete_pmf(std::uint64_t z) const {
        return std::exp(log_discrete_pmf(z));
    }

    /// log p(z), stable deep into the tail where F(z) - F(z-1) would
    /// cancel catastrophically.
    double log_discrete_pmf(std::uint64_t z) const {
        if (z == 0) return -std::numeric_limits<double>::infinity();
        const double zm1 = static_cast<double>(z - 1);
        if (components_.size() == 1)
            return component_log_pmf(components_[0].component, zm1);
        double m = -std::numeric_limits<double>::infinity();
        std::vector<double> terms(components_.size());
        for (std::size_t i = 0; i < components_.size(); ++i) {
            terms[i] = std::log(components_[i].c) +
                       component_log_pmf(components_[i].component, zm1);
            m = std::max(m, terms[i]);
        }
        if (!std::isfinite(m)) return m;
        double acc = 0.0;
        for (double t : terms) acc += std::exp(t - m);
        return m + std::log(acc);
    }

    /// ln[S(z-1) - S(z)] for one component, via
    /// S(z-1) * (1 - exp(-nu * log1p(1/(b + z - 1)))).
    static double component_log_pmf(const LomaxComponent& comp, double z_minus_1) {
        const double log_surv_prev = -comp.nu * std::log1p(z_minus_1 / comp.b);
        const double step = comp.nu * std::log1p(1.0 / (comp.b + z_minus_1));
        return log_surv_prev + std::log(-std::expm1(-step));
    }

    /// i.i.d. draws from the discrete law: categorical component pick,
    /// inverse-CDF on the continuous Lomax, then ceiling clamped to >= 1.
    std::vector<std::uint64_t> sample(std::size_t n, std::uint64_t seed) const {
        if (n == 0) throw data_error("sample: n must be >= 1");
        detail::Xoshiro256pp rng(seed);
        std::vector<double> weights(components_.size());
        for (std::size_t i = 0; i < components_.size(); ++i) weights[i] = components_[i].c;
        std::vector<std::uint64_t> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& comp = components_[detail::categorical(rng, weights)].component;
            const double u = rng.u01();
            // x = b ((1-u)^(-1/nu) - 1)
            const double x = comp.b * std::expm1(-std::log1p(-u) / comp.nu);
            const double k = std::ceil(x);
            out[i] = k < 1.0 ? 1 : static_cast<std::uint64_t>(k);
        }
        return out;
    }

private:
    std::vector<WeightedComponent> components_;
};

}  // namespace semio::mixture
