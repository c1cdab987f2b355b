#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "semio/error.hpp"

namespace semio::detail {

inline double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double variance(std::span<const double> v) {
    // population variance
    if (v.empty()) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

struct LinearFit {
    double r = 0.0;      // Pearson correlation
    double slope = 0.0;  // least-squares slope of y on x
    double intercept = 0.0;
};

/// Pearson correlation and least-squares line of y on x.
/// Throws data_error when fewer than 3 points or x is degenerate.
inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 3)
        throw data_error("linear_fit: need at least 3 paired points");
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0)
        throw data_error("linear_fit: degenerate input, all x identical");
    LinearFit out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    out.r = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 1.0;
    return out;
}

/// Kolmogorov–Smirnov distance between the sample and a model CDF.
/// `model_cdf_at_sorted` holds F(x_(i)) for the ascending-sorted sample.
inline double ks_distance(std::span<const double> model_cdf_at_sorted) {
    const std::size_t n = model_cdf_at_sorted.size();
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = model_cdf_at_sorted[i];
        const double hi = static_cast<double>(i + 1) / static_cast<double>(n) - f;
        const double lo = f - static_cast<double>(i) / static_cast<double>(n);
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

template <typename Cdf>
double ks_distance(std::vector<double> sample, Cdf&& cdf) {
    std::sort(sample.begin(), sample.end());
    std::vector<double> f(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) f[i] = cdf(sample[i]);
    return ks_distance(std::span<const double>(f));
}

}  // namespace semio::detail
