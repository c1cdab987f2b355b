#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "semio/corpus/counts.hpp"
#include "semio/mixture/chi_square.hpp"
#include "semio/mixture/fit.hpp"
#include "semio/mixture/loglog.hpp"
#include "semio/mixture/select.hpp"
#include "test_support.hpp"

using namespace semio;
using mixture::LomaxMixture;

namespace {

corpus::FrequencySpectrum draws_to_spectrum(const LomaxMixture& m, std::size_t n,
                                            std::uint64_t seed) {
    return corpus::spectrum_of_draws(m.sample(n, seed));
}

}  // namespace

TEST_CASE("chi-square is zero when observed equals expected", "[chi2]") {
    // Lomax(b=1, nu=1): pmf(z) = 1/(z(z+1)); with 60 types the greedy cells
    // are [1,1] E=30, [2,2] E=10, [3,3] E=5, tail E=15 -- all integers.
    const LomaxMixture m(1.0, 1.0);
    corpus::FrequencySpectrum s;
    s.entries[1] = 30;
    s.entries[2] = 10;
    s.entries[3] = 5;
    s.entries[4] = 15;
    const auto res = mixture::chi_square(m, s);
    REQUIRE(res.bins.size() == 4);
    REQUIRE(res.chi_square == Catch::Approx(0.0).margin(1e-9));
    REQUIRE(res.degrees_of_freedom == 1);
}

TEST_CASE("chi-square cells cover all probability mass", "[chi2]") {
    const LomaxMixture m({{0.45, {1.0, 1.2}}, {0.55, {20.0, 3.0}}});
    const auto s = draws_to_spectrum(m, 30000, 5);
    const auto res = mixture::chi_square(m, s);
    double etotal = 0.0, ototal = 0.0;
    for (const auto& b : res.bins) {
        etotal += b.expected;
        ototal += b.observed;
    }
    REQUIRE(etotal == Catch::Approx(static_cast<double>(s.total_types())).margin(1e-6));
    REQUIRE(ototal == Catch::Approx(static_cast<double>(s.total_types())).margin(1e-9));
    REQUIRE(res.bins.back().hi == 0);  // open tail
}

TEST_CASE("chi-square refuses spectra with too few cells", "[chi2]") {
    const LomaxMixture m({{0.5, {1.0, 1.0}}, {0.5, {30.0, 2.0}}});
    corpus::FrequencySpectrum s;
    s.entries[1] = 50;
    s.entries[2] = 12;  // far fewer cells than free params + 2
    REQUIRE_THROWS_AS(mixture::chi_square(m, s), data_error);
}

TEST_CASE("chi-square at true parameters is calibrated", "[chi2][statistical]") {
    const LomaxMixture m(2.0, 1.5);
    int ok = 0;
    const int seeds = 50;
    for (int seed = 0; seed < seeds; ++seed) {
        const auto s = draws_to_spectrum(m, 100000, 1000 + seed);
        const auto res = mixture::chi_square(m, s);
        const double q99 =
            test_support::chi2_quantile(static_cast<double>(res.degrees_of_freedom), 0.99);
        if (res.chi_square < q99) ++ok;
    }
    REQUIRE(ok >= 45);  // >= 90% of 50 seeds
}

TEST_CASE("EM log-likelihood is non-decreasing", "[fit]") {
    const LomaxMixture gen({{0.45, {1.0, 1.2}}, {0.55, {20.0, 3.0}}});
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto s = draws_to_spectrum(gen, 20000, seed);
        mixture::FitOptions opts;
        opts.restarts = 1;
        opts.seed = seed;
        const auto report = mixture::fit(s, 2, opts);
        REQUIRE(report.em_trace.size() >= 2);
        for (std::size_t i = 1; i < report.em_trace.size(); ++i)
            REQUIRE(report.em_trace[i] >=
                    report.em_trace[i - 1] - 1e-9 * std::fabs(report.em_trace[i - 1]));
    }
}

TEST_CASE("single-component parameters are recovered", "[fit]") {
    const LomaxMixture gen(2.0, 1.5);
    const auto s = draws_to_spectrum(gen, 100000, 17);
    mixture::FitOptions opts;
    opts.restarts = 2;
    opts.seed = 4;
    const auto report = mixture::fit(s, 1, opts);
    const auto& c = report.mixture.components().front();
    REQUIRE(c.component.b == Catch::Approx(2.0).epsilon(0.10));
    REQUIRE(c.component.nu == Catch::Approx(1.5).epsilon(0.10));
}

TEST_CASE("two-component parameters are recovered", "[fit]") {
    const LomaxMixture gen({{0.45, {1.0, 1.2}}, {0.55, {20.0, 3.0}}});
    const auto s = draws_to_spectrum(gen, 100000, 23);
    mixture::FitOptions opts;
    opts.restarts = 3;
    opts.seed = 9;
    const auto report = mixture::fit(s, 2, opts);
    const auto& comps = report.mixture.components();
    REQUIRE(comps.size() == 2);
    REQUIRE(std::fabs(comps[0].c - 0.45) < 0.05);
    REQUIRE(comps[0].component.b == Catch::Approx(1.0).epsilon(0.15));
    REQUIRE(comps[0].component.nu == Catch::Approx(1.2).epsilon(0.15));
    REQUIRE(std::fabs(comps[1].c - 0.55) < 0.05);
    REQUIRE(comps[1].component.b == Catch::Approx(20.0).epsilon(0.15));
    REQUIRE(comps[1].component.nu == Catch::Approx(3.0).epsilon(0.15));
}

TEST_CASE("fit is deterministic given seed and restarts", "[fit]") {
    const LomaxMixture gen(3.0, 2.0);
    const auto s = draws_to_spectrum(gen, 20000, 3);
    mixture::FitOptions opts;
    opts.restarts = 2;
    opts.seed = 77;
    const auto a = mixture::fit(s, 1, opts);
    const auto b = mixture::fit(s, 1, opts);
    REQUIRE(a.mixture == b.mixture);
    REQUIRE(a.log_likelihood == b.log_likelihood);
}

TEST_CASE("fit preconditions", "[fit]") {
    corpus::FrequencySpectrum tiny;
    tiny.entries[1] = 5;
    tiny.entries[2] = 3;
    REQUIRE_THROWS_AS(mixture::fit(tiny, 1, {}), data_error);

    corpus::FrequencySpectrum five;
    for (std::uint64_t z = 1; z <= 5; ++z) five.entries[z] = 10;
    REQUIRE_THROWS_AS(mixture::fit(five, 2, {}), data_error);
}

TEST_CASE("model selection prefers the generating order", "[select][statistical]") {
    mixture::FitOptions opts;
    opts.restarts = 2;
    opts.seed = 5;

    const LomaxMixture one(2.0, 1.5);
    for (const std::uint64_t seed : {99ULL, 7ULL}) {  // 7 once tripped the knee on noise
        const auto s1 = draws_to_spectrum(one, 100000, seed);
        const auto sel1 = mixture::select_model(s1, 3, opts);
        REQUIRE(sel1.chosen_M == 1);
    }

    const LomaxMixture two({{0.45, {1.0, 1.2}}, {0.55, {20.0, 3.0}}});
    const auto s2 = draws_to_spectrum(two, 100000, 123);
    const auto sel2 = mixture::select_model(s2, 3, opts);
    REQUIRE(sel2.chosen_M == 2);
    REQUIRE(sel2.candidates.size() == 3);
    for (const auto& c : sel2.candidates) REQUIRE(c.report.has_value());
}

TEST_CASE("model selection with a single order is trivial", "[select]") {
    const LomaxMixture gen(2.0, 1.5);
    const auto s = draws_to_spectrum(gen, 20000, 3);
    const auto sel = mixture::select_model(s, 1, {});
    REQUIRE(sel.chosen_M == 1);
    REQUIRE(sel.candidates.size() == 1);
    REQUIRE_NOTHROW(sel.chosen());
}

TEST_CASE("raw log-log diagnostic is exact on model-born points", "[loglog]") {
    // n(z) = round(V p(z)) with V = 1e12 keeps the rounding error ~1e-10
    const LomaxMixture m(1.0, 1.0);
    corpus::FrequencySpectrum s;
    const double V = 1e12;
    for (std::uint64_t z = 1; z <= 40; ++z)
        s.entries[z] = static_cast<std::uint64_t>(std::llround(V * m.discrete_pmf(z)));
    const auto diag = mixture::loglog_diagnostics(m, s);
    REQUIRE(diag.r == Catch::Approx(1.0).margin(1e-9));
    REQUIRE(diag.slope == Catch::Approx(1.0).margin(1e-6));
    REQUIRE(diag.points.size() == 40);
}

TEST_CASE("log-log diagnostics reject degenerate spectra", "[loglog]") {
    const LomaxMixture m(1.0, 1.0);
    corpus::FrequencySpectrum flat;  // identical n(z): no spread in observed
    flat.entries[2] = 3;
    flat.entries[9] = 3;
    flat.entries[40] = 3;
    REQUIRE_THROWS_AS(mixture::loglog_diagnostics(m, flat), data_error);

    corpus::FrequencySpectrum two;
    two.entries[1] = 8;
    two.entries[2] = 4;
    REQUIRE_THROWS_AS(mixture::loglog_diagnostics(m, two), data_error);
}

TEST_CASE("histogram diagnostic is near-perfect on the model's own data", "[loglog]") {
    const LomaxMixture m({{0.45, {1.0, 1.2}}, {0.55, {20.0, 3.0}}});
    const auto s = draws_to_spectrum(m, 100000, 555);
    const auto diag = mixture::histogram_diagnostics(m, s);
    REQUIRE(diag.r > 0.99);
    REQUIRE(diag.slope == Catch::Approx(1.0).margin(0.1));
}
