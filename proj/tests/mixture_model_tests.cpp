#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <vector>

#include "semio/corpus/counts.hpp"
#include "semio/detail/quadrature.hpp"
#include "semio/detail/rng.hpp"
#include "semio/detail/stats.hpp"
#include "semio/mixture/gamma_oracle.hpp"
#include "semio/mixture/likelihood.hpp"
#include "semio/mixture/model.hpp"

using namespace semio;
using mixture::LomaxMixture;

TEST_CASE("density at zero equals sum of c nu / b", "[mixture]") {
    REQUIRE(LomaxMixture(1.0, 1.0).pdf(0.0) == Catch::Approx(1.0).epsilon(1e-12));
    const LomaxMixture two({{0.5, {1.0, 1.0}}, {0.5, {2.0, 2.0}}});
    REQUIRE(two.pdf(0.0) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("large-shape density approaches the exponential law", "[mixture]") {
    // b = nu / lambda with lambda = 1
    const LomaxMixture m(1000.0, 1000.0);
    REQUIRE(m.pdf(1.0) == Catch::Approx(std::exp(-1.0)).epsilon(0.002));
}

TEST_CASE("cdf spot values verified against quadrature of the density", "[mixture]") {
    const LomaxMixture m1(1.0, 1.0);
    const double q1 = detail::integrate([&](double z) { return m1.pdf(z); }, 0.0, 1.0);
    REQUIRE(q1 == Catch::Approx(0.5).epsilon(1e-9));
    REQUIRE(m1.cdf(1.0) == Catch::Approx(q1).epsilon(1e-9));

    const LomaxMixture m2(1.0, 2.0);
    const double q2 = detail::integrate([&](double z) { return m2.pdf(z); }, 0.0, 1.0);
    REQUIRE(q2 == Catch::Approx(0.75).epsilon(1e-9));
    REQUIRE(m2.cdf(1.0) == Catch::Approx(q2).epsilon(1e-9));

    REQUIRE(m1.cdf(0.0) == 0.0);
    REQUIRE(m2.cdf(0.0) == 0.0);
}

TEST_CASE("density integrates to one: quadrature head plus closed-form tail", "[mixture]") {
    detail::Xoshiro256pp g(42);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t M = 1 + g.below(3);
        std::vector<mixture::WeightedComponent> comps(M);
        double sum = 0.0;
        for (auto& wc : comps) {
            wc.c = 0.1 + g.u01();
            wc.component.b = std::exp(4.0 * (g.u01() - 0.5));
            wc.component.nu = std::exp(3.0 * (g.u01() - 0.5));
            sum += wc.c;
        }
        for (auto& wc : comps) wc.c /= sum;
        // exact renormalisation to satisfy the 1e-12 weight invariant
        double s2 = 0.0;
        for (auto& wc : comps) s2 += wc.c;
        comps[0].c += 1.0 - s2;
        const LomaxMixture m(comps);

        const double Z = 50.0;
        const double head = detail::integrate([&](double z) { return m.pdf(z); }, 0.0, Z, 1e-11);
        REQUIRE(head + m.survival(Z) == Catch::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("discrete adaptation: spot values and telescoping", "[mixture]") {
    const LomaxMixture m(1.0, 1.0);
    REQUIRE(m.discrete_pmf(1) == Catch::Approx(m.cdf(1.0) - m.cdf(0.0)).epsilon(1e-12));
    REQUIRE(m.discrete_pmf(1) == Catch::Approx(0.5).epsilon(1e-12));
    REQUIRE(m.discrete_pmf(2) == Catch::Approx(1.0 / 6.0).epsilon(1e-12));

    // partial sums reach 1 - survival(Z) exactly by telescoping
    double acc = 0.0;
    for (std::uint64_t z = 1; z <= 1000; ++z) acc += m.discrete_pmf(z);
    REQUIRE(acc == Catch::Approx(1.0 - m.survival(1000.0)).epsilon(1e-9));
    REQUIRE(acc == Catch::Approx(m.cdf(1000.0)).epsilon(1e-9));
}

TEST_CASE("deep-tail log pmf stays finite and consistent", "[mixture]") {
    const LomaxMixture m({{0.45, {1.0, 1.2}}, {0.55, {20.0, 3.0}}});
    for (std::uint64_t z : {std::uint64_t{100}, std::uint64_t{10000}, std::uint64_t{100000000}}) {
        const double lp = m.log_discrete_pmf(z);
        REQUIRE(std::isfinite(lp));
        // difference route, valid while the survival subtraction has headroom
        const double direct = m.survival(static_cast<double>(z - 1)) - m.survival(static_cast<double>(z));
        if (direct > 0.0) REQUIRE(lp == Catch::Approx(std::log(direct)).margin(1e-6));
    }
}

TEST_CASE("gamma-mixed exponential equals the closed form", "[mixture][oracle]") {
    REQUIRE(mixture::gamma_mixed_exponential_pdf(1.0, 1.0, 0.0) ==
            Catch::Approx(1.0).margin(1e-8));
    // nu=2, b=3, z=1 -> 2 * 9 / 64
    REQUIRE(mixture::gamma_mixed_exponential_pdf(2.0, 3.0, 1.0) ==
            Catch::Approx(0.28125).margin(1e-6));
    const double closed = LomaxMixture(1.0, 0.5).pdf(10.0);
    REQUIRE(mixture::gamma_mixed_exponential_pdf(0.5, 1.0, 10.0) ==
            Catch::Approx(closed).margin(1e-6));
}

TEST_CASE("gamma oracle rejects invalid parameters", "[mixture][oracle]") {
    REQUIRE_THROWS_AS(mixture::gamma_mixed_exponential_pdf(-1.0, 1.0, 0.0), data_error);
    REQUIRE_THROWS_AS(mixture::gamma_mixed_exponential_pdf(1.0, 0.0, 0.0), data_error);
}

TEST_CASE("log likelihood spot values", "[mixture]") {
    const LomaxMixture m(1.0, 1.0);
    corpus::FrequencySpectrum one;
    one.entries[1] = 1;
    REQUIRE(mixture::log_likelihood(m, one) == Catch::Approx(std::log(0.5)).epsilon(1e-12));

    corpus::FrequencySpectrum s;
    s.entries[1] = 2;
    s.entries[2] = 1;
    REQUIRE(mixture::log_likelihood(m, s) ==
            Catch::Approx(2.0 * std::log(0.5) + std::log(1.0 / 6.0)).epsilon(1e-12));

    // doubling every n(z) doubles the log-likelihood
    corpus::FrequencySpectrum d;
    d.entries[1] = 4;
    d.entries[2] = 2;
    REQUIRE(mixture::log_likelihood(m, d) ==
            Catch::Approx(2.0 * mixture::log_likelihood(m, s)).epsilon(1e-12));
}

TEST_CASE("sampling matches the discrete law", "[mixture][sample]") {
    const LomaxMixture m({{0.6, {2.0, 1.5}}, {0.4, {15.0, 2.5}}});
    const auto draws = m.sample(100000, 31);
    REQUIRE(draws.size() == 100000);
    for (auto z : draws) REQUIRE(z >= 1);

    // discrete KS: compare empirical and model CDFs at the support atoms
    std::map<std::uint64_t, std::uint64_t> tally;
    for (auto z : draws) ++tally[z];
    double cum = 0.0, ks = 0.0;
    for (const auto& [z, cnt] : tally) {
        cum += static_cast<double>(cnt) / static_cast<double>(draws.size());
        ks = std::max(ks, std::fabs(cum - m.cdf(static_cast<double>(z))));
    }
    REQUIRE(ks < 0.01);

    REQUIRE(m.sample(1000, 7) == m.sample(1000, 7));
    REQUIRE(m.sample(1000, 7) != m.sample(1000, 8));
    REQUIRE_THROWS_AS(m.sample(0, 1), data_error);
}

TEST_CASE("component permutations compare equal after canonical ordering", "[mixture]") {
    const LomaxMixture a({{0.3, {5.0, 2.0}}, {0.7, {1.0, 1.0}}});
    const LomaxMixture b({{0.7, {1.0, 1.0}}, {0.3, {5.0, 2.0}}});
    REQUIRE(a == b);
    REQUIRE(a.components().front().component.b == 1.0);
}

TEST_CASE("mixture construction validates its invariants", "[mixture]") {
    REQUIRE_THROWS_AS(LomaxMixture({{0.5, {1.0, 1.0}}, {0.6, {2.0, 1.0}}}), data_error);
    REQUIRE_THROWS_AS(LomaxMixture(std::vector<mixture::WeightedComponent>{{1.0, {-1.0, 1.0}}}),
                      data_error);
    REQUIRE_THROWS_AS(LomaxMixture(std::vector<mixture::WeightedComponent>{}), data_error);
}
