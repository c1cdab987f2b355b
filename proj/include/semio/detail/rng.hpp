#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <span>

namespace semio::detail {

/// SplitMix64 step; used for seeding and for deriving independent
/// substream seeds (e.g. one per replica).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derive a substream seed from (seed, stream index). Deterministic.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    return splitmix64(s);
}

/// xoshiro256++ generator. All randomness in the library flows through
/// this generator so that seeded runs are bit-reproducible everywhere.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        for (auto& w : state_) w = splitmix64(seed);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in (0, 1); never returns 0 or 1.
    double u01() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Lemire rejection-free-most-of-the-time bounded draw.
        std::uint64_t x = next();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = next();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> state_;
};

/// Standard normal sampler, Marsaglia–Tsang ziggurat with 128 layers.
/// The hot path is one 64-bit draw, one table compare and one multiply;
/// no transcendentals. Tables are built once at first use.
class ZigguratNormal {
public:
    ZigguratNormal() : t_(tables()) {}

    double operator()(Xoshiro256pp& g) const {
        const Tables& t = t_;
        for (;;) {
            // fast path: one draw, one compare, one multiply
            const std::uint64_t u = g.next();
            const unsigned layer = static_cast<unsigned>(u & 127);
            // signed 53-bit magnitude from the high bits (independent of layer bits)
            const std::int64_t h =
                static_cast<std::int64_t>(u >> 11) - (std::int64_t{1} << 52);
            const std::uint64_t habs = static_cast<std::uint64_t>(h < 0 ? -h : h);
            if (habs < t.kn[layer]) return static_cast<double>(h) * t.wn[layer];
            if (layer == 0) {
                // base strip: exponential-majorised tail beyond R
                double x, y;
                do {
                    x = -std::log(g.u01()) / kR;
                    y = -std::log(g.u01());
                } while (y + y < x * x);
                return h > 0 ? kR + x : -(kR + x);
            }
            const double x = static_cast<double>(h) * t.wn[layer];
            if (t.fn[layer] + g.u01() * (t.fn[layer - 1] - t.fn[layer]) <
                std::exp(-0.5 * x * x))
                return x;
        }
    }

private:
    static constexpr double kR = 3.442619855899;        // boundary of the base strip
    static constexpr double kV = 9.91256303526217e-3;   // area of each strip
    static constexpr double kM = 4503599627370496.0;    // 2^52

    struct Tables {
        std::array<std::uint64_t, 128> kn;
        std::array<double, 128> wn, fn;
    };

    Tables t_;  // by value: draws index a non-aliased local copy

    static const Tables& tables() {
        static const Tables t = [] {
            Tables tb{};
            double dn = kR, tn = kR;
            const double q = kV / std::exp(-0.5 * kR * kR);
            tb.kn[0] = static_cast<std::uint64_t>((kR / q) * kM);
            tb.kn[1] = 0;
            tb.wn[0] = q / kM;
            tb.wn[127] = kR / kM;
            tb.fn[0] = 1.0;
            tb.fn[127] = std::exp(-0.5 * kR * kR);
            for (int i = 126; i >= 1; --i) {
                dn = std::sqrt(-2.0 * std::log(kV / dn + std::exp(-0.5 * dn * dn)));
                tb.kn[i + 1] = static_cast<std::uint64_t>((dn / tn) * kM);
                tn = dn;
                tb.fn[i] = std::exp(-0.5 * dn * dn);
                tb.wn[i] = dn / kM;
            }
            return tb;
        }();
        return t;
    }
};

/// Polar Box–Muller normal draw. Slower than the ziggurat; kept as an
/// independent route for cross-checking the sampler in tests.
inline double normal_polar(Xoshiro256pp& g) {
    for (;;) {
        const double a = 2.0 * g.u01() - 1.0;
        const double b = 2.0 * g.u01() - 1.0;
        const double s = a * a + b * b;
        if (s > 0.0 && s < 1.0) return a * std::sqrt(-2.0 * std::log(s) / s);
    }
}

/// Categorical draw from non-negative weights summing to ~1.
inline std::size_t categorical(Xoshiro256pp& g, std::span<const double> weights) {
    const double u = g.u01();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    return weights.empty() ? 0 : weights.size() - 1;
}

}  // namespace semio::detail
