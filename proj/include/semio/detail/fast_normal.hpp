#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

#include "semio/detail/rng.hpp"

namespace semio::detail {

// Block Box-Muller sampler over 8 interleaved xoshiro256++ streams.
// Every stage is a flat loop of straight-line float arithmetic (polynomial
// log/sin/cos, Newton-refined reciprocal square root), so the transforms
// vectorize at -O3 without fast-math. Accuracy is ~1e-6 relative, far below
// what any statistical use of the noise can resolve; the ziggurat sampler
// remains the scalar reference the tests compare against.
class NormalBlockSampler {
public:
    explicit NormalBlockSampler(std::uint64_t seed) {
        for (int lane = 0; lane < 8; ++lane) {
            std::uint64_t s = derive_seed(seed, 0xb10cULL * 8 + static_cast<std::uint64_t>(lane));
            for (int w = 0; w < 4; ++w) state_[w][lane] = splitmix64(s);
        }
    }

    /// Fills out[0..n) with i.i.d. standard normals; n must be even.
    void fill(float* out, std::size_t n) {
        const std::size_t half = n / 2;
        const std::size_t padded = (half + 7) & ~std::size_t{7};
        rad_.resize(padded);
        ang_.resize(padded);
        fill_uniforms(rad_.data(), ang_.data(), padded);

        float* __restrict__ rad = rad_.data();
        float* __restrict__ ang = ang_.data();
        for (std::size_t k = 0; k < padded; ++k)
            rad[k] = sqrt_pos(-2.0f * log_unit(rad[k]));

        float* __restrict__ o = out;
        for (std::size_t k = 0; k < half; ++k) {
            const float v = ang[k] - 0.5f;  // [-0.5, 0.5)
            const float u = v * v;
            float p = 3.258205569e+00f;
            p = p * u - 1.491392026e+01f;
            p = p * u + 4.202960228e+01f;
            p = p * u - 7.670345396e+01f;
            p = p * u + 8.160515479e+01f;
            p = p * u - 4.134170086e+01f;
            p = p * u + 6.283185304e+00f;
            o[k] = rad[k] * (v * p);  // sin(2 pi v)
        }
        for (std::size_t k = 0; k < half; ++k) {
            const float v = ang[k] - 0.5f;
            const float u = v * v;
            float q = -1.460958267e+00f;
            q = q * u + 7.806616516e+00f;
            q = q * u - 2.640676353e+01f;
            q = q * u + 6.024246507e+01f;
            q = q * u - 8.545668541e+01f;
            q = q * u + 6.493939011e+01f;
            q = q * u - 1.973920876e+01f;
            q = q * u + 9.999999999e-01f;
            o[half + k] = rad[k] * q;  // cos(2 pi v)
        }
    }

private:
    // one 64-bit draw feeds both uniforms of a Box-Muller pair (24-bit each)
    void fill_uniforms(float* __restrict__ u1, float* __restrict__ u2, std::size_t padded) {
        std::uint64_t s0[8], s1[8], s2[8], s3[8];
        for (int l = 0; l < 8; ++l) {
            s0[l] = state_[0][l];
            s1[l] = state_[1][l];
            s2[l] = state_[2][l];
            s3[l] = state_[3][l];
        }
        for (std::size_t i = 0; i < padded; i += 8) {
            for (int l = 0; l < 8; ++l) {
                const std::uint64_t r = rotl(s0[l] + s3[l], 23) + s0[l];
                const std::uint64_t t = s1[l] << 17;
                s2[l] ^= s0[l];
                s3[l] ^= s1[l];
                s1[l] ^= s2[l];
                s0[l] ^= s3[l];
                s2[l] ^= t;
                s3[l] = rotl(s3[l], 45);
                u1[i + l] = (static_cast<float>(static_cast<std::uint32_t>(r >> 40)) + 0.5f) *
                            (1.0f / 16777216.0f);
                u2[i + l] =
                    (static_cast<float>(static_cast<std::uint32_t>((r >> 8) & 0xffffff)) + 0.5f) *
                    (1.0f / 16777216.0f);
            }
        }
        for (int l = 0; l < 8; ++l) {
            state_[0][l] = s0[l];
            state_[1][l] = s1[l];
            state_[2][l] = s2[l];
            state_[3][l] = s3[l];
        }
    }

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    // natural log for normal positive floats, branch-free: biasing the
    // exponent split keeps the mantissa in [2/3, 4/3)
    static float log_unit(float x) {
        const std::int32_t bits = std::bit_cast<std::int32_t>(x);
        const std::int32_t e = (bits - 0x3f2aaaab) >> 23;
        const float m = std::bit_cast<float>(bits - (e << 23));  // [2/3, 4/3)
        const float t = m - 1.0f;                                // [-1/3, 1/3)
        float p = -1.256890474e-1f;
        p = p * t + 1.358029324e-1f;
        p = p * t - 1.225268658e-1f;
        p = p * t + 1.408456397e-1f;
        p = p * t - 1.667606245e-1f;
        p = p * t + 2.000586532e-1f;
        p = p * t - 2.499987768e-1f;
        p = p * t + 3.333328827e-1f;
        p = p * t - 5.000000025e-1f;
        return t + t * t * p + static_cast<float>(e) * 0.69314718056f;
    }

    // sqrt of a positive float: reciprocal-sqrt seed + three Newton steps
    static float sqrt_pos(float x) {
        const std::int32_t i = 0x5f3759df - (std::bit_cast<std::int32_t>(x) >> 1);
        float y = std::bit_cast<float>(i);
        y = y * (1.5f - 0.5f * x * y * y);
        y = y * (1.5f - 0.5f * x * y * y);
        y = y * (1.5f - 0.5f * x * y * y);
        return x * y;
    }

    std::uint64_t state_[4][8];
    std::vector<float> rad_, ang_;
};

}  // namespace semio::detail
