#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "semio/error.hpp"

namespace semio::detail {

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> gk_nodes = {
    0.000000000000000000000000000000000e+00, 2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01, 5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01, 8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01, 9.914553711208126392068546975263285e-01};

inline constexpr std::array<double, 8> kronrod_weights = {
    2.094821410847278280129991748917143e-01, 2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01, 1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01, 1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02, 2.293532201052922496373200805896959e-02};

inline constexpr std::array<double, 4> gauss_weights = {
    4.179591836734693877551020408163265e-01, 3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01, 1.294849661688696932706114326790820e-01};

template <typename F>
struct GkEstimate {
    double integral;
    double error;
};

template <typename F>
GkEstimate<F> gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kronrod_weights[0] * fc;
    double gauss = gauss_weights[0] * fc;
    for (std::size_t j = 1; j < 8; ++j) {
        const double x = h * gk_nodes[j];
        const double fsum = f(c - x) + f(c + x);
        kron += kronrod_weights[j] * fsum;
        if (j % 2 == 0) gauss += gauss_weights[j / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    return {kron, std::fabs(kron - gauss)};
}

/// Adaptive Gauss–Kronrod integration of f over [a, b] by recursive
/// bisection. Throws numeric_error when the interval budget is exhausted
/// before the requested tolerance is met.
template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                 double abs_tol = 1e-300, int max_intervals = 2000) {
    struct Segment {
        double a, b, integral, error;
    };
    std::vector<Segment> segs;
    auto first = gk15(f, a, b);
    segs.push_back({a, b, first.integral, first.error});
    double total = first.integral, total_err = first.error;

    int splits = 0;
    while (total_err > std::max(abs_tol, rel_tol * std::fabs(total))) {
        if (++splits > max_intervals)
            throw numeric_error("quadrature failed to converge to tolerance");
        // split the segment with the largest error estimate
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        const Segment s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        if (!(mid > s.a && mid < s.b))
            throw numeric_error("quadrature interval collapsed before convergence");
        auto left = gk15(f, s.a, mid);
        auto right = gk15(f, mid, s.b);
        total += left.integral + right.integral - s.integral;
        total_err += left.error + right.error - s.error;
        segs[worst] = {s.a, mid, left.integral, left.error};
        segs.push_back({mid, s.b, right.integral, right.error});
    }
    return total;
}

}  // namespace semio::detail
