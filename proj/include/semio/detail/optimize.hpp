#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace semio::detail {

struct NelderMeadResult {
    std::array<double, 2> x{};
    double value = 0.0;
    int evaluations = 0;
};

/// Two-dimensional Nelder–Mead with box clamping. The best point seen is
/// returned, so the result is never worse than the starting point; callers
/// relying on monotone improvement (generalized EM) depend on that.
template <typename F>
NelderMeadResult nelder_mead_2d(F&& f, std::array<double, 2> start,
                                std::array<double, 2> lo, std::array<double, 2> hi,
                                int max_evals = 80, double step = 0.25) {
    using Point = std::array<double, 2>;
    auto clamp = [&](Point p) {
        p[0] = std::clamp(p[0], lo[0], hi[0]);
        p[1] = std::clamp(p[1], lo[1], hi[1]);
        return p;
    };
    int evals = 0;
    auto eval = [&](const Point& p) {
        ++evals;
        return f(p);
    };

    std::array<Point, 3> v;
    std::array<double, 3> fv;
    v[0] = clamp(start);
    v[1] = clamp({start[0] + step, start[1]});
    v[2] = clamp({start[0], start[1] + step});
    for (int i = 0; i < 3; ++i) fv[i] = eval(v[i]);

    Point best = v[0];
    double fbest = fv[0];
    auto note_best = [&](const Point& p, double fp) {
        if (fp < fbest) {
            fbest = fp;
            best = p;
        }
    };
    for (int i = 0; i < 3; ++i) note_best(v[i], fv[i]);

    while (evals < max_evals) {
        // order ascending by value
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const Point &b = v[idx[0]], &m = v[idx[1]];
        Point& w = v[idx[2]];
        double& fw = fv[idx[2]];

        const Point centroid{(b[0] + m[0]) / 2, (b[1] + m[1]) / 2};
        auto along = [&](double t) {
            return clamp({centroid[0] + t * (centroid[0] - w[0]),
                          centroid[1] + t * (centroid[1] - w[1])});
        };

        const Point refl = along(1.0);
        const double frefl = eval(refl);
        note_best(refl, frefl);
        if (frefl < fv[idx[0]]) {
            const Point exp_ = along(2.0);
            const double fexp = eval(exp_);
            note_best(exp_, fexp);
            if (fexp < frefl) {
                w = exp_;
                fw = fexp;
            } else {
                w = refl;
                fw = frefl;
            }
        } else if (frefl < fv[idx[1]]) {
            w = refl;
            fw = frefl;
        } else {
            const Point contr = along(frefl < fw ? 0.5 : -0.5);
            const double fcontr = eval(contr);
            note_best(contr, fcontr);
            if (fcontr < std::min(frefl, fw)) {
                w = contr;
                fw = fcontr;
            } else {
                // shrink toward the best vertex
                for (int i : {idx[1], idx[2]}) {
                    v[i] = clamp({b[0] + 0.5 * (v[i][0] - b[0]), b[1] + 0.5 * (v[i][1] - b[1])});
                    fv[i] = eval(v[i]);
                    note_best(v[i], fv[i]);
                    if (evals >= max_evals) break;
                }
            }
        }
        // converged simplex
        const double spread = std::max({std::fabs(v[0][0] - v[1][0]), std::fabs(v[0][0] - v[2][0]),
                                        std::fabs(v[0][1] - v[1][1]), std::fabs(v[0][1] - v[2][1])});
        if (spread < 1e-10) break;
    }
    return {best, fbest, evals};
}

}  // namespace semio::detail
