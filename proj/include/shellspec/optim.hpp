#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <utility>

namespace shellspec {

/// Golden-section minimization on [a, b]. Returns (argmin, min).
template <typename Fn>
std::pair<double, double> golden_section_min(Fn f, double a, double b, double tol = 1e-12)
{
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol * (std::abs(x1) + std::abs(x2) + 1.0)) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

/// Nelder-Mead on R^2. Convergence: simplex value spread below
/// tol * max(1, |best|). Returns (argmin, min).
template <typename Fn>
std::pair<std::array<double, 2>, double>
nelder_mead_2d(Fn f, std::array<double, 2> start, double scale, double tol = 1e-10,
               int max_iter = 600)
{
    using P = std::array<double, 2>;
    std::array<P, 3> xs{P{start[0], start[1]},
                        P{start[0] + scale, start[1]},
                        P{start[0], start[1] + scale}};
    std::array<double, 3> fs{f(xs[0]), f(xs[1]), f(xs[2])};

    auto order = [&] {
        if (fs[0] > fs[1]) { std::swap(fs[0], fs[1]); std::swap(xs[0], xs[1]); }
        if (fs[1] > fs[2]) { std::swap(fs[1], fs[2]); std::swap(xs[1], xs[2]); }
        if (fs[0] > fs[1]) { std::swap(fs[0], fs[1]); std::swap(xs[0], xs[1]); }
    };
    auto lerp = [](const P& a, const P& b, double t) {
        return P{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
    };

    for (int it = 0; it < max_iter; ++it) {
        order();
        if (fs[2] - fs[0] <= tol * std::max(1.0, std::abs(fs[0]))) break;
        const P mid{0.5 * (xs[0][0] + xs[1][0]), 0.5 * (xs[0][1] + xs[1][1])};
        const P refl = lerp(xs[2], mid, 2.0);
        const double fr = f(refl);
        if (fr < fs[0]) {
            const P exp_ = lerp(xs[2], mid, 3.0);
            const double fe = f(exp_);
            if (fe < fr) { xs[2] = exp_; fs[2] = fe; }
            else         { xs[2] = refl; fs[2] = fr; }
        } else if (fr < fs[1]) {
            xs[2] = refl;
            fs[2] = fr;
        } else {
            const P con = lerp(xs[2], mid, 0.5);
            const double fc = f(con);
            if (fc < fs[2]) { xs[2] = con; fs[2] = fc; }
            else {
                // shrink toward the best vertex
                for (int k = 1; k < 3; ++k) {
                    xs[k] = lerp(xs[0], xs[k], 0.5);
                    fs[k] = f(xs[k]);
                }
            }
        }
    }
    order();
    return {xs[0], fs[0]};
}

} // namespace shellspec
