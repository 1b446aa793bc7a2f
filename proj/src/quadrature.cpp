#include "shellspec/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shellspec {

Rule1D gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton on P_n with the Tricomi-style initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

Rule1D gauss_legendre(int n, double a, double b)
{
    Rule1D rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), scale = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + scale * rule.nodes[i];
        rule.weights[i] *= scale;
    }
    return rule;
}

Rule1D periodic_trapezoid(int n, double period)
{
    if (n < 1) throw std::invalid_argument("periodic_trapezoid: n must be positive");
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.assign(n, period / n);
    for (int i = 0; i < n; ++i) rule.nodes[i] = period * i / n;
    return rule;
}

Rule1D polar_gauss(int n)
{
    Rule1D base = gauss_legendre(n);
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // acos reverses order; re-sort to increasing theta.
    for (int i = 0; i < n; ++i) {
        const double theta = std::acos(base.nodes[n - 1 - i]);
        rule.nodes[i] = theta;
        rule.weights[i] = base.weights[n - 1 - i] / std::sin(theta);
    }
    return rule;
}

} // namespace shellspec
