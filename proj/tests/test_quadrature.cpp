#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shellspec/optim.hpp"
#include "shellspec/quadrature.hpp"

using namespace shellspec;

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly")
{
    for (int n : {2, 5, 12, 40}) {
        const Rule1D rule = gauss_legendre(n);
        const int degree = 2 * n - 1;
        double sum = 0;
        for (int i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], degree - 1);
        // even power: exact value 2/(degree)
        CHECK(sum == doctest::Approx(2.0 / degree).epsilon(1e-13));
        double total = 0;
        for (double w : rule.weights) total += w;
        CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("periodic trapezoid kills low trigonometric modes")
{
    const Rule1D rule = periodic_trapezoid(16, 2 * std::numbers::pi);
    for (int k = 1; k < 8; ++k) {
        double s = 0, c = 0;
        for (int i = 0; i < 16; ++i) {
            s += rule.weights[i] * std::sin(k * rule.nodes[i]);
            c += rule.weights[i] * std::cos(k * rule.nodes[i]);
        }
        CHECK(std::abs(s) <= 1e-13);
        CHECK(std::abs(c) <= 1e-13);
    }
}

TEST_CASE("polar rule: interior nodes, exact area weight")
{
    const Rule1D rule = polar_gauss(16);
    double area = 0;
    for (int i = 0; i < 16; ++i) {
        CHECK(rule.nodes[i] > 0.0);
        CHECK(rule.nodes[i] < std::numbers::pi);
        if (i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        area += rule.weights[i] * std::sin(rule.nodes[i]);
    }
    CHECK(area == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("golden section on a shifted parabola")
{
    const auto [x, f] = golden_section_min([](double t) { return (t - 2.0) * (t - 2.0) + 1.0; },
                                           -5.0, 7.0);
    CHECK(x == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(f == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nelder-mead on an anisotropic quadratic")
{
    auto f = [](const std::array<double, 2>& x) {
        const double a = x[0] - 1.0, b = x[1] + 2.0;
        return 3.0 * a * a + 0.5 * b * b + a * b + 4.0;
    };
    const auto [arg, val] = nelder_mead_2d(f, {0.0, 0.0}, 0.7, 1e-12, 2000);
    // stationary point of 3a^2 + b^2/2 + ab: a = b = 0
    CHECK(arg[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(arg[1] == doctest::Approx(-2.0).epsilon(1e-4));
    CHECK(val == doctest::Approx(4.0).epsilon(1e-9));
}
