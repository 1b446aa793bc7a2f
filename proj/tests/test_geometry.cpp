#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "shellspec/errors.hpp"
#include "shellspec/geometry.hpp"
#include "shellspec/surface_grid.hpp"

using namespace shellspec;

namespace {
constexpr double pi = std::numbers::pi;

std::shared_ptr<const Chart> sphere(double r = 1.0)
{
    return std::make_shared<SphereChart>(r);
}
std::shared_ptr<const Chart> torus(double R, double r)
{
    return std::make_shared<TorusChart>(R, r);
}
std::shared_ptr<const Chart> ellipsoid(double a, double b, double c)
{
    return std::make_shared<EllipsoidChart>(a, b, c);
}

// finite-difference shape operator: project -d(nu) onto the tangent basis
// and compare curvatures with the analytic route
std::pair<double, double> fd_curvatures(const Chart& chart, double u, double v)
{
    const double h = 1e-5;
    auto normal = [&chart](double uu, double vv) {
        const ChartJet j = chart.jet(uu, vv);
        return Vec3(chart.orientation() * j.du.cross(j.dv).normalized());
    };
    const ChartJet j = chart.jet(u, v);
    const Vec3 nu_u = (normal(u + h, v) - normal(u - h, v)) / (2 * h);
    const Vec3 nu_v = (normal(u, v + h) - normal(u, v - h)) / (2 * h);
    Eigen::Matrix2d g;
    g << j.du.dot(j.du), j.du.dot(j.dv), j.du.dot(j.dv), j.dv.dot(j.dv);
    Eigen::Matrix2d rhs;
    rhs << -nu_u.dot(j.du), -nu_v.dot(j.du), -nu_u.dot(j.dv), -nu_v.dot(j.dv);
    const Eigen::Matrix2d shape = g.inverse() * rhs;  // -d(nu) in (du, dv)
    const double tr = shape.trace(), det = shape.determinant();
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    return {0.5 * tr - disc, 0.5 * tr + disc};
}

std::mt19937_64 rng(314159);
} // namespace

TEST_CASE("grid areas: sphere Gauss rule and torus trapezoid")
{
    const SurfaceGrid gs = build_grid(sphere(), 16, 32);
    CHECK(std::abs(surface_area(gs) - 4 * pi) <= 1e-8);

    const SurfaceGrid gt = build_grid(torus(2.0, 1.0), 32, 32);
    CHECK(std::abs(surface_area(gt) - 8 * pi * pi) <= 1e-10);
}

TEST_CASE("grid preconditions")
{
    CHECK_THROWS_AS(TorusChart(1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(build_grid(sphere(), 4, 32), ValidationError);
    CHECK_THROWS_AS(build_grid(sphere(), 16, 31), ValidationError);  // polar needs even n_v
    CHECK_NOTHROW(build_grid(torus(2.0, 1.0), 8, 9));
}

TEST_CASE("curvatures: sphere is umbilic with kappa = -1")
{
    for (int t = 0; t < 10; ++t) {
        std::uniform_real_distribution<double> uu(0.2, pi - 0.2), vv(0.0, 2 * pi);
        const auto pc = principal_curvatures(*sphere(), uu(rng), vv(rng));
        CHECK(pc.kappa1 == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK(pc.kappa2 == doctest::Approx(-1.0).epsilon(1e-10));
    }
}

TEST_CASE("curvatures: torus inner equator")
{
    const auto pc = principal_curvatures(*torus(2.0, 1.0), pi, 0.7);
    CHECK(pc.kappa1 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pc.kappa2 == doctest::Approx(1.0).epsilon(1e-12));  // 1/(R-r)
    CHECK(std::abs(pc.kappa2 - pc.kappa1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("curvatures: ellipsoid axis point against the closed form")
{
    const double a = 1.0, b = 1.2, c = 0.7;
    // point (a, 0, 0) is u = pi/2, v = 0; magnitudes a/b^2 and a/c^2
    const auto pc = principal_curvatures(*ellipsoid(a, b, c), pi / 2, 0.0);
    const double k1 = std::abs(pc.kappa1), k2 = std::abs(pc.kappa2);
    CHECK(std::min(k1, k2) == doctest::Approx(a / (b * b)).epsilon(1e-10));
    CHECK(std::max(k1, k2) == doctest::Approx(a / (c * c)).epsilon(1e-10));
    CHECK(pc.kappa1 < 0.0);  // same sign convention as the sphere

    const auto [f1, f2] = fd_curvatures(*ellipsoid(a, b, c), pi / 2, 0.0);
    CHECK(pc.kappa1 == doctest::Approx(f1).epsilon(1e-6));
    CHECK(pc.kappa2 == doctest::Approx(f2).epsilon(1e-6));
}

TEST_CASE("analytic and finite-difference shape operators agree everywhere")
{
    RevolutionChart::Curve curve;
    curve.rho_cos = {2.0, 0.8};   // rho = 2 + 0.8 cos t
    curve.rho_sin = {0.15};       // + 0.15 sin t
    curve.z_cos = {0.0};
    curve.z_sin = {0.9};          // z = 0.9 sin t
    const auto rev = std::make_shared<RevolutionChart>(curve);

    for (const auto& chart :
         {sphere(1.3), ellipsoid(1.0, 1.2, 0.7), torus(2.0, 1.0),
          std::static_pointer_cast<const Chart>(rev)}) {
        std::uniform_real_distribution<double> uu(0.15, chart->u_extent() - 0.15),
            vv(0.0, 2 * pi);
        for (int t = 0; t < 8; ++t) {
            const double u = uu(rng), v = vv(rng);
            const auto pc = principal_curvatures(*chart, u, v);
            const auto [f1, f2] = fd_curvatures(*chart, u, v);
            CHECK(pc.kappa1 == doctest::Approx(f1).epsilon(1e-6));
            CHECK(pc.kappa2 == doctest::Approx(f2).epsilon(1e-6));
        }
    }
}

TEST_CASE("frames: orthonormal, positively oriented, eigen directions")
{
    const SurfaceGrid g = build_grid(torus(2.0, 1.0), 12, 16);
    for (long i = 0; i < g.size(); ++i) {
        CHECK(std::abs(g.normals[i].norm() - 1.0) <= 1e-12);
        CHECK(std::abs(g.e1[i].dot(g.e2[i])) <= 1e-10);
        Eigen::Matrix3d frame;
        frame.col(0) = g.e1[i];
        frame.col(1) = g.e2[i];
        frame.col(2) = g.normals[i];
        CHECK(frame.determinant() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("revolution chart with a circular generating curve matches the torus")
{
    RevolutionChart::Curve curve;
    curve.rho_cos = {2.0, 1.0};  // rho = 2 + cos t
    curve.z_cos = {0.0};
    curve.z_sin = {1.0};         // z = sin t
    const RevolutionChart rev(curve);
    const TorusChart tor(2.0, 1.0);
    std::uniform_real_distribution<double> uni(0.0, 2 * pi);
    for (int t = 0; t < 10; ++t) {
        const double u = uni(rng), v = uni(rng);
        const auto a = point_geometry(rev, u, v);
        const auto b = point_geometry(tor, u, v);
        CHECK((a.point - b.point).norm() <= 1e-12);
        CHECK((a.normal - b.normal).norm() <= 1e-12);
        CHECK(a.kappa1 == doctest::Approx(b.kappa1).epsilon(1e-10));
        CHECK(a.kappa2 == doctest::Approx(b.kappa2).epsilon(1e-10));
    }
    RevolutionChart::Curve bad;
    bad.rho_cos = {1.0, 1.5};  // dips below the axis
    bad.z_cos = {0.0};
    bad.z_sin = {1.0};
    CHECK_THROWS_AS(RevolutionChart(bad), ValidationError);
}

TEST_CASE("a_sigma: sphere, torus closed forms, grid lower bound")
{
    CHECK(a_sigma(*sphere()) <= 1e-9);
    CHECK(a_sigma(*torus(2.0, 1.0)) == doctest::Approx(2.0).epsilon(1e-8));

    // normalized family (sqrt(a), 1/sqrt(a)): value a^{3/2}/(a-1)
    for (double aspect : {2.0, 2.5, 4.0}) {
        const double want = std::pow(aspect, 1.5) / (aspect - 1.0);
        const auto t = torus(std::sqrt(aspect), 1.0 / std::sqrt(aspect));
        CHECK(a_sigma(*t) == doctest::Approx(want).epsilon(1e-7));
    }

    const SurfaceGrid g = build_grid(torus(3.0, 1.0), 24, 24);
    double grid_max = 0;
    for (long i = 0; i < g.size(); ++i)
        grid_max = std::max(grid_max, std::abs(g.kappa1[i] - g.kappa2[i]));
    CHECK(a_sigma(*torus(3.0, 1.0)) >= grid_max - 1e-12);
}

TEST_CASE("total curvature matches the Euler characteristic")
{
    CHECK(std::abs(gauss_bonnet(build_grid(sphere(), 24, 48)) - 4 * pi) <= 1e-6);
    CHECK(std::abs(gauss_bonnet(build_grid(torus(2.0, 1.0), 24, 48))) <= 1e-10);
    CHECK(std::abs(gauss_bonnet(build_grid(ellipsoid(1.0, 1.2, 0.7), 48, 96)) - 4 * pi) <=
          1e-6);
}

TEST_CASE("gauss_bonnet error decays under refinement")
{
    const auto ell = ellipsoid(1.0, 1.4, 0.6);
    const double e1 = std::abs(gauss_bonnet(build_grid(ell, 12, 24)) - 4 * pi);
    const double e2 = std::abs(gauss_bonnet(build_grid(ell, 24, 48)) - 4 * pi);
    CHECK(e2 <= e1 * 1.05 + 1e-12);
}

TEST_CASE("willmore energy: sphere, Clifford equality, strictness off it")
{
    CHECK(std::abs(willmore_energy(build_grid(sphere(), 24, 48)) - 16 * pi) <= 1e-6);

    const double clifford = willmore_energy(build_grid(torus(std::sqrt(2.0), 1.0), 32, 32));
    CHECK(std::abs(clifford - 8 * pi * pi) <= 1e-6);

    const double off = willmore_energy(build_grid(torus(2.0, 1.0), 32, 32));
    CHECK(off > 8 * pi * pi + 1.0);
    // closed form 4 pi^2 R^2 / (r sqrt(R^2 - r^2))
    CHECK(off == doctest::Approx(16 * pi * pi / std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("curvature-difference lower bound")
{
    CHECK(a_sigma_lower_bound(8 * pi * pi, 1) == doctest::Approx(1.0).epsilon(1e-12));
    const double area = 31.7;
    CHECK(a_sigma_lower_bound(area, 1) ==
          doctest::Approx(2 * std::sqrt(2.0) * pi / std::sqrt(area)).epsilon(1e-12));
    CHECK_THROWS_AS(a_sigma_lower_bound(4 * pi, 0), ValidationError);
    CHECK_THROWS_AS(a_sigma_lower_bound(-1.0, 1), ValidationError);

    // never attained: strict inequality on sample tori
    for (auto [R, r] : {std::pair{2.0, 1.0}, {3.0, 1.0}, {1.5, 0.5}}) {
        const double area_t = 4 * pi * pi * R * r;
        CHECK(a_sigma(*torus(R, r)) > a_sigma_lower_bound(area_t, 1) + 1e-6);
    }
}
