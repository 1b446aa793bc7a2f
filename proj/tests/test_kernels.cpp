#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "shellspec/errors.hpp"
#include "shellspec/kernels.hpp"

using namespace shellspec;

namespace {
constexpr double pi = std::numbers::pi;
std::mt19937_64 rng(77);

Vec3 random_vec(double scale = 1.0)
{
    std::uniform_real_distribution<double> uni(-scale, scale);
    return Vec3(uni(rng), uni(rng), uni(rng));
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }
} // namespace

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(PhysParams(1.0, 1.5), ValidationError);
    const PhysParams p(1.0, 0.6);
    CHECK(p.tau == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(std::abs(p.tau * p.tau - (p.m * p.m - p.lambda * p.lambda)) <= 1e-12);

    CHECK_THROWS_AS(CouplingParams(1.0, 0.0), ValidationError);
    CHECK_NOTHROW(CouplingParams(2.0, 0.0));
    CHECK_NOTHROW(CouplingParams(-std::sqrt(5.0), 1.0));
    const CouplingParams c = CouplingParams::critical(1.0, -1);
    CHECK(c.eps == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("scalar kernel values and decay")
{
    const Vec3 e1(1, 0, 0);
    CHECK(k_lambda(e1, PhysParams(1.0, 1.0)).real() ==
          doctest::Approx(1.0 / (4 * pi)).epsilon(1e-14));
    CHECK(k_lambda(e1, PhysParams(1.0, 0.0)).real() ==
          doctest::Approx(std::exp(-1.0) / (4 * pi)).epsilon(1e-14));
    CHECK_THROWS_AS(k_lambda(Vec3::Zero(), PhysParams(1.0, 0.0)), ValidationError);

    for (int t = 0; t < 30; ++t) {
        const Vec3 x = random_vec(3.0);
        if (x.norm() < 1e-3) continue;
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const double l1 = uni(rng), l2 = 0.5 * l1;  // tau(l1) < tau(l2)
        const auto k1 = k_lambda(x, PhysParams(1.0, l1));
        const auto k2 = k_lambda(x, PhysParams(1.0, l2));
        CHECK(k1.imag() == 0.0);
        CHECK(k1.real() > 0.0);
        CHECK(k1.real() <= 1.0 / (4 * pi * x.norm()) + 1e-15);
        CHECK(k2.real() <= k1.real() + 1e-15);  // monotone in tau
    }
}

TEST_CASE("spin kernel: oddness, tau=0 form, singularity order")
{
    const PhysParams pm(1.0, 1.0);
    CHECK(max_abs(w_lambda(Vec3(1, 0, 0), pm) - cplx_i / (4 * pi) * pauli(1)) <= 1e-15);

    const PhysParams p(1.0, 0.3);
    for (int t = 0; t < 20; ++t) {
        const Vec3 x = random_vec();
        if (x.norm() < 1e-3) continue;
        CHECK(max_abs(w_lambda(-x, p) + w_lambda(x, p)) <= 1e-14);
    }
    // leading singularity ~ 1/(4 pi |x|^2): rescaling x by 1/2 quadruples it
    const Vec3 x0(1e-3, 2e-3, -1e-3);
    const double n1 = max_abs(w_lambda(x0, p));
    const double n2 = max_abs(w_lambda(0.5 * x0, p));
    CHECK(n2 / n1 == doctest::Approx(4.0).epsilon(1e-2));
}

TEST_CASE("fundamental-solution kernel blocks")
{
    const PhysParams p(1.0, 0.0);
    const Vec3 x(0.3, -0.4, 0.5);
    const DiracMatrix phi = phi_lambda(x, p);
    const auto k = k_lambda(x, p);
    const SpinMatrix w = w_lambda(x, p);
    CHECK(max_abs(phi.block<2, 2>(0, 0) - (p.lambda + p.m) * k * SpinMatrix::Identity()) <= 1e-15);
    CHECK(max_abs(phi.block<2, 2>(2, 2) - (p.lambda - p.m) * k * SpinMatrix::Identity()) <= 1e-15);
    CHECK(max_abs(phi.block<2, 2>(0, 2) - w) <= 1e-15);

    const DiracMatrix phim = phi_lambda(x, PhysParams(1.0, 1.0));
    CHECK(max_abs(phim.block<2, 2>(2, 2)) == 0.0);
}

TEST_CASE("phi equals the Dirac operator applied to the scalar kernel")
{
    // (D + lambda)(psi I4) with D = -i sum alpha_j d_j + m beta via central
    // differences of psi(x) = exp(-tau |x|)/(4 pi |x|)
    const PhysParams p(1.0, 0.4);
    auto psi = [&p](const Vec3& x) {
        return std::exp(-p.tau * x.norm()) / (4 * pi * x.norm());
    };
    const double h = 1e-5;
    for (int t = 0; t < 10; ++t) {
        Vec3 x = random_vec(2.0);
        if (x.norm() < 0.3) x += Vec3(0.5, 0.5, 0.5);
        DiracMatrix want = DiracMatrix::Zero();
        for (int j = 0; j < 3; ++j) {
            Vec3 dx = Vec3::Zero();
            dx[j] = h;
            const double dpsi = (psi(x + dx) - psi(x - dx)) / (2 * h);
            want += -cplx_i * dpsi * alpha(j + 1);
        }
        want += (p.m * beta_matrix() + p.lambda * DiracMatrix::Identity()) * psi(x);
        CHECK(max_abs(phi_lambda(x, p) - want) <= 1e-6);
    }
}

TEST_CASE("anticommutator kernel")
{
    // parallel normals orthogonal to the difference: both terms vanish
    const Vec3 nu(0, 0, 1);
    const Vec3 d(0.7, -0.2, 0);
    CHECK(max_abs(z_kernel(d, Vec3::Zero(), nu, nu)) <= 1e-15);

    // kernel of a self-adjoint pair: z(x,y)^* = z(y,x)
    for (int t = 0; t < 20; ++t) {
        const Vec3 x = random_vec(), y = random_vec();
        if ((x - y).norm() < 1e-3) continue;
        const Vec3 nx = random_vec().normalized(), ny = random_vec().normalized();
        CHECK(max_abs(z_kernel(x, y, nx, ny).adjoint() - z_kernel(y, x, ny, nx)) <= 1e-14);
    }

    // antipodal points on the unit sphere: nu(x) = x, nu(y) = y = -x gives
    // sigma.x sigma.(2x) + sigma.(2x) sigma.(-x) = 0
    const Vec3 xs = Vec3(1, 2, 2).normalized();
    CHECK(max_abs(z_kernel(xs, -xs, xs, -xs)) <= 1e-15);

    CHECK_THROWS_AS(z_kernel(Vec3(1, 0, 0), Vec3(1, 0, 0), nu, nu), ValidationError);
}

TEST_CASE("anticommutator kernel splits into tangential and normal parts")
{
    // z = theta + theta1 with
    //   theta  = -sigma.((nu_x - nu_y) x (x-y)) / (4 pi |x-y|^3)
    //   theta1 = i <nu_x + nu_y, x-y> I2 / (4 pi |x-y|^3)
    for (int t = 0; t < 50; ++t) {
        const Vec3 x = random_vec(), y = random_vec();
        if ((x - y).norm() < 1e-2) continue;
        const Vec3 nx = random_vec().normalized(), ny = random_vec().normalized();
        const Vec3 d = x - y;
        const double r3 = std::pow(d.norm(), 3);
        const SpinMatrix theta = -sigma_dot((nx - ny).cross(d)) / (4 * pi * r3);
        const SpinMatrix theta1 =
            cplx_i * (nx + ny).dot(d) / (4 * pi * r3) * SpinMatrix::Identity();
        CHECK(max_abs(z_kernel(x, y, nx, ny) - theta - theta1) <= 1e-12);
    }
}
