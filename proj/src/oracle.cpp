#include "shellspec/oracle.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "shellspec/errors.hpp"
#include "shellspec/geometry.hpp"
#include "shellspec/optim.hpp"
#include "shellspec/quadrature.hpp"

namespace shellspec {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;
} // namespace

FtKernel ft_kernel_from_name(const std::string& name)
{
    if (name == "coulomb") return FtKernel::coulomb;
    if (name == "riesz_1") return FtKernel::riesz_1;
    if (name == "riesz_2") return FtKernel::riesz_2;
    if (name == "mixed_t1t2" || name == "mixed") return FtKernel::mixed_t1t2;
    throw ValidationError("unknown flat-transform kernel id: " + name);
}

std::string ft_kernel_name(FtKernel id)
{
    switch (id) {
        case FtKernel::coulomb: return "coulomb";
        case FtKernel::riesz_1: return "riesz_1";
        case FtKernel::riesz_2: return "riesz_2";
        case FtKernel::mixed_t1t2: return "mixed_t1t2";
    }
    return "unknown";
}

std::complex<double> ft_predicted(FtKernel id, double xi1, double xi2)
{
    const double n = std::hypot(xi1, xi2);
    if (!(n > 0)) throw ValidationError("ft_predicted: xi must be nonzero");
    switch (id) {
        case FtKernel::coulomb: return 0.5 / n;
        case FtKernel::riesz_1: return std::complex<double>(0, -xi1 / n);
        case FtKernel::riesz_2: return std::complex<double>(0, -xi2 / n);
        case FtKernel::mixed_t1t2: return -xi1 * xi2 / (2.0 * n * n * n);
    }
    return 0.0;
}

std::complex<double> ft_pv_kernel(FtKernel id, double xi1, double xi2, double r_trunc,
                                  int n_radial)
{
    const double xi_norm = std::hypot(xi1, xi2);
    if (!(xi_norm > 0)) throw ValidationError("ft_pv_kernel: xi must be nonzero");
    const double oscillation = r_trunc * xi_norm;
    if (oscillation < 20.0)
        throw ValidationError("ft_pv_kernel: requires r_trunc * |xi| >= 20");
    if (n_radial < static_cast<int>(1.5 * oscillation))
        throw ValidationError("ft_pv_kernel: radial rule under-resolves the oscillation");

    int n_ang = std::max(64, static_cast<int>(std::ceil(1.25 * oscillation)) + 16);
    if (n_ang % 2) ++n_ang;

    const Rule1D radial = gauss_legendre(n_radial, 0.0, r_trunc);

    // radial integrand (kernel * polar Jacobian) split by angular factor:
    //   coulomb  -> 1/(4 pi)
    //   riesz_j  -> omega_j / (2 pi rho)   (odd: needs the pairing)
    //   mixed    -> omega_1 omega_2 / (4 pi)
    const double taper_start = 0.9 * r_trunc;
    const double sigma = r_trunc / 36.0;

    std::complex<double> total = 0.0;
    const double w_ang = two_pi / n_ang;
    for (int k = 0; k < n_ang / 2; ++k) {
        const double psi = two_pi * (k + 0.5) / n_ang;
        const double c = std::cos(psi), s = std::sin(psi);
        const double dot = c * xi1 + s * xi2;
        std::complex<double> ray = 0.0;
        for (int q = 0; q < n_radial; ++q) {
            const double rho = radial.nodes[q];
            double taper = 1.0;
            if (rho > taper_start) {
                const double z = (rho - taper_start) / sigma;
                taper = std::exp(-0.5 * z * z);
            }
            const double wq = radial.weights[q] * taper;
            const double phase = rho * dot;
            // e^{-i phase} at omega plus e^{+i phase} at -omega
            const std::complex<double> fwd(std::cos(phase), -std::sin(phase));
            switch (id) {
                case FtKernel::coulomb:
                    ray += wq / (4.0 * pi) * (fwd + std::conj(fwd));
                    break;
                case FtKernel::riesz_1:
                    ray += wq * c / (two_pi * rho) * (fwd - std::conj(fwd));
                    break;
                case FtKernel::riesz_2:
                    ray += wq * s / (two_pi * rho) * (fwd - std::conj(fwd));
                    break;
                case FtKernel::mixed_t1t2:
                    ray += wq * c * s / (4.0 * pi) * (fwd + std::conj(fwd));
                    break;
            }
        }
        total += w_ang * ray;
    }
    return total;
}

std::vector<std::pair<double, int>> sphere_single_layer_eigs(int n_max)
{
    if (n_max < 0) throw ValidationError("sphere_single_layer_eigs: n_max >= 0");
    std::vector<std::pair<double, int>> out;
    out.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) out.emplace_back(1.0 / (2 * n + 1), 2 * n + 1);
    return out;
}

double torus_a_sigma(double major, double minor)
{
    if (!(minor > 0) || !(major > minor))
        throw ValidationError("torus_a_sigma: requires R > r > 0");
    return major / (minor * (major - minor));
}

TorusMinimum minimize_torus_a_sigma(double area)
{
    if (!(area > 0)) throw ValidationError("minimize_torus_a_sigma: area must be positive");
    // normalize R r = s^2; with aspect a = R/r the target is a^{3/2}/((a-1) s)
    const double s = std::sqrt(area / (4.0 * pi * pi));
    auto value = [](double a) { return std::pow(a, 1.5) / (a - 1.0); };
    const auto [a_star, v_star] = golden_section_min(value, 1.0 + 1e-9, 64.0, 1e-13);
    TorusMinimum out;
    out.aspect = a_star;
    out.major = s * std::sqrt(a_star);
    out.minor = s / std::sqrt(a_star);
    out.a_min = v_star / s;
    return out;
}

std::vector<SymbolSample> symbol_check_suite(const Chart& chart, const PhysParams& p,
                                             int points, std::uint64_t seed,
                                             double xi_resolution, int n_radial)
{
    (void)p;  // leading symbols are parameter-independent
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    const double rt2 = 1.0 / std::sqrt(2.0), rt5 = 1.0 / std::sqrt(5.0);
    const std::vector<std::array<double, 2>> fan = {
        {1.0, 0.0}, {0.0, 1.0}, {rt2, rt2}, {rt2, -rt2}, {2.0 * rt5, rt5}};

    auto measure = [&](FtKernel id, double x1, double x2) {
        const double r_trunc = xi_resolution / std::hypot(x1, x2);
        return ft_pv_kernel(id, x1, x2, r_trunc, n_radial);
    };

    std::vector<SymbolSample> out;
    const double floor = 1e-9;
    for (int q = 0; q < points; ++q) {
        const double u = chart.u_extent() * uni(rng);
        const double v = two_pi * uni(rng);
        const PrincipalCurvatures pc = principal_curvatures(chart, u, v);
        const double gap = pc.kappa1 - pc.kappa2;
        for (const auto& xi : fan) {
            const double n = std::hypot(xi[0], xi[1]);
            // pK: 1/(2|xi|)
            {
                SymbolSample smp{"pK", xi[0], xi[1], 0.5 / n,
                                 measure(FtKernel::coulomb, xi[0], xi[1]), 0.0};
                smp.rel_err = std::abs(smp.measured - smp.predicted) /
                              std::max(std::abs(smp.predicted), floor);
                out.push_back(smp);
            }
            // pW coefficients in front of sigma.e_j: xi_j / (2|xi|),
            // reconstructed as (i/2) * riesz_j
            for (int j = 1; j <= 2; ++j) {
                const double comp = (j == 1 ? xi[0] : xi[1]);
                const FtKernel id = (j == 1 ? FtKernel::riesz_1 : FtKernel::riesz_2);
                SymbolSample smp{j == 1 ? "pW_1" : "pW_2", xi[0], xi[1],
                                 comp / (2.0 * n),
                                 std::complex<double>(0, 0.5) * measure(id, xi[0], xi[1]),
                                 0.0};
                smp.rel_err = std::abs(smp.measured - smp.predicted) /
                              std::max(std::abs(smp.predicted), floor);
                out.push_back(smp);
            }
            // pZ coefficient in front of sigma.nu: (k1-k2)/2 * xi1 xi2 / |xi|^3,
            // reconstructed as -(k1-k2) * mixed transform
            {
                SymbolSample smp{"pZ", xi[0], xi[1],
                                 0.5 * gap * xi[0] * xi[1] / (n * n * n),
                                 -gap * measure(FtKernel::mixed_t1t2, xi[0], xi[1]), 0.0};
                smp.rel_err = std::abs(smp.measured - smp.predicted) /
                              std::max(std::abs(smp.predicted), floor);
                out.push_back(smp);
            }
        }
    }
    return out;
}

} // namespace shellspec
