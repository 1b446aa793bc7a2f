#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shellspec/chart.hpp"
#include "shellspec/kernels.hpp"

namespace shellspec {

enum class FtKernel { coulomb, riesz_1, riesz_2, mixed_t1t2 };

FtKernel ft_kernel_from_name(const std::string& name);
std::string ft_kernel_name(FtKernel id);

/// Closed-form flat-plane transforms:
///   coulomb  1/(4 pi |t|)        ->  1/(2 |xi|)
///   riesz_j  pv t_j/(2 pi |t|^3) -> -i xi_j / |xi|
///   mixed    t1 t2/(4 pi |t|^3)  -> -xi1 xi2 / (2 |xi|^3)
std::complex<double> ft_predicted(FtKernel id, double xi1, double xi2);

/// Numerical 2D Fourier transform of the truncated kernel over |t| <= r_trunc
/// in polar coordinates. The principal value is realized by exact antipodal
/// angular pairing; a Gaussian taper over the last 10% of the radius
/// suppresses truncation ringing. Requires r_trunc * |xi| >= 20 and
/// n_radial >= 1.5 * r_trunc * |xi|.
std::complex<double> ft_pv_kernel(FtKernel id, double xi1, double xi2, double r_trunc,
                                  int n_radial);

/// Legendre-expansion eigenvalues of the Coulomb single layer on the unit
/// sphere: (1/(2n+1), multiplicity 2n+1) for n = 0..n_max.
std::vector<std::pair<double, int>> sphere_single_layer_eigs(int n_max);

/// Closed form max_theta |cos(theta)/(R + r cos(theta)) - 1/r| = R/(r(R-r)),
/// attained at the inner equator. Requires R > r > 0.
double torus_a_sigma(double major, double minor);

struct TorusMinimum {
    double major, minor;
    double aspect;  // major / minor
    double a_min;
};

/// Minimizes torus_a_sigma over tori of revolution with 4 pi^2 R r = area.
TorusMinimum minimize_torus_a_sigma(double area);

struct SymbolSample {
    std::string id;  // pK, pW_1, pW_2, pZ
    double xi1, xi2;
    std::complex<double> predicted;
    std::complex<double> measured;
    double rel_err;
};

/// At sampled surface points, compares the closed-form principal symbols in
/// the principal-direction frame against reconstructions from the flat
/// Fourier transforms. The physics parameters do not enter the leading
/// symbols; they are recorded for provenance only.
std::vector<SymbolSample> symbol_check_suite(const Chart& chart, const PhysParams& p,
                                             int points, std::uint64_t seed,
                                             double xi_resolution = 160.0,
                                             int n_radial = 1024);

} // namespace shellspec
