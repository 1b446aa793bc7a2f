#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "shellspec/assembly.hpp"
#include "shellspec/chart.hpp"
#include "shellspec/kernels.hpp"

namespace shellspec {

struct Interval {
    double lo = 0, hi = 0;  // closed; +-inf endpoints allowed
    double length() const { return hi - lo; }
};

/// Normalized (sorted, merged, non-overlapping) union of closed intervals.
struct IntervalSet {
    std::vector<Interval> parts;

    static IntervalSet of(std::vector<Interval> parts);
    void normalize();
    bool contains(double x) const;
    /// Euclidean distance from a complex point to the set (on the real axis).
    double distance(std::complex<double> z) const;
};

/// The new essential-spectrum interval centered at -m*mu/eps with
/// half-width a_sigma / (2 |eps|).
Interval predict_interval_J(double a_sigma_value, double m, const CouplingParams& c);

/// (-inf, -|m|] u [|m|, inf) u J. Requires critical coupling.
IntervalSet predict_spec_ess(const Chart& chart, double m, const CouplingParams& c);

/// Eigenvalue pair +- (k1 - k2)/2 * xi1 xi2 / |xi|^2 of the reduced symbol.
std::pair<double, double> symbol_R(double kappa1, double kappa2, double xi1, double xi2);

/// Union of the reduced-symbol spectra over the surface: [-A/4, A/4].
Interval symbol_spectrum_union(const Chart& chart);

/// R = L (sigma.nu) Z W L with L = inv_sqrt(K) (x) I2, all factors on the
/// same grid and quadrature.
DiscreteOperator build_R(std::shared_ptr<const SurfaceGrid> grid, const PhysParams& p,
                         const PatchRule& patch = {});

struct ClusterStats {
    double fraction_within_delta = 0;
    /// Largest gap between consecutive eigenvalue real parts inside J;
    /// |J| when fewer than two eigenvalues lie inside.
    double max_gap_inside = 0;
    /// Longest eigenvalue-free closed subinterval of J (endpoint gaps count).
    double max_empty_window = 0;
    std::vector<std::complex<double>> outliers;
};

ClusterStats cluster_report(const std::vector<std::complex<double>>& eigs,
                            const Interval& j_interval, double delta);

struct SpectralReport {
    std::vector<std::complex<double>> eigenvalues;  // sorted by real part
    Interval predicted_J;
    IntervalSet predicted_full;
    double delta = 0;
    ClusterStats stats;
    double max_abs_imag = 0;
    bool imag_warning = false;  // imaginary parts above 1e-4 * spectral radius
    std::string provenance;
};

/// Eigenvalues of (2/eps) R - (m mu / eps) I with coverage statistics
/// against the predicted interval. delta <= 0 selects the default
/// 0.05 * (1 + |J|).
SpectralReport shifted_R_spectrum(std::shared_ptr<const SurfaceGrid> grid,
                                  const PhysParams& p, const CouplingParams& c,
                                  const PatchRule& patch = {}, double delta = -1.0);

struct SchurResult {
    DiscreteOperator op;
    int pivot_branch;  // 11 or 22
};

/// Schur complement of the reduced block operator; the pivot block is
/// chosen from sign((eps+mu)(lambda+m)) and inverted spectrally through
/// the eigendecomposition of K. pivot_override forces branch 11 or 22
/// (0 = automatic); the off-branch pivot may be singular, which is
/// reported as a numerical failure.
SchurResult schur_S(std::shared_ptr<const SurfaceGrid> grid, const PhysParams& p,
                    const CouplingParams& c, const PatchRule& patch = {},
                    int pivot_override = 0);

struct SweepPoint {
    double lambda = 0;
    double sigma_min = std::numeric_limits<double>::quiet_NaN();
    int pivot_branch = 0;
    bool failed = false;
    std::string note;
};

struct SweepReport {
    std::vector<SweepPoint> points;
    double threshold = 0;
    std::vector<double> flagged;  // lambdas with sigma_min below threshold
};

/// Curve lambda -> sigma_min(S_lambda) at fixed mass. Pivot failures are
/// recorded and the sweep continues.
SweepReport sweep_S_min_singular(std::shared_ptr<const SurfaceGrid> grid, double m,
                                 const std::vector<double>& lambdas,
                                 const CouplingParams& c, const PatchRule& patch = {},
                                 double threshold = 1e-2);

} // namespace shellspec
