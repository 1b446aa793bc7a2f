#include "shellspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shellspec/errors.hpp"
#include "shellspec/geometry.hpp"

namespace shellspec {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

IntervalSet IntervalSet::of(std::vector<Interval> parts)
{
    IntervalSet s;
    s.parts = std::move(parts);
    s.normalize();
    return s;
}

void IntervalSet::normalize()
{
    for (const auto& p : parts)
        if (!(p.lo <= p.hi)) throw ValidationError("IntervalSet: inverted interval");
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const auto& p : parts) {
        if (!merged.empty() && p.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, p.hi);
        else
            merged.push_back(p);
    }
    parts = std::move(merged);
}

bool IntervalSet::contains(double x) const
{
    for (const auto& p : parts)
        if (x >= p.lo && x <= p.hi) return true;
    return false;
}

double IntervalSet::distance(std::complex<double> z) const
{
    double best = inf;
    for (const auto& p : parts) {
        double dx = 0.0;
        if (z.real() < p.lo) dx = p.lo - z.real();
        else if (z.real() > p.hi) dx = z.real() - p.hi;
        best = std::min(best, std::hypot(dx, z.imag()));
    }
    return best;
}

Interval predict_interval_J(double a_sigma_value, double m, const CouplingParams& c)
{
    const double center = -m * c.mu / c.eps;
    const double half = a_sigma_value / (2.0 * std::abs(c.eps));
    return {center - half, center + half};
}

IntervalSet predict_spec_ess(const Chart& chart, double m, const CouplingParams& c)
{
    const Interval j = predict_interval_J(a_sigma(chart), m, c);
    return IntervalSet::of({{-inf, -std::abs(m)}, {std::abs(m), inf}, j});
}

std::pair<double, double> symbol_R(double kappa1, double kappa2, double xi1, double xi2)
{
    const double n2 = xi1 * xi1 + xi2 * xi2;
    if (!(n2 > 0)) throw ValidationError("symbol_R: xi must be nonzero");
    const double v = 0.5 * (kappa1 - kappa2) * xi1 * xi2 / n2;
    return {v, -v};
}

Interval symbol_spectrum_union(const Chart& chart)
{
    const double quarter = 0.25 * a_sigma(chart);
    return {-quarter, quarter};
}

DiscreteOperator build_R(std::shared_ptr<const SurfaceGrid> grid, const PhysParams& p,
                         const PatchRule& patch)
{
    CMat l2;
    {
        const DiscreteOperator k = assemble_K(grid, p, patch, true);
        const DiscreteOperator l = inv_sqrt(k);
        l2 = kron_identity2(l.mat);
    }
    CMat t1;
    {
        DiscreteOperator z = assemble_Z(grid, p, patch, true);
        const DiscreteOperator w = assemble_W(grid, p, patch, true);
        t1 = gemm(z.mat, w.mat);  // Z W
        z.mat.resize(0, 0);
        apply_nu_left(*grid, t1);  // (sigma.nu) Z W
    }
    CMat t2 = gemm(l2, t1);
    t1.resize(0, 0);
    DiscreteOperator r;
    r.mat = gemm(t2, l2);
    r.channels = 2;
    r.grid = std::move(grid);
    r.symmetrized = true;
    return r;
}

ClusterStats cluster_report(const std::vector<std::complex<double>>& eigs,
                            const Interval& j_interval, double delta)
{
    if (!(delta > 0)) throw ValidationError("cluster_report: delta must be positive");
    ClusterStats stats;
    if (eigs.empty()) {
        stats.max_gap_inside = j_interval.length();
        stats.max_empty_window = j_interval.length();
        return stats;
    }
    const IntervalSet j_set = IntervalSet::of({j_interval});
    long within = 0;
    std::vector<double> inside;
    for (const auto& e : eigs) {
        if (j_set.distance(e) <= delta)
            ++within;
        else
            stats.outliers.push_back(e);
        if (e.real() >= j_interval.lo && e.real() <= j_interval.hi)
            inside.push_back(e.real());
    }
    stats.fraction_within_delta = static_cast<double>(within) / eigs.size();

    std::sort(inside.begin(), inside.end());
    if (inside.size() < 2) {
        stats.max_gap_inside = j_interval.length();
    } else {
        double gap = 0;
        for (std::size_t k = 1; k < inside.size(); ++k)
            gap = std::max(gap, inside[k] - inside[k - 1]);
        stats.max_gap_inside = gap;
    }
    // endpoint gaps count toward empty windows
    double window = 0;
    if (inside.empty()) {
        window = j_interval.length();
    } else {
        window = std::max(inside.front() - j_interval.lo, j_interval.hi - inside.back());
        for (std::size_t k = 1; k < inside.size(); ++k)
            window = std::max(window, inside[k] - inside[k - 1]);
    }
    stats.max_empty_window = window;
    return stats;
}

SpectralReport shifted_R_spectrum(std::shared_ptr<const SurfaceGrid> grid,
                                  const PhysParams& p, const CouplingParams& c,
                                  const PatchRule& patch, double delta)
{
    const Chart& chart = *grid->chart;
    SpectralReport report;
    report.predicted_J = predict_interval_J(a_sigma(chart), p.m, c);
    report.predicted_full = IntervalSet::of({{-inf, -std::abs(p.m)},
                                             {std::abs(p.m), inf},
                                             report.predicted_J});
    report.delta = delta > 0 ? delta : 0.05 * (1.0 + report.predicted_J.length());

    const DiscreteOperator r = build_R(std::move(grid), p, patch);
    const CVec theta = eig_general_values(r.mat);

    const double shift = -p.m * c.mu / c.eps;
    const double scale = 2.0 / c.eps;
    report.eigenvalues.resize(theta.size());
    for (long k = 0; k < theta.size(); ++k)
        report.eigenvalues[k] = scale * theta[k] + shift;
    std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
              });

    double radius = 0;
    for (const auto& e : report.eigenvalues) {
        report.max_abs_imag = std::max(report.max_abs_imag, std::abs(e.imag()));
        radius = std::max(radius, std::abs(e));
    }
    report.imag_warning = report.max_abs_imag > 1e-4 * std::max(radius, 1e-300);

    report.stats = cluster_report(report.eigenvalues, report.predicted_J, report.delta);
    return report;
}

SchurResult schur_S(std::shared_ptr<const SurfaceGrid> grid, const PhysParams& p,
                    const CouplingParams& c, const PatchRule& patch, int pivot_override)
{
    if (std::abs(p.lambda) >= std::abs(p.m))
        throw ValidationError("schur_S: requires |lambda| < |m|");
    if (pivot_override != 0 && pivot_override != 11 && pivot_override != 22)
        throw ValidationError("schur_S: pivot_override must be 0, 11 or 22");

    const DiscreteOperator k = assemble_K(grid, p, patch, true);
    const HermEig keig = eig_hermitian(k.mat);
    if (!(keig.values[0] > 0)) {
        std::ostringstream os;
        os << "schur_S: discrete K not positive definite (smallest eigenvalue "
           << keig.values[0] << ")";
        throw NumericalError(os.str());
    }

    const DiscreteOperator w = assemble_W(grid, p, patch, true);

    // L^2 = K^{-1} through the same eigenbasis
    auto spectral = [&keig](auto&& fn) {
        CMat scaled = keig.vectors;
        for (long q = 0; q < scaled.cols(); ++q) scaled.col(q) *= fn(keig.values[q]);
        return gemm(scaled, keig.vectors.adjoint());
    };

    CMat lwl;
    {
        const CMat l2 = kron_identity2(spectral([](double d) { return 1.0 / std::sqrt(d); }));
        lwl = gemm(gemm(l2, w.mat), l2);
    }

    const bool pivot11 = pivot_override != 0
                             ? pivot_override == 11
                             : (c.eps + c.mu) * (p.lambda + p.m) > 0;
    // diagonal blocks: Lambda^11 = K^{-1}/(eps+mu) + (lambda+m),
    //                  Lambda^22 = K^{-1}/(eps-mu) + (lambda-m)
    const double alpha_keep = pivot11 ? 1.0 / (c.eps - c.mu) : 1.0 / (c.eps + c.mu);
    const double beta_keep = pivot11 ? p.lambda - p.m : p.lambda + p.m;
    const double alpha_piv = pivot11 ? 1.0 / (c.eps + c.mu) : 1.0 / (c.eps - c.mu);
    const double beta_piv = pivot11 ? p.lambda + p.m : p.lambda - p.m;

    double piv_min = inf;
    for (long q = 0; q < keig.values.size(); ++q)
        piv_min = std::min(piv_min, std::abs(alpha_piv / keig.values[q] + beta_piv));
    const double piv_scale = std::abs(alpha_piv / keig.values[0]) + std::abs(beta_piv);
    if (!(piv_min > 1e-12 * piv_scale)) {
        std::ostringstream os;
        os << "schur_S: pivot block singular to working precision (smallest singular value "
           << piv_min << ")";
        throw NumericalError(os.str());
    }

    const CMat keep = kron_identity2(
        spectral([&](double d) { return alpha_keep / d + beta_keep; }));
    const CMat piv_inv = kron_identity2(
        spectral([&](double d) { return 1.0 / (alpha_piv / d + beta_piv); }));

    SchurResult out;
    out.op.mat = keep - gemm(lwl, gemm(piv_inv, lwl));
    out.op.channels = 2;
    out.op.grid = std::move(grid);
    out.op.symmetrized = true;
    out.pivot_branch = pivot11 ? 11 : 22;
    return out;
}

SweepReport sweep_S_min_singular(std::shared_ptr<const SurfaceGrid> grid, double m,
                                 const std::vector<double>& lambdas,
                                 const CouplingParams& c, const PatchRule& patch,
                                 double threshold)
{
    SweepReport report;
    report.threshold = threshold;
    for (double lambda : lambdas) {
        SweepPoint pt;
        pt.lambda = lambda;
        try {
            const PhysParams p(m, lambda);
            const SchurResult s = schur_S(grid, p, c, patch);
            pt.sigma_min = smallest_singular_value(s.op.mat);
            pt.pivot_branch = s.pivot_branch;
            if (pt.sigma_min < threshold) report.flagged.push_back(lambda);
        } catch (const std::exception& ex) {
            pt.failed = true;
            pt.note = ex.what();
        }
        report.points.push_back(pt);
    }
    return report;
}

} // namespace shellspec
