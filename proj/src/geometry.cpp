#include "shellspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shellspec/errors.hpp"
#include "shellspec/optim.hpp"
#include "shellspec/surface_grid.hpp"

namespace shellspec {

PointGeometry point_geometry(const Chart& chart, double u, double v)
{
    const ChartJet j = chart.jet(u, v);
    PointGeometry g;
    g.point = j.p;

    const Vec3 raw = j.du.cross(j.dv);
    g.area_element = raw.norm();
    if (!(g.area_element > 0)) {
        g.normal = Vec3::Zero();
        g.e1 = g.e2 = Vec3::Zero();
        g.kappa1 = g.kappa2 = 0;
        g.first_form.setZero();
        return g;
    }
    g.normal = chart.orientation() * raw / g.area_element;

    g.first_form(0, 0) = j.du.dot(j.du);
    g.first_form(0, 1) = g.first_form(1, 0) = j.du.dot(j.dv);
    g.first_form(1, 1) = j.dv.dot(j.dv);

    // second fundamental form against the outward normal
    const double L = j.duu.dot(g.normal);
    const double M = j.duv.dot(g.normal);
    const double N = j.dvv.dot(g.normal);

    // Weingarten map in an orthonormal tangent basis (t1, t2):
    // t1 = du/|du|, t2 = Gram-Schmidt of dv against t1. The map is
    // symmetric there, so a closed-form 2x2 eigensolve gives the
    // curvatures and directions.
    const double nu_ = j.du.norm();
    const Vec3 t1 = j.du / nu_;
    const double proj = j.dv.dot(t1);
    const Vec3 t2raw = j.dv - proj * t1;
    const double nt2 = t2raw.norm();
    const Vec3 t2 = t2raw / nt2;

    // t1 = p1*du, t2 = q1*du + q2*dv in parameter coordinates
    const double p1 = 1.0 / nu_;
    const double q2 = 1.0 / nt2;
    const double q1 = -proj * p1 * q2;

    const double w11 = p1 * p1 * L;
    const double w12 = p1 * (q1 * L + q2 * M);
    const double w22 = q1 * q1 * L + 2.0 * q1 * q2 * M + q2 * q2 * N;

    const double mean = 0.5 * (w11 + w22);
    const double diff = 0.5 * (w11 - w22);
    const double disc = std::hypot(diff, w12);
    g.kappa1 = mean - disc;
    g.kappa2 = mean + disc;

    Vec3 dir1;
    if (disc < 1e-14 * (std::abs(mean) + 1.0)) {
        dir1 = t1;  // umbilic: coordinate-induced frame
    } else if (std::abs(w12) > 1e-300) {
        // eigenvector of [[w11,w12],[w12,w22]] for the smaller eigenvalue
        dir1 = (g.kappa1 - w22) * t1 + w12 * t2;
        dir1.normalize();
    } else {
        dir1 = (w11 <= w22) ? t1 : t2;
    }
    g.e1 = dir1;
    g.e2 = g.normal.cross(g.e1);
    return g;
}

PrincipalCurvatures principal_curvatures(const Chart& chart, double u, double v)
{
    const PointGeometry g = point_geometry(chart, u, v);
    return {g.kappa1, g.kappa2, g.e1, g.e2};
}

namespace {

double curvature_gap(const Chart& chart, double u, double v)
{
    const PointGeometry g = point_geometry(chart, u, v);
    return g.kappa2 - g.kappa1;
}

} // namespace

double a_sigma(const Chart& chart)
{
    constexpr int scan = 128;
    const double u_span = chart.u_extent();
    const double v_span = 2.0 * std::numbers::pi;
    const double hu = u_span / scan, hv = v_span / scan;

    struct Candidate {
        double u, v, val;
    };
    std::vector<Candidate> cells;
    cells.reserve(static_cast<std::size_t>(scan) * scan);
    double grid_best = 0.0;
    for (int i = 0; i < scan; ++i) {
        const double u = (i + 0.5) * hu;
        for (int k = 0; k < scan; ++k) {
            const double v = (k + 0.5) * hv;
            const double val = curvature_gap(chart, u, v);
            cells.push_back({u, v, val});
            grid_best = std::max(grid_best, val);
        }
    }
    std::sort(cells.begin(), cells.end(),
              [](const Candidate& a, const Candidate& b) { return a.val > b.val; });

    // refine from the 5 best well-separated scan cells
    std::vector<Candidate> starts;
    for (const auto& c : cells) {
        bool close = false;
        for (const auto& s : starts)
            close |= std::abs(c.u - s.u) < 3 * hu && std::abs(c.v - s.v) < 3 * hv;
        if (!close) starts.push_back(c);
        if (starts.size() == 5) break;
    }

    double best = grid_best;
    for (const auto& s : starts) {
        auto neg = [&](const std::array<double, 2>& x) {
            return -curvature_gap(chart, x[0], x[1]);
        };
        const auto [arg, val] =
            nelder_mead_2d(neg, {s.u, s.v}, 0.5 * std::max(hu, hv), 1e-9, 800);
        (void)arg;
        best = std::max(best, -val);
    }
    return best;
}

double surface_area(const SurfaceGrid& grid)
{
    double area = 0;
    for (double w : grid.weights) area += w;
    return area;
}

double gauss_bonnet(const SurfaceGrid& grid)
{
    double total = 0;
    for (long i = 0; i < grid.size(); ++i)
        total += grid.weights[i] * grid.kappa1[i] * grid.kappa2[i];
    return total;
}

double willmore_energy(const SurfaceGrid& grid)
{
    double total = 0;
    for (long i = 0; i < grid.size(); ++i) {
        const double h = grid.kappa1[i] + grid.kappa2[i];
        total += grid.weights[i] * h * h;
    }
    return total;
}

double a_sigma_lower_bound(double area, int genus)
{
    if (!(area > 0)) throw ValidationError("a_sigma_lower_bound: area must be positive");
    if (genus < 1)
        throw ValidationError("a_sigma_lower_bound: stated for genus >= 1");
    const double pi = std::numbers::pi;
    return 2.0 * pi / std::sqrt(area) * std::sqrt(2.0 + 4.0 * (genus - 1) / pi);
}

} // namespace shellspec
