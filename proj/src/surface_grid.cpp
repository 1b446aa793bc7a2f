#include "shellspec/surface_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "shellspec/errors.hpp"
#include "shellspec/geometry.hpp"
#include "shellspec/parallel.hpp"
#include "shellspec/quadrature.hpp"

namespace shellspec {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_half(double x, double period)
{
    x = std::fmod(x, period);
    if (x < -0.5 * period) x += period;
    if (x > 0.5 * period) x -= period;
    return x;
}

// Lagrange basis on four nodes, evaluated at x.
void lagrange4(const double xs[4], double x, double out[4])
{
    for (int k = 0; k < 4; ++k) {
        double c = 1.0;
        for (int l = 0; l < 4; ++l) {
            if (l == k) continue;
            c *= (x - xs[l]) / (xs[k] - xs[l]);
        }
        out[k] = c;
    }
}
} // namespace

SurfaceGrid build_grid(std::shared_ptr<const Chart> chart, int n_u, int n_v)
{
    if (!chart) throw ValidationError("build_grid: null chart");
    if (n_u < 8 || n_v < 8) throw ValidationError("build_grid: need n_u, n_v >= 8");
    if (!chart->u_periodic() && n_v % 2 != 0)
        throw ValidationError("build_grid: polar charts need even n_v");

    SurfaceGrid grid;
    grid.chart = chart;
    grid.n_u = n_u;
    grid.n_v = n_v;

    Rule1D ru = chart->u_periodic() ? periodic_trapezoid(n_u, chart->u_extent())
                                    : polar_gauss(n_u);
    Rule1D rv = periodic_trapezoid(n_v, two_pi);
    grid.u_nodes = ru.nodes;
    grid.u_rule = ru.weights;
    grid.v_nodes = rv.nodes;
    grid.v_rule = rv.weights;
    grid.spacing_u = chart->u_extent() / n_u;
    grid.spacing_v = two_pi / n_v;

    const long n = grid.size();
    grid.points.resize(n);
    grid.normals.resize(n);
    grid.e1.resize(n);
    grid.e2.resize(n);
    grid.kappa1.resize(n);
    grid.kappa2.resize(n);
    grid.weights.resize(n);
    grid.area_elements.resize(n);

    std::vector<std::string> degenerate(n);
    parallel_for(n, [&](long idx) {
        const int iu = static_cast<int>(idx / n_v);
        const int iv = static_cast<int>(idx % n_v);
        const double u = grid.u_nodes[iu], v = grid.v_nodes[iv];
        const PointGeometry g = point_geometry(*chart, u, v);
        const double scale = g.point.norm() + 1.0;
        if (!(g.area_element > 1e-13 * scale * scale)) {
            std::ostringstream os;
            os << "build_grid: degenerate area element at node (u=" << u
               << ", v=" << v << ")";
            degenerate[idx] = os.str();
            return;
        }
        grid.points[idx] = g.point;
        grid.normals[idx] = g.normal;
        grid.e1[idx] = g.e1;
        grid.e2[idx] = g.e2;
        grid.kappa1[idx] = g.kappa1;
        grid.kappa2[idx] = g.kappa2;
        grid.area_elements[idx] = g.area_element;
        grid.weights[idx] = grid.u_rule[iu] * grid.v_rule[iv] * g.area_element;
    });
    for (long i = 0; i < n; ++i)
        if (!degenerate[i].empty()) throw ValidationError(degenerate[i]);

    // extended u-node table for interpolation across poles / the u period
    const int half = n_v / 2;
    auto push = [&](double pos, int orig, int shift) {
        grid.ext_u_.push_back(pos);
        grid.ext_u_orig_.push_back(orig);
        grid.ext_u_shift_.push_back(shift);
    };
    if (chart->u_periodic()) {
        const double period = chart->u_extent();
        for (int k = -3; k < n_u + 3; ++k) {
            const int orig = (k % n_u + n_u) % n_u;
            const double pos = grid.u_nodes[orig] + period * std::floor(double(k) / n_u);
            push(pos, orig, 0);
        }
    } else {
        const double top = chart->u_extent();
        for (int k = 2; k >= 0; --k) push(-grid.u_nodes[k], k, half);
        for (int k = 0; k < n_u; ++k) push(grid.u_nodes[k], k, 0);
        for (int k = 0; k < 3; ++k)
            push(2.0 * top - grid.u_nodes[n_u - 1 - k], n_u - 1 - k, half);
    }
    return grid;
}

double SurfaceGrid::min_image_dist2(double u0, double v0, double u1, double v1) const
{
    const double dv = wrap_half(v1 - v0, two_pi);
    if (chart->u_periodic()) {
        const double du = wrap_half(u1 - u0, chart->u_extent());
        return du * du + dv * dv;
    }
    const double top = chart->u_extent();
    const double dvr = wrap_half(v1 + std::numbers::pi - v0, two_pi);
    const double d_direct = (u1 - u0) * (u1 - u0) + dv * dv;
    const double d_lo = (u1 + u0) * (u1 + u0) + dvr * dvr;
    const double hi = 2.0 * top - u1 - u0;
    const double d_hi = hi * hi + dvr * dvr;
    return std::min({d_direct, d_lo, d_hi});
}

void SurfaceGrid::interp_stencil(double u, double v, std::vector<StencilEntry>& out) const
{
    out.clear();

    // u stencil from the extended table
    const auto it = std::upper_bound(ext_u_.begin(), ext_u_.end(), u);
    int hi = static_cast<int>(it - ext_u_.begin());
    int lo = hi - 2;  // four nodes: lo-? .. ; center the bracketing interval
    lo = std::clamp(lo, 0, static_cast<int>(ext_u_.size()) - 4);
    double ux[4], lu[4];
    for (int k = 0; k < 4; ++k) ux[k] = ext_u_[lo + k];
    lagrange4(ux, u, lu);

    // v stencil: uniform periodic
    const double hv = spacing_v;
    const int base = static_cast<int>(std::floor(v / hv));
    double vx[4], lv[4];
    for (int k = 0; k < 4; ++k) vx[k] = (base - 1 + k) * hv;
    lagrange4(vx, v, lv);

    for (int a = 0; a < 4; ++a) {
        const int iu = ext_u_orig_[lo + a];
        const int shift = ext_u_shift_[lo + a];
        for (int b = 0; b < 4; ++b) {
            const int iv = ((base - 1 + b + shift) % n_v + n_v) % n_v;
            out.push_back({index(iu, iv), lu[a] * lv[b]});
        }
    }
}

} // namespace shellspec
