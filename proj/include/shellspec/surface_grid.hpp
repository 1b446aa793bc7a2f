#pragma once

#include <memory>
#include <vector>

#include "shellspec/chart.hpp"
#include "shellspec/clifford.hpp"

namespace shellspec {

/// Tensor quadrature grid on a chart. Nodes are flattened as
/// index = iu * n_v + iv. Immutable after construction.
struct SurfaceGrid {
    std::shared_ptr<const Chart> chart;
    int n_u = 0, n_v = 0;

    std::vector<double> u_nodes, v_nodes;  // 1D node positions
    std::vector<double> u_rule, v_rule;    // 1D quadrature weights

    // per-node fields
    std::vector<Vec3> points, normals, e1, e2;
    std::vector<double> kappa1, kappa2;
    std::vector<double> weights;        // area quadrature weight
    std::vector<double> area_elements;  // |du x dv|

    double spacing_u = 0, spacing_v = 0;  // representative parameter spacings

    long size() const { return static_cast<long>(n_u) * n_v; }
    long index(int iu, int iv) const { return static_cast<long>(iu) * n_v + iv; }

    /// Squared parameter distance from (u0,v0) to the nearest image of
    /// (u1,v1) under the chart's wrap/reflection group.
    double min_image_dist2(double u0, double v0, double u1, double v1) const;

    struct StencilEntry {
        long node;
        double coeff;
    };

    /// Cubic tensor-Lagrange interpolation weights at a canonical chart
    /// point: value(u,v) ~= sum coeff * value[node]. Polar charts extend the
    /// u stencil across the poles via the reflection identity.
    void interp_stencil(double u, double v, std::vector<StencilEntry>& out) const;

private:
    friend SurfaceGrid build_grid(std::shared_ptr<const Chart> chart, int n_u, int n_v);
    // extended u-node table for cross-pole interpolation
    std::vector<double> ext_u_;
    std::vector<int> ext_u_orig_, ext_u_shift_;
};

/// Builds the grid: trapezoid nodes in periodic directions, interior
/// Gauss-Legendre nodes in the polar direction, all geometric fields filled
/// analytically. Rejects degenerate charts (zero area element at a node).
SurfaceGrid build_grid(std::shared_ptr<const Chart> chart, int n_u, int n_v);

} // namespace shellspec
