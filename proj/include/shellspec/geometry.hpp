#pragma once

#include <Eigen/Dense>

#include "shellspec/chart.hpp"

namespace shellspec {

struct SurfaceGrid;

/// Full pointwise geometry of a chart point: position, outward unit normal,
/// principal curvatures kappa1 <= kappa2 with orthonormal directions, area
/// element and first fundamental form.
///
/// Curvature sign convention: the Weingarten map is -d(nu) with nu outward,
/// so the unit sphere has kappa1 = kappa2 = -1. Everything consumed
/// downstream (|k1-k2|, k1*k2, (k1+k2)^2) is invariant under the global
/// sign flip.
struct PointGeometry {
    Vec3 point;
    Vec3 normal;
    Vec3 e1, e2;
    double kappa1, kappa2;
    double area_element;          // |du x dv|
    Eigen::Matrix2d first_form;   // G = Dphi^T Dphi
};

PointGeometry point_geometry(const Chart& chart, double u, double v);

struct PrincipalCurvatures {
    double kappa1, kappa2;  // kappa1 <= kappa2
    Vec3 e1, e2;            // (e1, e2, normal) positively oriented
};

PrincipalCurvatures principal_curvatures(const Chart& chart, double u, double v);

/// max over the surface of |kappa1 - kappa2|, via a coarse scan refined by
/// multi-start Nelder-Mead to relative tolerance 1e-9.
double a_sigma(const Chart& chart);

/// Quadrature area of the grid (sum of weights).
double surface_area(const SurfaceGrid& grid);

/// sum_i w_i kappa1_i kappa2_i; compare with 2*pi*chi = 2*pi*(2 - 2*genus).
double gauss_bonnet(const SurfaceGrid& grid);

/// sum_i w_i (kappa1_i + kappa2_i)^2.
double willmore_energy(const SurfaceGrid& grid);

/// Curvature-difference lower bound 2*pi/sqrt(area) * sqrt(2 + 4(g-1)/pi),
/// valid for genus >= 1.
double a_sigma_lower_bound(double area, int genus);

} // namespace shellspec
