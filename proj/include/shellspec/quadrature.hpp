#pragma once

#include <vector>

namespace shellspec {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
Rule1D gauss_legendre(int n);

/// Gauss-Legendre mapped to [a, b].
Rule1D gauss_legendre(int n, double a, double b);

/// Equispaced periodic trapezoid rule on [0, period): nodes k*period/n,
/// uniform weight period/n.
Rule1D periodic_trapezoid(int n, double period);

/// Polar-angle rule for genus-0 charts: nodes theta_i = acos(x_i) with x_i
/// Gauss-Legendre on (-1, 1), listed in increasing theta, and weights
/// w_i / sin(theta_i) so that weight * sin(theta) reproduces the Legendre
/// weight. Nodes are strictly interior: no evaluation at the poles.
Rule1D polar_gauss(int n);

} // namespace shellspec
