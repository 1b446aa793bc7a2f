#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "shellspec/clifford.hpp"
#include "shellspec/errors.hpp"

namespace shellspec {

/// Mass m and spectral parameter lambda with |lambda| <= |m|; tau is the
/// decay rate sqrt(m^2 - lambda^2).
struct PhysParams {
    double m;
    double lambda;
    double tau;

    PhysParams(double mass, double lam) : m(mass), lambda(lam)
    {
        if (std::abs(lambda) > std::abs(m) + 1e-12)
            throw ValidationError("PhysParams: requires |lambda| <= |m|");
        tau = std::sqrt(std::max(0.0, m * m - lambda * lambda));
    }
};

/// Electrostatic/Lorentz strengths at criticality eps^2 - mu^2 = 4.
struct CouplingParams {
    double eps;
    double mu;

    CouplingParams(double eps_, double mu_) : eps(eps_), mu(mu_)
    {
        if (std::abs(eps * eps - mu * mu - 4.0) > 1e-9)
            throw ValidationError("CouplingParams: non-critical coupling (eps^2 - mu^2 != 4)");
    }

    /// eps = sign * sqrt(4 + mu^2).
    static CouplingParams critical(double mu_, int eps_sign = +1)
    {
        return CouplingParams(eps_sign >= 0 ? std::sqrt(4.0 + mu_ * mu_)
                                            : -std::sqrt(4.0 + mu_ * mu_),
                              mu_);
    }
};

namespace detail {
inline void require_nonzero(const Vec3& x)
{
    if (x.squaredNorm() == 0.0)
        throw ValidationError("kernel evaluated at the singular point x = 0");
}
} // namespace detail

/// Scalar kernel exp(-tau |x|) / (4 pi |x|). Real and positive for every
/// admissible parameter pair (decaying exponent convention).
inline std::complex<double> k_lambda(const Vec3& x, const PhysParams& p)
{
    detail::require_nonzero(x);
    const double r = x.norm();
    return std::exp(-p.tau * r) / (4.0 * std::numbers::pi * r);
}

/// Spin kernel exp(-tau |x|) (1 + tau |x|) i (sigma . x) / (4 pi |x|^3).
/// Odd in x; the leading singularity is order 1/|x|^2.
inline SpinMatrix w_lambda(const Vec3& x, const PhysParams& p)
{
    detail::require_nonzero(x);
    const double r = x.norm();
    const double scale =
        std::exp(-p.tau * r) * (1.0 + p.tau * r) / (4.0 * std::numbers::pi * r * r * r);
    return cplx_i * scale * sigma_dot(x);
}

/// Fundamental-solution kernel, block form
///   [ (lambda+m) k I2      w        ]
///   [      w          (lambda-m) k I2 ].
inline DiracMatrix phi_lambda(const Vec3& x, const PhysParams& p)
{
    detail::require_nonzero(x);
    const std::complex<double> k = k_lambda(x, p);
    const SpinMatrix w = w_lambda(x, p);
    DiracMatrix out = DiracMatrix::Zero();
    out.block<2, 2>(0, 0) = (p.lambda + p.m) * k * SpinMatrix::Identity();
    out.block<2, 2>(2, 2) = (p.lambda - p.m) * k * SpinMatrix::Identity();
    out.block<2, 2>(0, 2) = w;
    out.block<2, 2>(2, 0) = w;
    return out;
}

/// Anticommutator kernel
///   i/(4 pi |x-y|^3) [ (sigma.nu_x)(sigma.(x-y)) + (sigma.(x-y))(sigma.nu_y) ].
/// Weakly singular on a smooth surface: O(1/|x-y|) as y -> x.
inline SpinMatrix z_kernel(const Vec3& x, const Vec3& y, const Vec3& nu_x, const Vec3& nu_y)
{
    const Vec3 d = x - y;
    detail::require_nonzero(d);
    const double r = d.norm();
    const SpinMatrix sd = sigma_dot(d);
    const SpinMatrix acom = sigma_dot(nu_x) * sd + sd * sigma_dot(nu_y);
    return (cplx_i / (4.0 * std::numbers::pi * r * r * r)) * acom;
}

} // namespace shellspec
