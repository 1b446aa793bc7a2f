#pragma once

#include <Eigen/Dense>
#include <complex>

namespace shellspec {

using Vec3 = Eigen::Vector3d;
using SpinMatrix = Eigen::Matrix2cd;   // 2x2 complex, carries the Pauli algebra
using DiracMatrix = Eigen::Matrix4cd;  // 4x4 complex, carries the alpha/beta algebra

inline constexpr std::complex<double> cplx_i{0.0, 1.0};

/// Pauli matrix sigma_j, j in {1,2,3}.
inline SpinMatrix pauli(int j)
{
    SpinMatrix s = SpinMatrix::Zero();
    switch (j) {
        case 1: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
        case 2: s(0, 1) = -cplx_i; s(1, 0) = cplx_i; break;
        case 3: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
        default: throw std::invalid_argument("pauli: index must be 1, 2 or 3");
    }
    return s;
}

/// sigma . x = x1*sigma1 + x2*sigma2 + x3*sigma3.
inline SpinMatrix sigma_dot(const Vec3& x)
{
    SpinMatrix s;
    s(0, 0) = x[2];
    s(0, 1) = std::complex<double>(x[0], -x[1]);
    s(1, 0) = std::complex<double>(x[0], x[1]);
    s(1, 1) = -x[2];
    return s;
}

/// alpha . x: off-diagonal 2x2 blocks equal to sigma . x.
inline DiracMatrix alpha_dot(const Vec3& x)
{
    DiracMatrix a = DiracMatrix::Zero();
    const SpinMatrix s = sigma_dot(x);
    a.block<2, 2>(0, 2) = s;
    a.block<2, 2>(2, 0) = s;
    return a;
}

inline DiracMatrix alpha(int j)
{
    Vec3 e = Vec3::Zero();
    e[j - 1] = 1.0;
    return alpha_dot(e);
}

/// beta = diag(1, 1, -1, -1).
inline DiracMatrix beta_matrix()
{
    DiracMatrix b = DiracMatrix::Zero();
    b(0, 0) = 1.0;
    b(1, 1) = 1.0;
    b(2, 2) = -1.0;
    b(3, 3) = -1.0;
    return b;
}

} // namespace shellspec
