#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>

namespace shellspec {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// C = A * B via BLAS zgemm.
CMat gemm(const CMat& a, const CMat& b);

struct HermEig {
    Eigen::VectorXd values;  // ascending
    CMat vectors;            // columns
};

/// Hermitian eigendecomposition (zheevd). Uses the lower triangle.
HermEig eig_hermitian(const CMat& a);
Eigen::VectorXd eig_hermitian_values(const CMat& a);

/// Eigenvalues of a general complex matrix (zgeev, no vectors).
CVec eig_general_values(const CMat& a);

/// All singular values, descending (zgesdd).
Eigen::VectorXd singular_values(const CMat& a);
double smallest_singular_value(const CMat& a);

/// Spectral norm of a linear map given by apply/apply-adjoint callbacks,
/// via power iteration on A^H A with a seeded start vector.
double operator_norm(const std::function<void(const CVec&, CVec&)>& apply,
                     const std::function<void(const CVec&, CVec&)>& apply_adjoint,
                     long dim, int max_iter = 300, double rel_tol = 1e-8,
                     std::uint64_t seed = 0x5eed5eedULL);

double operator_norm(const CMat& a, int max_iter = 300, double rel_tol = 1e-8);

/// A (x) I2 on node-major 2-channel layout: entry ((i,a),(j,b)) = A(i,j) d_ab.
CMat kron_identity2(const CMat& a);

} // namespace shellspec
