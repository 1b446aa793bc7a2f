#include "shellspec/linalg.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include <cblas.h>
#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "shellspec/errors.hpp"

namespace shellspec {

namespace {
void check_info(lapack_int info, const char* routine)
{
    if (info != 0)
        throw NumericalError(std::string(routine) + " failed with info=" +
                             std::to_string(info));
}
} // namespace

CMat gemm(const CMat& a, const CMat& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("gemm: shape mismatch");
    CMat c(a.rows(), b.cols());
    const Cplx one(1, 0), zero(0, 0);
    cblas_zgemm(CblasColMajor, CblasNoTrans, CblasNoTrans,
                static_cast<int>(a.rows()), static_cast<int>(b.cols()),
                static_cast<int>(a.cols()), &one, a.data(),
                static_cast<int>(a.rows()), b.data(), static_cast<int>(b.rows()),
                &zero, c.data(), static_cast<int>(c.rows()));
    return c;
}

HermEig eig_hermitian(const CMat& a)
{
    HermEig out;
    const lapack_int n = static_cast<lapack_int>(a.rows());
    out.vectors = a;
    out.values.resize(n);
    const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                           out.vectors.data(), n, out.values.data());
    check_info(info, "zheevd");
    return out;
}

Eigen::VectorXd eig_hermitian_values(const CMat& a)
{
    const lapack_int n = static_cast<lapack_int>(a.rows());
    CMat work = a;
    Eigen::VectorXd values(n);
    const lapack_int info =
        LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, values.data());
    check_info(info, "zheevd");
    return values;
}

CVec eig_general_values(const CMat& a)
{
    const lapack_int n = static_cast<lapack_int>(a.rows());
    CMat work = a;
    CVec values(n);
    const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(),
                                          n, values.data(), nullptr, 1, nullptr, 1);
    check_info(info, "zgeev");
    return values;
}

Eigen::VectorXd singular_values(const CMat& a)
{
    const lapack_int m = static_cast<lapack_int>(a.rows());
    const lapack_int n = static_cast<lapack_int>(a.cols());
    CMat work = a;
    Eigen::VectorXd sv(std::min(m, n));
    const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(),
                                           m, sv.data(), nullptr, 1, nullptr, 1);
    check_info(info, "zgesdd");
    return sv;
}

double smallest_singular_value(const CMat& a)
{
    const Eigen::VectorXd sv = singular_values(a);
    return sv[sv.size() - 1];
}

double operator_norm(const std::function<void(const CVec&, CVec&)>& apply,
                     const std::function<void(const CVec&, CVec&)>& apply_adjoint,
                     long dim, int max_iter, double rel_tol, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    CVec v(dim);
    for (long i = 0; i < dim; ++i) v[i] = Cplx(gauss(rng), gauss(rng));
    v /= v.norm();

    CVec av(dim), w(dim);
    double prev = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        apply(v, av);
        apply_adjoint(av, w);
        const double norm_w = w.norm();
        if (!(norm_w > 0)) return 0.0;
        const double est = std::sqrt(norm_w);
        v = w / norm_w;
        if (it > 4 && std::abs(est - prev) <= rel_tol * est) return est;
        prev = est;
    }
    return prev;
}

double operator_norm(const CMat& a, int max_iter, double rel_tol)
{
    auto apply = [&a](const CVec& x, CVec& y) { y.noalias() = a * x; };
    auto apply_h = [&a](const CVec& x, CVec& y) { y.noalias() = a.adjoint() * x; };
    return operator_norm(apply, apply_h, a.rows(), max_iter, rel_tol);
}

CMat kron_identity2(const CMat& a)
{
    const long n = a.rows();
    CMat out = CMat::Zero(2 * n, 2 * a.cols());
    for (long j = 0; j < a.cols(); ++j)
        for (long i = 0; i < n; ++i) {
            out(2 * i, 2 * j) = a(i, j);
            out(2 * i + 1, 2 * j + 1) = a(i, j);
        }
    return out;
}

} // namespace shellspec
