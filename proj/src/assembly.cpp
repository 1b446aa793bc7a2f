#include "shellspec/assembly.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "shellspec/errors.hpp"
#include "shellspec/geometry.hpp"
#include "shellspec/parallel.hpp"
#include "shellspec/quadrature.hpp"

namespace shellspec {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct PatchGeometry {
    double rho0 = 0;
    double blend_start = 0.5;
    std::vector<double> r_nodes, r_weights;          // Gauss on (0, rho0)
    std::vector<std::array<double, 2>> directions;   // exact antipodal pairs
    double w_angular = 0;

    /// C-infinity radial cutoff: 1 below blend_start * rho0, 0 at rho0.
    double chi(double rho) const
    {
        const double x = (rho / rho0 - blend_start) / (1.0 - blend_start);
        if (x <= 0.0) return 1.0;
        if (x >= 1.0) return 0.0;
        const double fa = std::exp(-1.0 / x), fb = std::exp(-1.0 / (1.0 - x));
        return fb / (fa + fb);
    }
};

PatchGeometry make_patch(const SurfaceGrid& grid, const PatchRule& rule)
{
    if (rule.n_angular < 2 || rule.n_angular % 2 != 0)
        throw ValidationError("PatchRule: n_angular must be even and >= 2");
    if (rule.n_radial < 2) throw ValidationError("PatchRule: n_radial must be >= 2");
    if (!(rule.blend_start > 0.0) || !(rule.blend_start < 1.0))
        throw ValidationError("PatchRule: blend_start must lie in (0, 1)");

    PatchGeometry pg;
    pg.rho0 = rule.radius_mult * std::max(grid.spacing_u, grid.spacing_v);
    // keep the disc below half the image separation so a surface point has
    // at most one parameter image inside it
    pg.rho0 = std::min(pg.rho0, 1.5);
    pg.blend_start = rule.blend_start;

    Rule1D radial = gauss_legendre(rule.n_radial, 0.0, pg.rho0);
    pg.r_nodes = radial.nodes;
    pg.r_weights = radial.weights;

    const int na = rule.n_angular;
    pg.directions.resize(na);
    for (int k = 0; k < na / 2; ++k) {
        const double psi = two_pi * (k + 0.5) / na;
        pg.directions[k] = {std::cos(psi), std::sin(psi)};
        pg.directions[k + na / 2] = {-pg.directions[k][0], -pg.directions[k][1]};
    }
    pg.w_angular = two_pi / na;
    return pg;
}

void symmetrize_weights(const SurfaceGrid& grid, int channels, CMat& a)
{
    const long n = grid.size();
    Eigen::VectorXd scale(channels * n);
    for (long i = 0; i < n; ++i) {
        const double s = std::sqrt(grid.weights[i]);
        for (int c = 0; c < channels; ++c) scale[channels * i + c] = s;
    }
    for (long j = 0; j < a.cols(); ++j)
        for (long i = 0; i < a.rows(); ++i)
            a(i, j) *= scale[i] / scale[j];
}

/// Generic dense Nystrom assembly. The kernel functor maps
/// (target index, source point, source normal) to a C x C block.
template <int C, typename Kernel>
CMat assemble_dense(const SurfaceGrid& grid, const PatchRule& rule, Kernel&& kern)
{
    const long n = grid.size();
    const PatchGeometry pg = make_patch(grid, rule);
    const double rho2 = pg.rho0 * pg.rho0;

    std::vector<double> us(n), vs(n);
    for (long i = 0; i < n; ++i) {
        us[i] = grid.u_nodes[i / grid.n_v];
        vs[i] = grid.v_nodes[i % grid.n_v];
    }

    CMat a = CMat::Zero(C * n, C * n);

    // far field: product rule weighted by (1 - chi), column-major traversal
    parallel_for(n, [&](long j) {
        const Vec3 yj = grid.points[j];
        const Vec3 nj = grid.normals[j];
        const double wj = grid.weights[j];
        for (long i = 0; i < n; ++i) {
            const double d2 = grid.min_image_dist2(us[i], vs[i], us[j], vs[j]);
            double weight = wj;
            if (d2 < rho2) {
                const double cut = 1.0 - pg.chi(std::sqrt(d2));
                if (cut == 0.0) continue;  // covers the singular j == i term
                weight *= cut;
            }
            a.template block<C, C>(C * i, C * j) += weight * kern(i, yj, nj);
        }
    });

    // local polar patch around each target, integrand weighted by chi
    parallel_for(n, [&](long i) {
        std::vector<SurfaceGrid::StencilEntry> stencil;
        for (const auto& dir : pg.directions) {
            for (std::size_t q = 0; q < pg.r_nodes.size(); ++q) {
                const double rho = pg.r_nodes[q];
                const double cut = pg.chi(rho);
                if (cut == 0.0) continue;
                double uc = us[i] + rho * dir[0];
                double vc = vs[i] + rho * dir[1];
                grid.chart->canonicalize(uc, vc);
                const ChartJet jet = grid.chart->jet(uc, vc);
                const Vec3 raw = jet.du.cross(jet.dv);
                const double gphi = raw.norm();
                const Vec3 nu = grid.chart->orientation() / gphi * raw;
                const auto val = kern(i, jet.p, nu);
                const double wq = pg.w_angular * pg.r_weights[q] * rho * gphi * cut;
                grid.interp_stencil(uc, vc, stencil);
                for (const auto& s : stencil)
                    a.template block<C, C>(C * i, C * s.node) += (wq * s.coeff) * val;
            }
        }
    });
    return a;
}

void hermitize(CMat& a)
{
    a = 0.5 * (a + CMat(a.adjoint()));
}

} // namespace

DiscreteOperator assemble_K(std::shared_ptr<const SurfaceGrid> grid, const PhysParams& p,
                            const PatchRule& patch, bool symmetrize)
{
    const SurfaceGrid& g = *grid;
    auto kern = [&g, &p](long i, const Vec3& y, const Vec3&) {
        Eigen::Matrix<Cplx, 1, 1> out;
        out(0, 0) = k_lambda(g.points[i] - y, p);
        return out;
    };
    DiscreteOperator op;
    op.mat = assemble_dense<1>(g, patch, kern);
    op.channels = 1;
    op.grid = std::move(grid);
    op.symmetrized = symmetrize;
    if (symmetrize) {
        symmetrize_weights(g, 1, op.mat);
        hermitize(op.mat);
    }
    return op;
}

DiscreteOperator assemble_W(std::shared_ptr<const SurfaceGrid> grid, const PhysParams& p,
                            const PatchRule& patch, bool symmetrize)
{
    const SurfaceGrid& g = *grid;
    auto kern = [&g, &p](long i, const Vec3& y, const Vec3&) -> SpinMatrix {
        return w_lambda(g.points[i] - y, p);
    };
    DiscreteOperator op;
    op.mat = assemble_dense<2>(g, patch, kern);
    op.channels = 2;
    op.grid = std::move(grid);
    op.symmetrized = symmetrize;
    if (symmetrize) {
        symmetrize_weights(g, 2, op.mat);
        hermitize(op.mat);
    }
    return op;
}

DiscreteOperator assemble_Z(std::shared_ptr<const SurfaceGrid> grid, const PhysParams& p,
                            const PatchRule& patch, bool symmetrize)
{
    (void)p;  // z is mass-independent in this form
    const SurfaceGrid& g = *grid;
    auto kern = [&g](long i, const Vec3& y, const Vec3& nu_y) -> SpinMatrix {
        return z_kernel(g.points[i], y, g.normals[i], nu_y);
    };
    DiscreteOperator op;
    op.mat = assemble_dense<2>(g, patch, kern);
    op.channels = 2;
    op.grid = std::move(grid);
    op.symmetrized = symmetrize;
    if (symmetrize) {
        symmetrize_weights(g, 2, op.mat);
        hermitize(op.mat);
    }
    return op;
}

void apply_nu_left(const SurfaceGrid& grid, CMat& m)
{
    const long n = grid.size();
    std::vector<SpinMatrix> s(n);
    for (long i = 0; i < n; ++i) s[i] = sigma_dot(grid.normals[i]);
    parallel_for(m.cols(), [&](long col) {
        for (long i = 0; i < n; ++i) {
            const Cplx a = m(2 * i, col), b = m(2 * i + 1, col);
            m(2 * i, col) = s[i](0, 0) * a + s[i](0, 1) * b;
            m(2 * i + 1, col) = s[i](1, 0) * a + s[i](1, 1) * b;
        }
    });
}

namespace {
void apply_nu_right(const SurfaceGrid& grid, CMat& m)
{
    const long n = grid.size();
    parallel_for(n, [&](long j) {
        const SpinMatrix s = sigma_dot(grid.normals[j]);
        const long c0 = 2 * j, c1 = 2 * j + 1;
        for (long i = 0; i < m.rows(); ++i) {
            const Cplx a = m(i, c0), b = m(i, c1);
            m(i, c0) = a * s(0, 0) + b * s(1, 0);
            m(i, c1) = a * s(0, 1) + b * s(1, 1);
        }
    });
}
} // namespace

DiscreteOperator assemble_Z_anticommutator(std::shared_ptr<const SurfaceGrid> grid,
                                           const PhysParams& p, const PatchRule& patch)
{
    DiscreteOperator w = assemble_W(grid, p, patch, true);
    CMat left = w.mat;
    apply_nu_left(*grid, left);
    apply_nu_right(*grid, w.mat);
    DiscreteOperator op;
    op.mat = left + w.mat;
    op.channels = 2;
    op.grid = std::move(grid);
    op.symmetrized = true;
    return op;
}

DiscreteOperator assemble_C(std::shared_ptr<const SurfaceGrid> grid, const PhysParams& p,
                            const PatchRule& patch)
{
    const DiscreteOperator k = assemble_K(grid, p, patch, true);
    const DiscreteOperator w = assemble_W(grid, p, patch, true);
    const long n = grid->size();
    DiscreteOperator op;
    op.channels = 4;
    op.grid = std::move(grid);
    op.symmetrized = true;
    op.mat = CMat::Zero(4 * n, 4 * n);
    for (long j = 0; j < n; ++j)
        for (long i = 0; i < n; ++i) {
            const Cplx kij = k.mat(i, j);
            op.mat(4 * i, 4 * j) = (p.lambda + p.m) * kij;
            op.mat(4 * i + 1, 4 * j + 1) = (p.lambda + p.m) * kij;
            op.mat(4 * i + 2, 4 * j + 2) = (p.lambda - p.m) * kij;
            op.mat(4 * i + 3, 4 * j + 3) = (p.lambda - p.m) * kij;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const Cplx wab = w.mat(2 * i + a, 2 * j + b);
                    op.mat(4 * i + a, 4 * j + 2 + b) = wab;
                    op.mat(4 * i + 2 + a, 4 * j + b) = wab;
                }
        }
    return op;
}

DiscreteOperator nu_multiplier(std::shared_ptr<const SurfaceGrid> grid, int channels)
{
    if (channels != 2 && channels != 4)
        throw ValidationError("nu_multiplier: channels must be 2 or 4");
    const long n = grid->size();
    DiscreteOperator op;
    op.channels = channels;
    op.mat = CMat::Zero(channels * n, channels * n);
    for (long i = 0; i < n; ++i) {
        if (channels == 2) {
            op.mat.block<2, 2>(2 * i, 2 * i) = sigma_dot(grid->normals[i]);
        } else {
            op.mat.block<4, 4>(4 * i, 4 * i) = alpha_dot(grid->normals[i]);
        }
    }
    op.grid = std::move(grid);
    return op;
}

DiscreteOperator inv_sqrt(const DiscreteOperator& op)
{
    HermEig eig = eig_hermitian(op.mat);
    const double lo = eig.values[0];
    if (!(lo > 0)) {
        std::ostringstream os;
        os << "inv_sqrt: operator not positive definite (smallest eigenvalue " << lo
           << "); grid too coarse for this decay rate";
        throw NumericalError(os.str());
    }
    CMat scaled = eig.vectors;
    for (long k = 0; k < scaled.cols(); ++k)
        scaled.col(k) *= 1.0 / std::sqrt(eig.values[k]);
    DiscreteOperator out;
    out.mat = gemm(scaled, eig.vectors.adjoint());
    hermitize(out.mat);
    out.channels = op.channels;
    out.grid = op.grid;
    out.symmetrized = op.symmetrized;
    return out;
}

namespace {

// strided channel views for the block applications
void apply_k_kron2(const CMat& k, const CVec& x, CVec& y)
{
    const long n = k.rows();
    using StrideT = Eigen::InnerStride<2>;
    for (int c = 0; c < 2; ++c) {
        Eigen::Map<const CVec, 0, StrideT> xc(x.data() + c, n);
        Eigen::Map<CVec, 0, StrideT> yc(y.data() + c, n);
        yc.noalias() = k * xc;
    }
}

struct BlockC {
    const CMat& k;  // 1-channel
    const CMat& w;  // 2-channel
    double lp, lm;  // lambda + m, lambda - m
    mutable CVec xu, xl, yu, yl, t;

    explicit BlockC(const CMat& k_, const CMat& w_, const PhysParams& p)
        : k(k_), w(w_), lp(p.lambda + p.m), lm(p.lambda - p.m)
    {
        const long n2 = w.rows();
        xu.resize(n2);
        xl.resize(n2);
        yu.resize(n2);
        yl.resize(n2);
        t.resize(n2);
    }

    // y = C x on the 4-channel node-major layout
    void apply(const CVec& x, CVec& y) const
    {
        const long n = k.rows();
        for (long i = 0; i < n; ++i) {
            xu[2 * i] = x[4 * i];
            xu[2 * i + 1] = x[4 * i + 1];
            xl[2 * i] = x[4 * i + 2];
            xl[2 * i + 1] = x[4 * i + 3];
        }
        apply_k_kron2(k, xu, t);
        yu.noalias() = w * xl;
        yu += lp * t;
        apply_k_kron2(k, xl, t);
        yl.noalias() = w * xu;
        yl += lm * t;
        for (long i = 0; i < n; ++i) {
            y[4 * i] = yu[2 * i];
            y[4 * i + 1] = yu[2 * i + 1];
            y[4 * i + 2] = yl[2 * i];
            y[4 * i + 3] = yl[2 * i + 1];
        }
    }
};

void apply_alpha_nu(const SurfaceGrid& grid, CVec& x)
{
    const long n = grid.size();
    for (long i = 0; i < n; ++i) {
        const SpinMatrix s = sigma_dot(grid.normals[i]);
        const Cplx u0 = x[4 * i], u1 = x[4 * i + 1];
        const Cplx l0 = x[4 * i + 2], l1 = x[4 * i + 3];
        x[4 * i] = s(0, 0) * l0 + s(0, 1) * l1;
        x[4 * i + 1] = s(1, 0) * l0 + s(1, 1) * l1;
        x[4 * i + 2] = s(0, 0) * u0 + s(0, 1) * u1;
        x[4 * i + 3] = s(1, 0) * u0 + s(1, 1) * u1;
    }
}

void apply_sigma_nu(const SurfaceGrid& grid, CVec& x)
{
    const long n = grid.size();
    for (long i = 0; i < n; ++i) {
        const SpinMatrix s = sigma_dot(grid.normals[i]);
        const Cplx a = x[2 * i], b = x[2 * i + 1];
        x[2 * i] = s(0, 0) * a + s(0, 1) * b;
        x[2 * i + 1] = s(1, 0) * a + s(1, 1) * b;
    }
}

} // namespace

namespace {
// (K (x) I4) x on the 4-channel layout
void apply_k_kron4(const CMat& k, const CVec& x, CVec& y)
{
    const long n = k.rows();
    using StrideT = Eigen::InnerStride<4>;
    for (int c = 0; c < 4; ++c) {
        Eigen::Map<const CVec, 0, StrideT> xc(x.data() + c, n);
        Eigen::Map<CVec, 0, StrideT> yc(y.data() + c, n);
        yc.noalias() = k * xc;
    }
}
} // namespace

namespace {

double pri_residual(const SurfaceGrid& g, const CMat& kmat, const CMat& wmat,
                    const PhysParams& p)
{
    const BlockC c(kmat, wmat, p);
    const long dim = 4 * g.size();
    CVec t1(dim), t2(dim);
    // F = K4 [(Anu C)^2 + I/4] K4,  F^H = K4 [(C Anu)^2 + I/4] K4
    auto apply = [&](const CVec& x, CVec& y) {
        apply_k_kron4(kmat, x, t1);
        c.apply(t1, y);
        apply_alpha_nu(g, y);
        c.apply(y, t2);
        apply_alpha_nu(g, t2);
        t2 += 0.25 * t1;
        apply_k_kron4(kmat, t2, y);
    };
    auto apply_h = [&](const CVec& x, CVec& y) {
        apply_k_kron4(kmat, x, t1);
        t2 = t1;
        apply_alpha_nu(g, t2);
        c.apply(t2, y);
        apply_alpha_nu(g, y);
        c.apply(y, t2);
        t2 += 0.25 * t1;
        apply_k_kron4(kmat, t2, y);
    };
    return operator_norm(apply, apply_h, dim, 150, 1e-6);
}

} // namespace

double check_identity_PRI(std::shared_ptr<const SurfaceGrid> grid, const PhysParams& p,
                          const PatchRule& patch)
{
    const SurfaceGrid& g = *grid;
    const DiscreteOperator k = assemble_K(grid, p, patch, true);
    const DiscreteOperator w = assemble_W(grid, p, patch, true);
    return pri_residual(g, k.mat, w.mat, p);
}

namespace {

double wk_residual(const SurfaceGrid& g, const CMat& kmat, const CMat& wmat,
                   const PhysParams& p)
{
    const long dim = 2 * g.size();
    const double kappa = p.lambda * p.lambda - p.m * p.m;  // = -tau^2

    CVec kx(dim), t1(dim), t2(dim), acc(dim);
    // G = ((sigma.nu) W)^2 + kappa ((sigma.nu) K2)^2 + I/4, weighted K2 G K2
    auto apply = [&](const CVec& x, CVec& y) {
        apply_k_kron2(kmat, x, kx);
        t1.noalias() = wmat * kx;
        apply_sigma_nu(g, t1);
        t2.noalias() = wmat * t1;
        apply_sigma_nu(g, t2);
        acc = t2 + 0.25 * kx;
        apply_k_kron2(kmat, kx, t1);
        apply_sigma_nu(g, t1);
        apply_k_kron2(kmat, t1, t2);
        apply_sigma_nu(g, t2);
        acc += kappa * t2;
        apply_k_kron2(kmat, acc, y);
    };
    auto apply_h = [&](const CVec& x, CVec& y) {
        apply_k_kron2(kmat, x, kx);
        t1 = kx;
        apply_sigma_nu(g, t1);
        t2.noalias() = wmat * t1;
        apply_sigma_nu(g, t2);
        acc.noalias() = wmat * t2;
        acc += 0.25 * kx;
        t1 = kx;
        apply_sigma_nu(g, t1);
        apply_k_kron2(kmat, t1, t2);
        apply_sigma_nu(g, t2);
        apply_k_kron2(kmat, t2, t1);
        acc += kappa * t1;
        apply_k_kron2(kmat, acc, y);
    };
    return operator_norm(apply, apply_h, dim, 150, 1e-6);
}

} // namespace

double check_identity_WK(std::shared_ptr<const SurfaceGrid> grid, const PhysParams& p,
                         const PatchRule& patch)
{
    const SurfaceGrid& g = *grid;
    const DiscreteOperator k = assemble_K(grid, p, patch, true);
    const DiscreteOperator w = assemble_W(grid, p, patch, true);
    return wk_residual(g, k.mat, w.mat, p);
}

IdentityResiduals check_identities(std::shared_ptr<const SurfaceGrid> grid,
                                   const PhysParams& p, const PatchRule& patch)
{
    const SurfaceGrid& g = *grid;
    const DiscreteOperator k = assemble_K(grid, p, patch, true);
    const DiscreteOperator w = assemble_W(grid, p, patch, true);
    return {pri_residual(g, k.mat, w.mat, p), wk_residual(g, k.mat, w.mat, p)};
}

void DiscreteOperator::save(const std::filesystem::path& path) const
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
    const char magic[4] = {'S', 'H', 'S', 'P'};
    const std::uint32_t n = static_cast<std::uint32_t>(nodes());
    const std::uint32_t ch = static_cast<std::uint32_t>(channels);
    const std::uint32_t reserved = 0;
    out.write(magic, 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&ch), 4);
    out.write(reinterpret_cast<const char*>(&reserved), 4);
    std::vector<Cplx> row(mat.cols());
    for (long i = 0; i < mat.rows(); ++i) {
        for (long j = 0; j < mat.cols(); ++j) row[j] = mat(i, j);
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(sizeof(Cplx) * row.size()));
    }
    if (!out) throw NumericalError("short write to " + path.string());
}

DiscreteOperator DiscreteOperator::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    char magic[4];
    std::uint32_t n = 0, ch = 0, reserved = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&ch), 4);
    in.read(reinterpret_cast<char*>(&reserved), 4);
    if (!in || std::memcmp(magic, "SHSP", 4) != 0)
        throw ValidationError(path.string() + ": not a SHSP operator dump");
    DiscreteOperator op;
    op.channels = static_cast<int>(ch);
    const long dim = static_cast<long>(n) * ch;
    op.mat.resize(dim, dim);
    std::vector<Cplx> row(dim);
    for (long i = 0; i < dim; ++i) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(sizeof(Cplx) * row.size()));
        for (long j = 0; j < dim; ++j) op.mat(i, j) = row[j];
    }
    if (!in) throw ValidationError(path.string() + ": truncated operator dump");
    return op;
}

} // namespace shellspec
