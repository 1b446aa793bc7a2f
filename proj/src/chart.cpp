#include "shellspec/chart.hpp"

#include <cmath>
#include <numbers>

#include "shellspec/errors.hpp"

namespace shellspec {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_period(double x, double period)
{
    x = std::fmod(x, period);
    if (x < 0) x += period;
    return x;
}
} // namespace

std::string family_name(SurfaceFamily f)
{
    switch (f) {
        case SurfaceFamily::sphere: return "sphere";
        case SurfaceFamily::ellipsoid: return "ellipsoid";
        case SurfaceFamily::torus: return "torus";
        case SurfaceFamily::revolution: return "revolution";
    }
    return "unknown";
}

void Chart::canonicalize(double& u, double& v) const
{
    if (u_periodic_) {
        u = wrap_period(u, u_extent_);
    } else {
        // reflect across the poles: phi(-u, v) = phi(u, v + pi)
        u = std::fmod(u, 2.0 * u_extent_);
        if (u < 0) u += 2.0 * u_extent_;
        if (u > u_extent_) {
            u = 2.0 * u_extent_ - u;
            v += std::numbers::pi;
        }
    }
    v = wrap_period(v, two_pi);
}

SphereChart::SphereChart(double radius)
    : Chart(false, std::numbers::pi, 0, +1.0), radius_(radius)
{
    if (!(radius > 0)) throw ValidationError("sphere: radius must be positive");
}

ChartJet SphereChart::jet(double u, double v) const
{
    const double su = std::sin(u), cu = std::cos(u);
    const double sv = std::sin(v), cv = std::cos(v);
    const double R = radius_;
    ChartJet j;
    j.p = R * Vec3(su * cv, su * sv, cu);
    j.du = R * Vec3(cu * cv, cu * sv, -su);
    j.dv = R * Vec3(-su * sv, su * cv, 0.0);
    j.duu = -j.p;
    j.duv = R * Vec3(-cu * sv, cu * cv, 0.0);
    j.dvv = R * Vec3(-su * cv, -su * sv, 0.0);
    return j;
}

EllipsoidChart::EllipsoidChart(double a, double b, double c)
    : Chart(false, std::numbers::pi, 0, +1.0), a_(a), b_(b), c_(c)
{
    if (!(a > 0 && b > 0 && c > 0))
        throw ValidationError("ellipsoid: semi-axes must be positive");
}

ChartJet EllipsoidChart::jet(double u, double v) const
{
    const double su = std::sin(u), cu = std::cos(u);
    const double sv = std::sin(v), cv = std::cos(v);
    ChartJet j;
    j.p = Vec3(a_ * su * cv, b_ * su * sv, c_ * cu);
    j.du = Vec3(a_ * cu * cv, b_ * cu * sv, -c_ * su);
    j.dv = Vec3(-a_ * su * sv, b_ * su * cv, 0.0);
    j.duu = -j.p;
    j.duv = Vec3(-a_ * cu * sv, b_ * cu * cv, 0.0);
    j.dvv = Vec3(-a_ * su * cv, -b_ * su * sv, 0.0);
    return j;
}

TorusChart::TorusChart(double major, double minor)
    // du x dv points inward for this parametrization
    : Chart(true, two_pi, 1, -1.0), major_(major), minor_(minor)
{
    if (!(minor > 0)) throw ValidationError("torus: minor radius must be positive");
    if (!(major > minor))
        throw ValidationError("torus: self-intersecting (requires R > r)");
}

ChartJet TorusChart::jet(double u, double v) const
{
    const double su = std::sin(u), cu = std::cos(u);
    const double sv = std::sin(v), cv = std::cos(v);
    const double ring = major_ + minor_ * cu;
    ChartJet j;
    j.p = Vec3(ring * cv, ring * sv, minor_ * su);
    j.du = Vec3(-minor_ * su * cv, -minor_ * su * sv, minor_ * cu);
    j.dv = Vec3(-ring * sv, ring * cv, 0.0);
    j.duu = Vec3(-minor_ * cu * cv, -minor_ * cu * sv, -minor_ * su);
    j.duv = Vec3(minor_ * su * sv, -minor_ * su * cv, 0.0);
    j.dvv = Vec3(-ring * cv, -ring * sv, 0.0);
    return j;
}

RevolutionChart::RevolutionChart(Curve curve)
    : Chart(true, two_pi, 1, +1.0), curve_(std::move(curve))
{
    if (curve_.rho_cos.empty() || curve_.z_cos.empty())
        throw ValidationError("revolution: generating curve needs coefficients");
    // reject curves touching or crossing the axis
    double rho_max = -1.0, t_max = 0.0;
    for (int k = 0; k < 4096; ++k) {
        const double t = two_pi * k / 4096;
        double rho, d1, d2, z, e1, e2;
        profile(t, rho, d1, d2, z, e1, e2);
        if (!(rho > 0))
            throw ValidationError("revolution: generating curve must stay at rho > 0");
        if (rho > rho_max) { rho_max = rho; t_max = t; }
    }
    // orient by the outermost point: there the outward normal has a
    // positive radial component
    const ChartJet j = jet(t_max, 0.0);
    const Vec3 raw = j.du.cross(j.dv);
    orientation_ = raw.dot(Vec3(1, 0, 0)) >= 0 ? +1.0 : -1.0;
}

void RevolutionChart::profile(double t, double& rho, double& drho, double& ddrho,
                              double& z, double& dz, double& ddz) const
{
    auto eval = [t](const std::vector<double>& cs, const std::vector<double>& sn,
                    double& f, double& df, double& ddf) {
        f = cs.empty() ? 0.0 : cs[0];
        df = 0.0;
        ddf = 0.0;
        for (std::size_t k = 1; k < cs.size(); ++k) {
            const double kk = static_cast<double>(k);
            f += cs[k] * std::cos(kk * t);
            df -= cs[k] * kk * std::sin(kk * t);
            ddf -= cs[k] * kk * kk * std::cos(kk * t);
        }
        for (std::size_t k = 1; k <= sn.size(); ++k) {
            const double kk = static_cast<double>(k);
            f += sn[k - 1] * std::sin(kk * t);
            df += sn[k - 1] * kk * std::cos(kk * t);
            ddf -= sn[k - 1] * kk * kk * std::sin(kk * t);
        }
    };
    eval(curve_.rho_cos, curve_.rho_sin, rho, drho, ddrho);
    eval(curve_.z_cos, curve_.z_sin, z, dz, ddz);
}

ChartJet RevolutionChart::jet(double u, double v) const
{
    double rho, drho, ddrho, z, dz, ddz;
    profile(u, rho, drho, ddrho, z, dz, ddz);
    const double sv = std::sin(v), cv = std::cos(v);
    ChartJet j;
    j.p = Vec3(rho * cv, rho * sv, z);
    j.du = Vec3(drho * cv, drho * sv, dz);
    j.dv = Vec3(-rho * sv, rho * cv, 0.0);
    j.duu = Vec3(ddrho * cv, ddrho * sv, ddz);
    j.duv = Vec3(-drho * sv, drho * cv, 0.0);
    j.dvv = Vec3(-rho * cv, -rho * sv, 0.0);
    return j;
}

} // namespace shellspec
