#pragma once

#include <memory>
#include <string>
#include <vector>

#include "shellspec/clifford.hpp"

namespace shellspec {

enum class SurfaceFamily { sphere, ellipsoid, torus, revolution };

std::string family_name(SurfaceFamily f);

/// Value and first/second parameter derivatives of the chart map at (u, v).
struct ChartJet {
    Vec3 p;
    Vec3 du, dv;
    Vec3 duu, duv, dvv;
};

/// Closed parametric surface given by a single chart (u, v) -> R^3 with
/// analytic derivatives. The v direction is always 2*pi periodic. The u
/// direction is either 2*pi periodic (torus-like) or a polar angle on
/// [0, pi] whose smooth continuation satisfies phi(-u, v) = phi(u, v + pi),
/// so patches near a pole can be evaluated without leaving the chart.
class Chart {
public:
    virtual ~Chart() = default;

    virtual ChartJet jet(double u, double v) const = 0;
    virtual SurfaceFamily family() const = 0;

    bool u_periodic() const { return u_periodic_; }
    double u_extent() const { return u_extent_; }  // pi (polar) or 2*pi (periodic)
    int genus() const { return genus_; }

    /// +1 if du x dv points outward, -1 otherwise.
    double orientation() const { return orientation_; }

    /// Maps (u, v) into the fundamental domain (polar reflection and/or
    /// periodic wrap). The image is the same surface point.
    void canonicalize(double& u, double& v) const;

protected:
    Chart(bool u_periodic, double u_extent, int genus, double orientation)
        : u_periodic_(u_periodic), u_extent_(u_extent), genus_(genus),
          orientation_(orientation) {}

    bool u_periodic_;
    double u_extent_;
    int genus_;
    double orientation_;
};

class SphereChart final : public Chart {
public:
    explicit SphereChart(double radius);
    ChartJet jet(double u, double v) const override;
    SurfaceFamily family() const override { return SurfaceFamily::sphere; }
    double radius() const { return radius_; }

private:
    double radius_;
};

class EllipsoidChart final : public Chart {
public:
    EllipsoidChart(double a, double b, double c);
    ChartJet jet(double u, double v) const override;
    SurfaceFamily family() const override { return SurfaceFamily::ellipsoid; }

private:
    double a_, b_, c_;
};

/// Torus of revolution: u is the tube angle, v the axis angle.
/// Rejects R <= r (self-intersecting).
class TorusChart final : public Chart {
public:
    TorusChart(double major, double minor);
    ChartJet jet(double u, double v) const override;
    SurfaceFamily family() const override { return SurfaceFamily::torus; }
    double major() const { return major_; }
    double minor() const { return minor_; }

private:
    double major_, minor_;
};

/// Genus-1 surface of revolution: a closed generating curve
/// (rho(t), z(t)) in the meridian half-plane, given by finite Fourier
/// series, swept around the z axis. Requires rho > 0 along the curve.
class RevolutionChart final : public Chart {
public:
    struct Curve {
        // rho(t) = rho_cos[0] + sum_k rho_cos[k] cos(kt) + rho_sin[k-1] sin(kt)
        std::vector<double> rho_cos, rho_sin;
        std::vector<double> z_cos, z_sin;
    };
    explicit RevolutionChart(Curve curve);
    ChartJet jet(double u, double v) const override;
    SurfaceFamily family() const override { return SurfaceFamily::revolution; }

private:
    void profile(double t, double& rho, double& drho, double& ddrho,
                 double& z, double& dz, double& ddz) const;
    Curve curve_;
};

} // namespace shellspec
