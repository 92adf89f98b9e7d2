#pragma once

namespace helix::geometry {

/// A finite helicoid x = rho cos(omega z), y = rho sin(omega z), 0 <= rho <= rho_max, 0 <= z <= height.
struct HelicoidGeometry {
    double omega = 0.0;   ///< twist density, 2 pi times complete turns per unit length
    double rho_max = 1.0; ///< radial extent of the stripe
    double height = 1.0;  ///< axial extent

    /// Throws ContractError unless omega >= 0, rho_max > 0, height > 0.
    static HelicoidGeometry make(double omega, double rho_max, double height);

    /// Dimensionless stripe width omega * rho_max.
    double xi_max() const noexcept { return omega * rho_max; }
};

struct CurvatureSample {
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double mean = 0.0;
    double gaussian = 0.0;
};

CurvatureSample principal_curvatures(const HelicoidGeometry &geometry, double rho);

/// Thin-layer potential -(hbar^2/2m)(M^2 - K_G); `energy_unit` is hbar^2/2m in the caller's units.
double geometric_potential(const HelicoidGeometry &geometry, double rho, double energy_unit);

/// Bracket of the dimensionless radial equation: centrifugal term plus geometry-induced well.
double effective_potential(int l, double xi);

/// Area of the finite helicoid; the untwisted strip (omega = 0) gives height * rho_max.
double helicoid_area(const HelicoidGeometry &geometry);

/// Height that keeps the area fixed when the twist density changes from omega_from to omega_to
/// at constant radial extent R.
double height_for_constant_area(double omega_from, double omega_to, double R, double h_from);

} // namespace helix::geometry
