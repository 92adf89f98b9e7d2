#include "helix/geometry.hpp"

#include <cmath>
#include <string>

#include "helix/errors.hpp"

namespace helix::geometry {

namespace {

void check_rho(const HelicoidGeometry &geometry, double rho) {
    if (!(rho >= 0.0 && rho <= geometry.rho_max)) {
        throw ContractError("rho = " + std::to_string(rho) + " outside [0, " +
                            std::to_string(geometry.rho_max) + "]");
    }
}

// asinh(u) / u, finite at u = 0.
double asinh_over(double u) {
    if (std::abs(u) < 1e-4) {
        const double u2 = u * u;
        return 1.0 - u2 / 6.0 + 3.0 * u2 * u2 / 40.0;
    }
    return std::asinh(u) / u;
}

// area = h R shape(omega R) / 2
double area_shape(double u) { return std::sqrt(1.0 + u * u) + asinh_over(u); }

} // namespace

HelicoidGeometry HelicoidGeometry::make(double omega, double rho_max, double height) {
    if (!(omega >= 0.0) || !std::isfinite(omega)) {
        throw ContractError("omega must be finite and >= 0");
    }
    if (!(rho_max > 0.0) || !std::isfinite(rho_max)) {
        throw ContractError("rho_max must be finite and > 0");
    }
    if (!(height > 0.0) || !std::isfinite(height)) {
        throw ContractError("height must be finite and > 0");
    }
    return {omega, rho_max, height};
}

CurvatureSample principal_curvatures(const HelicoidGeometry &geometry, double rho) {
    check_rho(geometry, rho);
    const double w = geometry.omega;
    CurvatureSample s;
    s.kappa1 = w / (1.0 + w * w * rho * rho);
    s.kappa2 = -s.kappa1;
    s.mean = 0.5 * (s.kappa1 + s.kappa2);
    s.gaussian = s.kappa1 * s.kappa2;
    return s;
}

double geometric_potential(const HelicoidGeometry &geometry, double rho, double energy_unit) {
    if (!(energy_unit > 0.0)) {
        throw ContractError("energy_unit must be > 0");
    }
    const CurvatureSample c = principal_curvatures(geometry, rho);
    return -energy_unit * (c.mean * c.mean - c.gaussian);
}

double effective_potential(int l, double xi) {
    const double s = 1.0 + xi * xi;
    return static_cast<double>(l) * l / s - (1.0 + 0.5 * xi * xi) / (2.0 * s * s);
}

double helicoid_area(const HelicoidGeometry &geometry) {
    const double h = geometry.height;
    const double R = geometry.rho_max;
    if (geometry.omega == 0.0) {
        return h * R;
    }
    return 0.5 * h * R * area_shape(geometry.omega * R);
}

double height_for_constant_area(double omega_from, double omega_to, double R, double h_from) {
    if (!(omega_from >= 0.0) || !(omega_to >= 0.0) || !(R > 0.0) || !(h_from > 0.0)) {
        throw ContractError("height_for_constant_area: twist densities must be >= 0, R and h > 0");
    }
    if (omega_from == omega_to) {
        return h_from;
    }
    return h_from * area_shape(omega_from * R) / area_shape(omega_to * R);
}

} // namespace helix::geometry
