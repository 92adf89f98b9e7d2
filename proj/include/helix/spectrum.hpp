#pragma once

#include <functional>
#include <span>
#include <vector>

namespace helix::spectrum {

/// Hard-wall radial problem on 0 <= xi <= xi_max for angular quantum number l.
struct RadialProblem {
    double xi_max = 1.0;
    int l = 0;

    static RadialProblem make(double xi_max, int l);
};

/// n counts radial modes from 1 (nodeless); epsilon = 2 m E / (hbar omega)^2.
struct RadialMode {
    int n = 1;
    int l = 0;
    double epsilon = 0.0;
};

struct Spectrum {
    RadialProblem problem;
    std::vector<RadialMode> modes; ///< ascending in epsilon

    /// Eigenvalue of radial mode n (1-based).
    double epsilon(int n) const;
};

struct TrajectoryPoint {
    double xi;
    double chi;
    double dchi;
};

struct ShootResult {
    double boundary_value = 0.0; ///< chi(xi_max)
    double boundary_slope = 0.0; ///< chi'(xi_max)
    double peak = 0.0;           ///< max |chi| over the integration
    int nodes = 0;               ///< sign changes of chi on (0, xi_max); see integrate_radial
    std::vector<TrajectoryPoint> trajectory;
};

/// Integrates -chi'' + V_eff chi = epsilon chi from chi(0) = 0, chi'(0) = 1 to xi_max.
///
/// `nodes` counts sign changes of chi on (0, xi_max]. A final sign change is dropped when
/// |chi(xi_max)| <= 1e-6 * peak, so an eigenfunction reports only its interior zeros.
/// Throws IntegrationError if the stepper cannot make progress.
ShootResult integrate_radial(const RadialProblem &problem, double epsilon, bool keep_trajectory = false);

/// chi(xi; epsilon) at each of `points` (ascending, within [0, xi_max]) with the same
/// initial conditions as integrate_radial.
std::vector<double> radial_values_at(const RadialProblem &problem, double epsilon,
                                     std::span<const double> points);

struct SolverOptions {
    double scan_step = 0.1;      ///< initial width of the upper-bound search
    double epsilon_ceiling = 1e7; ///< give up past this eigenvalue
    double relative_tolerance = 1e-12;
};

/// Lowest `count` eigenvalues by shooting: node-count bisection brackets each level,
/// TOMS 748 refines the sign change of chi(xi_max).
/// Throws SearchExhaustedError when the ceiling is reached first.
Spectrum solve_modes(const RadialProblem &problem, int count, const SolverOptions &options = {});

/// Lowest `count` eigenvalues of the second-order finite-difference discretization with
/// `grid_points` interior nodes and Dirichlet ends. Independent of the shooting path.
Spectrum finite_difference_spectrum(const RadialProblem &problem, int grid_points, int count);

/// Same discretization for an arbitrary potential on (0, xi_max).
std::vector<double> finite_difference_eigenvalues(double xi_max,
                                                  const std::function<double(double)> &potential,
                                                  int grid_points, int count);

/// Richardson extrapolation (4 e(2N) - e(N)) / 3 of the finite-difference eigenvalues.
std::vector<double> finite_difference_extrapolated(const RadialProblem &problem, int grid_points,
                                                   int count);

/// Confluent Heun function HeunC(alpha, beta, gamma, delta, eta, z) (Maple normalization,
/// HeunC(..., 0) = 1) from its Frobenius series about z = 0. Requires |z| < 1.
double heun_c(double alpha, double beta, double gamma, double delta, double eta, double z);

/// Closed-form odd radial solution
///   (1 + xi^2)^(1/2 + sqrt5/4) xi HeunC(0, 1/2, sqrt5/2, -eps/4, 5/8 - l^2/4 + eps/4, -xi^2),
/// normalized so that chi'(0) = 1. Throws OutOfDiskError for xi >= 1.
double heun_wavefunction(double epsilon, int l, double xi);

/// Large-xi (Bessel) levels energy_unit / rho_B^2 [(n + 1/2) pi + l pi / 2 + pi / 4]^2, n >= 0.
double flat_energy(int n, int l, double rho_b, double energy_unit);

/// Solves every problem in `problems` (OpenMP over problems; output order follows input).
std::vector<Spectrum> solve_grid(std::span<const RadialProblem> problems, int count,
                                 const SolverOptions &options = {});

} // namespace helix::spectrum

namespace helix::reference {

std::vector<spectrum::Spectrum> solve_grid(std::span<const spectrum::RadialProblem> problems, int count,
                                           const spectrum::SolverOptions &options = {});

std::vector<double> finite_difference_eigenvalues(double xi_max,
                                                  const std::function<double(double)> &potential,
                                                  int grid_points, int count);

} // namespace helix::reference
