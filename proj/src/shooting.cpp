#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "helix/errors.hpp"
#include "helix/geometry.hpp"
#include "helix/spectrum.hpp"

namespace helix::spectrum {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;

constexpr double kAbsTol = 1e-15;
constexpr double kRelTol = 1e-12;
constexpr double kMaxSteps = 5e7;

struct RadialSystem {
    int l;
    double epsilon;

    void operator()(const State &y, State &dydx, double xi) const {
        dydx[0] = y[1];
        dydx[1] = (geometry::effective_potential(l, xi) - epsilon) * y[0];
    }
};

// Zeros of chi are at least pi / sqrt(max(eps - V)) apart and V >= -1/2, so steps below half
// that spacing cannot hide a pair of sign changes.
double max_step(const RadialProblem &problem, double epsilon) {
    const double k = std::sqrt(std::max(epsilon, 0.0) + 0.5);
    return std::min(problem.xi_max / 8.0, 0.5 * std::numbers::pi / k);
}

auto make_stepper(const RadialProblem &problem, double epsilon) {
    return odeint::make_controlled(kAbsTol, kRelTol, max_step(problem, epsilon),
                                   odeint::runge_kutta_fehlberg78<State>());
}

std::string describe(double epsilon) {
    std::ostringstream os;
    os.precision(17);
    os << epsilon;
    return os.str();
}

void check_step_budget(const RadialProblem &problem, double epsilon) {
    if (problem.xi_max / max_step(problem, epsilon) > kMaxSteps) {
        throw IntegrationError("radial integration step size underflows at epsilon = " + describe(epsilon), epsilon);
    }
}

struct RawShot {
    ShootResult result;
    int raw_sign_changes = 0; // including a change in the last step
};

RawShot shoot(const RadialProblem &problem, double epsilon, bool keep_trajectory) {
    if (!std::isfinite(epsilon)) {
        throw ContractError("integrate_radial: epsilon must be finite");
    }
    check_step_budget(problem, epsilon);
    RadialSystem system{problem.l, epsilon};
    State y{0.0, 1.0};
    RawShot shot;
    ShootResult &out = shot.result;

    int prev_sign = 0;
    int changes_before_last = 0;
    bool last_step_changed = false;
    const auto observer = [&](const State &s, double xi) {
        if (keep_trajectory) {
            out.trajectory.push_back({xi, s[0], s[1]});
        }
        out.peak = std::max(out.peak, std::abs(s[0]));
        if (xi == 0.0) {
            return;
        }
        const int sign = (s[0] > 0.0) - (s[0] < 0.0);
        last_step_changed = false;
        if (sign != 0) {
            if (prev_sign != 0 && sign != prev_sign) {
                last_step_changed = true;
            }
            prev_sign = sign;
        }
        if (last_step_changed) {
            ++shot.raw_sign_changes;
        }
        if (xi < problem.xi_max) {
            changes_before_last = shot.raw_sign_changes;
        }
    };

    const double dt0 = std::min(1e-3, max_step(problem, epsilon));
    try {
        odeint::integrate_adaptive(make_stepper(problem, epsilon), system, y, 0.0, problem.xi_max, dt0,
                                   observer);
    } catch (const odeint::step_adjustment_error &e) {
        throw IntegrationError("radial integration stalled at epsilon = " + describe(epsilon) + ": " +
                                   e.what(),
                               epsilon);
    }
    if (!std::isfinite(y[0]) || !std::isfinite(y[1])) {
        throw IntegrationError("radial integration diverged at epsilon = " + describe(epsilon), epsilon);
    }
    out.boundary_value = y[0];
    out.boundary_slope = y[1];
    const bool boundary_zero = std::abs(y[0]) <= 1e-6 * out.peak;
    out.nodes = boundary_zero ? changes_before_last : shot.raw_sign_changes;
    return shot;
}

} // namespace

RadialProblem RadialProblem::make(double xi_max, int l) {
    if (!(xi_max > 0.0) || !std::isfinite(xi_max)) {
        throw ContractError("xi_max must be finite and > 0");
    }
    if (l < 0) {
        throw ContractError("l must be >= 0");
    }
    return {xi_max, l};
}

double Spectrum::epsilon(int n) const {
    const auto it = std::find_if(modes.begin(), modes.end(), [n](const RadialMode &m) { return m.n == n; });
    if (it == modes.end()) {
        throw ContractError("mode n = " + std::to_string(n) + " not in spectrum");
    }
    return it->epsilon;
}

ShootResult integrate_radial(const RadialProblem &problem, double epsilon, bool keep_trajectory) {
    return shoot(problem, epsilon, keep_trajectory).result;
}

std::vector<double> radial_values_at(const RadialProblem &problem, double epsilon,
                                     std::span<const double> points) {
    if (!std::is_sorted(points.begin(), points.end()) ||
        (!points.empty() && (points.front() < 0.0 || points.back() > problem.xi_max))) {
        throw ContractError("radial_values_at: points must be ascending within [0, xi_max]");
    }
    std::vector<double> values;
    values.reserve(points.size());
    if (points.empty()) {
        return values;
    }
    // integrate_times starts at the first time; prepend 0 when needed.
    std::vector<double> times;
    if (points.front() > 0.0) {
        times.push_back(0.0);
    }
    times.insert(times.end(), points.begin(), points.end());
    const std::size_t skip = times.size() - points.size();
    std::size_t seen = 0;

    check_step_budget(problem, epsilon);
    RadialSystem system{problem.l, epsilon};
    State y{0.0, 1.0};
    try {
        odeint::integrate_times(make_stepper(problem, epsilon), system, y, times.begin(), times.end(),
                                std::min(1e-3, max_step(problem, epsilon)), [&](const State &s, double) {
                                    if (seen++ >= skip) {
                                        values.push_back(s[0]);
                                    }
                                });
    } catch (const odeint::step_adjustment_error &e) {
        throw IntegrationError(std::string("radial integration stalled: ") + e.what(), epsilon);
    }
    return values;
}

Spectrum solve_modes(const RadialProblem &problem, int count, const SolverOptions &options) {
    if (count < 1) {
        throw ContractError("solve_modes: count must be >= 1");
    }
    const RadialProblem checked = RadialProblem::make(problem.xi_max, problem.l);

    std::map<double, int> node_cache;
    const auto below = [&](double eps) {
        if (const auto it = node_cache.find(eps); it != node_cache.end()) {
            return it->second;
        }
        const int n = shoot(checked, eps, false).raw_sign_changes;
        node_cache.emplace(eps, n);
        return n;
    };

    // V_eff >= l^2/(1+xi_max^2) - 1/2, so nothing lies below this.
    const double floor =
        static_cast<double>(checked.l) * checked.l / (1.0 + checked.xi_max * checked.xi_max) - 0.5 - 1e-9;
    double width = options.scan_step;
    double ceiling = floor + width;
    while (below(ceiling) < count) {
        width *= 2.0;
        ceiling = floor + width;
        if (ceiling > options.epsilon_ceiling) {
            throw SearchExhaustedError("solve_modes: fewer than " + std::to_string(count) +
                                       " levels below epsilon = " + describe(options.epsilon_ceiling) +
                                       " for xi_max = " + describe(checked.xi_max));
        }
    }
    node_cache.emplace(floor, 0);

    Spectrum spectrum{checked, {}};
    spectrum.modes.reserve(count);
    for (int k = 1; k <= count; ++k) {
        // Tightest cached bracket with k-1 levels below a and at least k below b.
        double a = floor;
        double b = ceiling;
        for (const auto &[eps, n] : node_cache) {
            if (n <= k - 1) {
                a = std::max(a, eps);
            } else if (eps < b) {
                b = eps;
            }
        }
        while (below(a) != k - 1 || below(b) != k) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) {
                throw NumericalError("solve_modes: levels " + std::to_string(k) + " and " +
                                     std::to_string(k + 1) + " not separable near epsilon = " + describe(a));
            }
            (below(mid) >= k ? b : a) = mid;
        }

        const auto residual = [&](double eps) { return shoot(checked, eps, false).result.boundary_value; };
        const double fa = residual(a);
        const double fb = residual(b);
        double root;
        if (fa == 0.0) {
            root = a;
        } else if (fb == 0.0) {
            root = b;
        } else {
            if ((fa > 0.0) == (fb > 0.0)) {
                throw NumericalError("solve_modes: bracket for level " + std::to_string(k) +
                                     " has no sign change");
            }
            const double rel = options.relative_tolerance;
            std::uintmax_t max_iter = 200;
            const auto [lo, hi] = boost::math::tools::toms748_solve(
                residual, a, b, fa, fb,
                [rel](double x, double y) {
                    return std::abs(y - x) <= rel * std::max(std::abs(x), std::abs(y)) + 1e-15;
                },
                max_iter);
            root = 0.5 * (lo + hi);
        }

        const ShootResult mode = integrate_radial(checked, root);
        if (mode.nodes != k - 1) {
            throw NumericalError("solve_modes: level " + std::to_string(k) + " at epsilon = " + describe(root) +
                                 " has " + std::to_string(mode.nodes) + " interior nodes");
        }
        spectrum.modes.push_back({k, checked.l, root});
    }
    return spectrum;
}

double flat_energy(int n, int l, double rho_b, double energy_unit) {
    if (n < 0 || l < 0 || !(rho_b > 0.0)) {
        throw ContractError("flat_energy: need n >= 0, l >= 0, rho_B > 0");
    }
    const double pi = std::numbers::pi;
    const double k = (n + 0.5) * pi + l * pi / 2.0 + pi / 4.0;
    return energy_unit / (rho_b * rho_b) * k * k;
}

} // namespace helix::spectrum
