#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "helix/errors.hpp"
#include "helix/geometry.hpp"
#include "helix/spectrum.hpp"

namespace helix::spectrum {

namespace detail {

// h^2 (T - lambda) = tridiag(-1, 2 + s_i, -1) with s_i = h^2 (V_i - lambda).
// Writing the Sturm pivots as q_i = 1 + t_i gives t_i = s_i + t_{i-1} / (1 + t_{i-1}), t_0 = 1 + s_0,
// which avoids the cancellation against 2 that otherwise limits the small eigenvalues to
// ~eps / h^2 absolute accuracy. Returns the number of eigenvalues below lambda.
int sturm_count(const std::vector<double> &potential, double h2, double lambda) {
    constexpr double tiny = 1e-300;
    int negatives = 0;
    double t = 1.0 + h2 * (potential[0] - lambda);
    if (1.0 + t < 0.0) {
        ++negatives;
    }
    for (std::size_t i = 1; i < potential.size(); ++i) {
        double q = 1.0 + t;
        if (q == 0.0) {
            q = tiny;
        }
        t = h2 * (potential[i] - lambda) + t / q;
        if (1.0 + t < 0.0) {
            ++negatives;
        }
    }
    return negatives;
}

double bisect_eigenvalue(const std::vector<double> &potential, double h2, int index, double lo, double hi) {
    // invariant: count(lo) <= index < count(hi)
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (hi - lo <= 1e-15 * std::max(std::abs(lo), std::abs(hi))) {
            break;
        }
        if (sturm_count(potential, h2, mid) > index) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct Discretization {
    std::vector<double> potential;
    double h2;
    double lo;
    double hi;
};

Discretization discretize(double xi_max, const std::function<double(double)> &potential, int grid_points,
                          int count) {
    if (!(xi_max > 0.0)) {
        throw ContractError("finite difference: xi_max must be > 0");
    }
    if (grid_points < 1000) {
        throw ContractError("finite difference: grid_points must be >= 1000");
    }
    if (count < 1 || count > grid_points) {
        throw ContractError("finite difference: count must be in [1, grid_points]");
    }
    const double h = xi_max / (grid_points + 1);
    Discretization d;
    d.h2 = h * h;
    d.potential.resize(static_cast<std::size_t>(grid_points));
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    for (int i = 0; i < grid_points; ++i) {
        const double v = potential((i + 1) * h);
        d.potential[static_cast<std::size_t>(i)] = v;
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    // Gershgorin
    d.lo = vmin - 1.0;
    d.hi = vmax + 4.0 / d.h2 + 1.0;
    return d;
}

} // namespace detail

std::vector<double> finite_difference_eigenvalues(double xi_max, const std::function<double(double)> &potential,
                                                  int grid_points, int count) {
    const detail::Discretization d = detail::discretize(xi_max, potential, grid_points, count);
    std::vector<double> eigenvalues(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < count; ++k) {
        eigenvalues[static_cast<std::size_t>(k)] = detail::bisect_eigenvalue(d.potential, d.h2, k, d.lo, d.hi);
    }
    return eigenvalues;
}

Spectrum finite_difference_spectrum(const RadialProblem &problem, int grid_points, int count) {
    const RadialProblem checked = RadialProblem::make(problem.xi_max, problem.l);
    const int l = checked.l;
    const auto values = finite_difference_eigenvalues(
        checked.xi_max, [l](double xi) { return geometry::effective_potential(l, xi); }, grid_points, count);
    Spectrum s{checked, {}};
    for (int k = 0; k < count; ++k) {
        s.modes.push_back({k + 1, l, values[static_cast<std::size_t>(k)]});
    }
    return s;
}

std::vector<double> finite_difference_extrapolated(const RadialProblem &problem, int grid_points, int count) {
    const Spectrum coarse = finite_difference_spectrum(problem, grid_points, count);
    // 2N + 1 interior points halve the spacing exactly.
    const Spectrum fine = finite_difference_spectrum(problem, 2 * grid_points + 1, count);
    std::vector<double> out;
    for (int k = 0; k < count; ++k) {
        const auto i = static_cast<std::size_t>(k);
        out.push_back((4.0 * fine.modes[i].epsilon - coarse.modes[i].epsilon) / 3.0);
    }
    return out;
}

} // namespace helix::spectrum

namespace helix::reference {

std::vector<double> finite_difference_eigenvalues(double xi_max, const std::function<double(double)> &potential,
                                                  int grid_points, int count) {
    const auto d = spectrum::detail::discretize(xi_max, potential, grid_points, count);
    std::vector<double> eigenvalues;
    for (int k = 0; k < count; ++k) {
        eigenvalues.push_back(spectrum::detail::bisect_eigenvalue(d.potential, d.h2, k, d.lo, d.hi));
    }
    return eigenvalues;
}

} // namespace helix::reference
