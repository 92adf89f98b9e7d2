#include <cmath>
#include <string>

#include "helix/errors.hpp"
#include "helix/spectrum.hpp"

namespace helix::spectrum {

// Maple's confluent Heun equation
//   y'' + (alpha + (1 + beta)/z + (1 + gamma)/(z - 1)) y' + (mu/z + nu/(z - 1)) y = 0,
//   mu = (alpha - beta - gamma + alpha beta - beta gamma)/2 - eta,
//   nu = (alpha + beta + gamma + alpha gamma + beta gamma)/2 + delta + eta,
// with y = sum c_k z^k, c_0 = 1, c_{-1} = 0:
//   (k+1)(k+1+beta) c_{k+1} = [k(k-1) + (2+beta+gamma-alpha) k - mu] c_k + [mu + nu + alpha (k-1)] c_{k-1}.
double heun_c(double alpha, double beta, double gamma, double delta, double eta, double z) {
    if (!(std::abs(z) < 1.0)) {
        throw OutOfDiskError("heun_c: |z| = " + std::to_string(std::abs(z)) + " outside the unit disk");
    }
    const double mu = 0.5 * (alpha - beta - gamma + alpha * beta - beta * gamma) - eta;
    const double nu = 0.5 * (alpha + beta + gamma + alpha * gamma + beta * gamma) + delta + eta;

    double c_prev = 0.0;
    double c = 1.0;
    double zk = 1.0;
    double sum = 1.0;
    int small_terms = 0;
    constexpr int kMaxTerms = 100000;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double kk = k;
        const double c_next =
            ((kk * (kk - 1.0) + (2.0 + beta + gamma - alpha) * kk - mu) * c + (mu + nu + alpha * (kk - 1.0)) * c_prev) /
            ((kk + 1.0) * (kk + 1.0 + beta));
        zk *= z;
        const double term = c_next * zk;
        sum += term;
        // two consecutive small terms: the three-term recurrence can produce an isolated tiny one
        small_terms = std::abs(term) < 1e-14 * std::abs(sum) ? small_terms + 1 : 0;
        if (small_terms >= 2) {
            return sum;
        }
        c_prev = c;
        c = c_next;
    }
    throw NumericalError("heun_c: series did not converge at z = " + std::to_string(z));
}

double heun_wavefunction(double epsilon, int l, double xi) {
    if (l < 0) {
        throw ContractError("heun_wavefunction: l must be >= 0");
    }
    if (!(xi >= 0.0)) {
        throw ContractError("heun_wavefunction: xi must be >= 0");
    }
    if (!(xi * xi < 1.0)) {
        throw OutOfDiskError("heun_wavefunction: xi = " + std::to_string(xi) +
                             " outside the convergence disk; integrate the ODE instead");
    }
    if (xi == 0.0) {
        return 0.0;
    }
    const double sqrt5 = std::sqrt(5.0);
    const double x2 = xi * xi;
    const double heun =
        heun_c(0.0, 0.5, 0.5 * sqrt5, -0.25 * epsilon, 0.625 - 0.25 * l * l + 0.25 * epsilon, -x2);
    return std::pow(1.0 + x2, 0.5 + 0.25 * sqrt5) * xi * heun;
}

} // namespace helix::spectrum
