#include <exception>
#include <vector>

#include "helix/spectrum.hpp"

namespace helix::spectrum {

std::vector<Spectrum> solve_grid(std::span<const RadialProblem> problems, int count, const SolverOptions &options) {
    std::vector<Spectrum> out(problems.size());
    std::vector<std::exception_ptr> errors(problems.size());
    const auto n = static_cast<long>(problems.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            out[idx] = solve_modes(problems[idx], count, options);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

} // namespace helix::spectrum

namespace helix::reference {

std::vector<spectrum::Spectrum> solve_grid(std::span<const spectrum::RadialProblem> problems, int count,
                                           const spectrum::SolverOptions &options) {
    std::vector<spectrum::Spectrum> out;
    out.reserve(problems.size());
    for (const auto &p : problems) {
        out.push_back(spectrum::solve_modes(p, count, options));
    }
    return out;
}

} // namespace helix::reference
