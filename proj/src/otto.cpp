#include "helix/otto.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "helix/errors.hpp"
#include "helix/spectrum.hpp"

namespace helix::otto {

BathParams BathParams::make(double theta, double varsigma) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw ContractError("theta must be finite and > 0");
    }
    if (!(varsigma > 0.0) || !std::isfinite(varsigma)) {
        throw ContractError("varsigma must be finite and > 0");
    }
    return {theta, varsigma};
}

void WorkingLevels::validate() const {
    if (cold.size() < 2 || cold.size() != hot.size()) {
        throw ContractError("working levels need equal-length cold/hot lists with at least two entries");
    }
    if (!labels.empty() && labels.size() != cold.size()) {
        throw ContractError("working levels: one label per level");
    }
    for (std::size_t i = 1; i < cold.size(); ++i) {
        if (!(cold[i] > cold[i - 1]) || !(hot[i] > hot[i - 1])) {
            throw ContractError("working levels must be strictly increasing");
        }
    }
}

std::string_view to_string(Mode mode) {
    switch (mode) {
    case Mode::engine:
        return "engine";
    case Mode::refrigerator:
        return "refrigerator";
    case Mode::heater:
        return "heater";
    }
    return "heater";
}

Medium Medium::helicoid(double xi_cold, double xi_hot) {
    if (!(xi_cold > 0.0) || !(xi_hot > 0.0)) {
        throw ContractError("helicoid medium needs xi_cold > 0 and xi_hot > 0");
    }
    return {false, xi_cold, xi_hot};
}

std::optional<double> CycleConfig::alpha() const {
    if (medium.flat) {
        return std::nullopt;
    }
    const double ratio = medium.xi_hot / medium.xi_cold;
    return r * r * ratio * ratio;
}

LevelModel LevelModel::flat(int level_count) {
    if (level_count < 2) {
        throw ContractError("level_count must be >= 2");
    }
    LevelModel m;
    for (int l = 0; l < level_count; ++l) {
        const double e = spectrum::flat_energy(0, l, 1.0, 1.0);
        m.cold_.push_back(e);
        m.hot_unit_.push_back(e);
        m.labels_.push_back({1, l});
    }
    return m;
}

LevelModel LevelModel::curved(double xi_cold, double xi_hot, int level_count) {
    if (level_count < 2) {
        throw ContractError("level_count must be >= 2");
    }
    const Medium medium = Medium::helicoid(xi_cold, xi_hot);
    std::vector<spectrum::RadialProblem> problems;
    for (int l = 0; l < level_count; ++l) {
        problems.push_back(spectrum::RadialProblem::make(medium.xi_cold, l));
        problems.push_back(spectrum::RadialProblem::make(medium.xi_hot, l));
    }
    const auto spectra = spectrum::solve_grid(problems, 1);

    LevelModel m;
    for (int l = 0; l < level_count; ++l) {
        const double eps_cold = spectra[2 * static_cast<std::size_t>(l)].epsilon(1);
        const double eps_hot = spectra[2 * static_cast<std::size_t>(l) + 1].epsilon(1);
        m.cold_.push_back(xi_cold * xi_cold * eps_cold);
        m.hot_unit_.push_back(xi_hot * xi_hot * eps_hot);
        m.labels_.push_back({1, l});
    }
    const double delta_cold = spectra[2].epsilon(1) - spectra[0].epsilon(1);
    const double delta_hot = spectra[3].epsilon(1) - spectra[1].epsilon(1);
    m.gaps_ = std::make_pair(delta_cold, delta_hot);
    return m;
}

LevelModel LevelModel::for_medium(const Medium &medium, int level_count) {
    return medium.flat ? flat(level_count) : curved(medium.xi_cold, medium.xi_hot, level_count);
}

WorkingLevels LevelModel::at(double r) const {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw ContractError("compression ratio must be finite and > 0");
    }
    WorkingLevels w{cold_, hot_unit_, labels_};
    for (double &e : w.hot) {
        e *= r * r;
    }
    return w;
}

std::vector<double> boltzmann_populations(std::span<const double> levels, double inverse_temperature) {
    if (levels.empty()) {
        throw ContractError("boltzmann_populations: no levels");
    }
    if (!(inverse_temperature >= 0.0)) {
        throw ContractError("boltzmann_populations: inverse temperature must be >= 0");
    }
    const double shift = *std::min_element(levels.begin(), levels.end());
    std::vector<double> p;
    p.reserve(levels.size());
    double z = 0.0;
    for (const double e : levels) {
        p.push_back(std::exp(-inverse_temperature * (e - shift)));
        z += p.back();
    }
    for (double &x : p) {
        x /= z;
    }
    return p;
}

Classification classify_mode(double q_cold, double q_hot, double work) {
    const bool boundary = q_cold == 0.0 || q_hot == 0.0 || work == 0.0;
    if (work > 0.0 && q_hot > 0.0 && q_cold < 0.0) {
        return {Mode::engine, boundary};
    }
    if (work < 0.0 && q_cold > 0.0 && q_hot < 0.0) {
        return {Mode::refrigerator, boundary};
    }
    return {Mode::heater, boundary};
}

CycleResult cycle_heats(const CycleConfig &config, const WorkingLevels &levels) {
    levels.validate();
    if (static_cast<int>(levels.cold.size()) != config.level_count) {
        throw ContractError("cycle_heats: " + std::to_string(levels.cold.size()) + " levels supplied, config expects " +
                            std::to_string(config.level_count));
    }
    const BathParams &bath = config.bath;
    const auto p_cold = boltzmann_populations(levels.cold, bath.varsigma);
    const auto p_hot = boltzmann_populations(levels.hot, bath.varsigma / bath.theta);

    // The population changes sum to zero, so energies can be measured from each stroke's ground
    // level. That drops the ground term, whose dp is a difference of two numbers near 1.
    CycleResult out;
    for (std::size_t n = 1; n < levels.cold.size(); ++n) {
        const double dp = p_hot[n] - p_cold[n];
        out.q_hot += (levels.hot[n] - levels.hot[0]) * dp;
        out.q_cold -= (levels.cold[n] - levels.cold[0]) * dp;
    }
    out.work = out.q_hot + out.q_cold;

    const Classification c = classify_mode(out.q_cold, out.q_hot, out.work);
    out.mode = c.mode;
    out.boundary = c.boundary;
    if (out.mode == Mode::engine) {
        out.efficiency = out.work / out.q_hot;
    } else if (out.mode == Mode::refrigerator) {
        out.cop = coefficient_of_performance(out);
    }
    return out;
}

double alpha_bound(double delta_c, double delta_h) {
    if (!(delta_c > 0.0) || !(delta_h > 0.0)) {
        throw ContractError("alpha_bound: gaps must be > 0");
    }
    return delta_c / delta_h;
}

double efficiency(const WorkingLevels &levels) {
    const double hot_gap = levels.hot_gap();
    if (hot_gap == 0.0) {
        throw DegenerateSpectrumError("efficiency: hot gap is zero");
    }
    return 1.0 - levels.cold_gap() / hot_gap;
}

double coefficient_of_performance(const CycleResult &result) {
    if (result.mode != Mode::refrigerator) {
        throw ContractError("coefficient_of_performance: cycle is a " + std::string(to_string(result.mode)) +
                            ", not a refrigerator");
    }
    return result.q_cold / std::abs(result.work);
}

} // namespace helix::otto
