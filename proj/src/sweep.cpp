#include <cmath>
#include <sstream>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "helix/errors.hpp"
#include "helix/otto.hpp"

namespace helix::otto {

namespace {

void check_grid(std::span<const double> r_grid) {
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0.0) || !std::isfinite(r_grid[i])) {
            throw ContractError("r grid must be positive and finite");
        }
        if (i > 0 && !(r_grid[i] > r_grid[i - 1])) {
            throw ContractError("r grid must be strictly increasing");
        }
    }
}

} // namespace

CycleResult CycleTemplate::evaluate(double r) const {
    CycleConfig config;
    config.r = r;
    config.bath = bath;
    config.level_count = levels.level_count();
    return cycle_heats(config, levels.at(r));
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
        throw ContractError("grid needs lo <= hi and step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = lo + static_cast<double>(i) * step;
    }
    return grid;
}

SweepRow make_row(double r, const CycleResult &result, const BathParams &bath) {
    SweepRow row;
    row.r = r;
    row.q_cold = result.q_cold;
    row.q_hot = result.q_hot;
    row.work = result.work;
    row.mode = result.mode;
    row.boundary = result.boundary;
    if (result.efficiency) {
        row.eta_norm = *result.efficiency / (1.0 - 1.0 / bath.theta);
    }
    if (result.cop) {
        row.cop_norm = *result.cop * (bath.theta - 1.0);
    }
    return row;
}

std::vector<SweepRow> sweep(const CycleTemplate &cycle, std::span<const double> r_grid) {
    check_grid(r_grid);
    std::vector<SweepRow> rows(r_grid.size());
    const auto n = static_cast<long>(r_grid.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        rows[idx] = make_row(r_grid[idx], cycle.evaluate(r_grid[idx]), cycle.bath);
    }
    return rows;
}

std::vector<SweepRow> sweep(const SweepSpec &spec) {
    const CycleTemplate cycle{LevelModel::for_medium(spec.medium, spec.level_count), spec.bath};
    return sweep(cycle, spec.r_grid);
}

std::pair<double, double> work_window(const CycleTemplate &cycle, double r_lo, double r_hi, double resolution) {
    if (!(r_lo > 0.0) || !(r_hi > r_lo) || !(resolution > 0.0)) {
        throw ContractError("work_window: need 0 < r_lo < r_hi and resolution > 0");
    }
    const auto grid = make_grid(r_lo, r_hi, resolution);
    const auto work = [&](double r) { return cycle.evaluate(r).work; };

    std::vector<std::pair<double, double>> brackets;
    double last_r = 0.0;
    double last_w = 0.0;
    for (const double r : grid) {
        const double w = work(r);
        if (w == 0.0) {
            continue;
        }
        if (last_w != 0.0 && (w > 0.0) != (last_w > 0.0)) {
            brackets.emplace_back(last_r, r);
        }
        last_r = r;
        last_w = w;
    }
    if (brackets.size() != 2) {
        std::ostringstream os;
        os << "work_window: expected 2 sign changes of W(r) on [" << r_lo << ", " << r_hi << "], found "
           << brackets.size();
        for (const auto &[a, b] : brackets) {
            os << " [" << a << ", " << b << "]";
        }
        throw TopologyError(os.str());
    }

    const auto refine = [&](double a, double b) {
        std::uintmax_t max_iter = 200;
        const auto [lo, hi] = boost::math::tools::toms748_solve(
            work, a, b, [](double x, double y) { return std::abs(y - x) <= 1e-13 * std::abs(x); }, max_iter);
        return 0.5 * (lo + hi);
    };
    return {refine(brackets[0].first, brackets[0].second), refine(brackets[1].first, brackets[1].second)};
}

} // namespace helix::otto

namespace helix::reference {

std::vector<otto::SweepRow> sweep(const otto::CycleTemplate &cycle, std::span<const double> r_grid) {
    otto::check_grid(r_grid);
    std::vector<otto::SweepRow> rows;
    rows.reserve(r_grid.size());
    for (const double r : r_grid) {
        rows.push_back(otto::make_row(r, cycle.evaluate(r), cycle.bath));
    }
    return rows;
}

} // namespace helix::reference
