#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helix/errors.hpp"
#include "helix/otto.hpp"
#include "helix/spectrum.hpp"
#include "oracles.hpp"

using namespace helix::otto;
using helix::ContractError;

namespace {

const LevelModel &curved_up() {
    static const LevelModel model = LevelModel::curved(0.5, 1.0);
    return model;
}

const LevelModel &curved_down() {
    static const LevelModel model = LevelModel::curved(1.0, 0.5);
    return model;
}

CycleResult run(const LevelModel &model, double r, double theta = 12.0, double varsigma = 1.0) {
    const CycleTemplate cycle{model, BathParams::make(theta, varsigma)};
    return cycle.evaluate(r);
}

WorkingLevels two_levels(double gc, double ec, double gh, double eh) {
    WorkingLevels levels;
    levels.cold = {gc, ec};
    levels.hot = {gh, eh};
    levels.labels = {{1, 0}, {1, 1}};
    return levels;
}

} // namespace

TEST_SUITE("otto") {

TEST_CASE("Boltzmann populations") {
    const std::vector<double> two{0.0, 1.0};
    const auto p = boltzmann_populations(two, 1.0);
    CHECK(p[0] == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(std::exp(-1.0) / (1.0 + std::exp(-1.0))).epsilon(1e-15));
    CHECK(p[0] == doctest::Approx(0.7311).epsilon(1e-4));

    const std::vector<double> equal{2.0, 2.0};
    const auto half = boltzmann_populations(equal, 3.0);
    CHECK(half[0] == 0.5);
    CHECK(half[1] == 0.5);

    const std::vector<double> four{1.0, 2.0, 5.0, 9.0};
    for (const double q : boltzmann_populations(four, 1e-300)) {
        CHECK(q == doctest::Approx(0.25).epsilon(1e-15));
    }

    // no overflow far from the origin
    const std::vector<double> huge{1e6, 1e6 + 1.0};
    const auto shifted = boltzmann_populations(huge, 1.0);
    CHECK(shifted[0] == doctest::Approx(p[0]).epsilon(1e-12));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> levels{u(rng), u(rng), u(rng), u(rng), u(rng)};
        double sum = 0.0;
        for (const double q : boltzmann_populations(levels, u(rng) / 10.0 + 1e-3)) {
            sum += q;
        }
        REQUIRE(std::abs(sum - 1.0) <= 4e-16);
    }

    CHECK_THROWS_AS(boltzmann_populations(std::vector<double>{}, 1.0), ContractError);
    CHECK_THROWS_AS(boltzmann_populations(two, -1.0), ContractError);
}

TEST_CASE("no cycle when endpoints coincide and theta = 1") {
    CycleConfig config;
    config.bath = BathParams::make(1.0, 1.0);
    const auto result = cycle_heats(config, two_levels(1.0, 3.0, 1.0, 3.0));
    CHECK(result.q_cold == 0.0);
    CHECK(result.q_hot == 0.0);
    CHECK(result.work == 0.0);
    CHECK(result.mode == Mode::heater);
    CHECK(result.boundary);
    CHECK_FALSE(result.efficiency);
    CHECK_FALSE(result.cop);
}

TEST_CASE("flat stripe: heater, engine, refrigerator") {
    const auto flat = LevelModel::flat();
    const auto at2 = run(flat, 2.0);
    CHECK(at2.work > 0.0);
    CHECK(at2.mode == Mode::engine);
    REQUIRE(at2.efficiency);
    CHECK(*at2.efficiency == doctest::Approx(0.75).epsilon(1e-12));

    CHECK(run(flat, 0.5).mode == Mode::heater);

    const auto at4 = run(flat, 4.0);
    CHECK(at4.mode == Mode::refrigerator);
    REQUIRE(at4.cop);
    const auto levels = flat.at(4.0);
    const double w = oracle::work_direct(levels.cold, levels.hot, 1.0, 12.0);
    const auto pc = boltzmann_populations(levels.cold, 1.0);
    const double zc = std::exp(-levels.cold[0]) + std::exp(-levels.cold[1]);
    const double zh = std::exp(-levels.hot[0] / 12.0) + std::exp(-levels.hot[1] / 12.0);
    double q_cold = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        q_cold -= levels.cold[i] * (std::exp(-levels.hot[i] / 12.0) / zh - std::exp(-levels.cold[i]) / zc);
    }
    CHECK(*at4.cop == doctest::Approx(q_cold / std::abs(w)).epsilon(1e-11));
    CHECK(*at4.cop == doctest::Approx(1.0 / 15.0).epsilon(1e-11));
    CHECK(*at4.cop <= 1.0 / 11.0);
    CHECK(pc[0] > pc[1]);
}

TEST_CASE("flat levels scale as 1 / rho^2") {
    const auto flat = LevelModel::flat(3);
    const auto levels = flat.at(3.0);
    const double k0 = 0.75 * std::numbers::pi;
    const double k1 = 1.25 * std::numbers::pi;
    const double k2 = 1.75 * std::numbers::pi;
    CHECK(levels.cold[0] == doctest::Approx(k0 * k0).epsilon(1e-15));
    CHECK(levels.cold[1] == doctest::Approx(k1 * k1).epsilon(1e-15));
    CHECK(levels.cold[2] == doctest::Approx(k2 * k2).epsilon(1e-15));
    CHECK(levels.hot[1] == doctest::Approx(9.0 * k1 * k1).epsilon(1e-15));
    CHECK_FALSE(flat.dimensionless_gaps());
}

TEST_CASE("curved levels carry the width bookkeeping") {
    const auto &model = curved_up();
    const auto gaps = model.dimensionless_gaps();
    REQUIRE(gaps);
    CHECK(gaps->first == doctest::Approx(0.9356961368709).epsilon(1e-11));
    CHECK(gaps->second == doctest::Approx(0.7950504238041).epsilon(1e-11));

    const auto levels = model.at(1.3);
    const double e10 = helix::spectrum::solve_modes(helix::spectrum::RadialProblem::make(0.5, 0), 1).epsilon(1);
    const double e10h = helix::spectrum::solve_modes(helix::spectrum::RadialProblem::make(1.0, 0), 1).epsilon(1);
    CHECK(levels.cold[0] == doctest::Approx(0.25 * e10).epsilon(1e-14));
    CHECK(levels.hot[0] == doctest::Approx(1.3 * 1.3 * e10h).epsilon(1e-14));
    CHECK(levels.cold_gap() == doctest::Approx(0.25 * gaps->first).epsilon(1e-12));
    CHECK(levels.hot_gap() == doctest::Approx(1.69 * gaps->second).epsilon(1e-12));
}

TEST_CASE("curved-up engine at r = 1") {
    const auto result = run(curved_up(), 1.0);
    CHECK(result.mode == Mode::engine);
    REQUIRE(result.efficiency);
    CHECK(*result.efficiency == doctest::Approx(0.706).epsilon(0.001 / 0.706));
    CHECK(*result.efficiency == doctest::Approx(efficiency(curved_up().at(1.0))).epsilon(1e-12));
    CHECK(*result.efficiency == doctest::Approx(1.0 - 0.25 * 0.9356961368709 / 0.7950504238041).epsilon(1e-11));

    CycleConfig config;
    config.medium = Medium::helicoid(0.5, 1.0);
    config.r = 1.0;
    REQUIRE(config.alpha());
    CHECK(*config.alpha() == 4.0);
    CHECK_FALSE(CycleConfig{}.alpha());
}

TEST_CASE("alpha bound") {
    CHECK(alpha_bound(0.93, 0.79) == doctest::Approx(1.18).epsilon(0.01));
    CHECK(alpha_bound(0.79, 0.93) == doctest::Approx(0.85).epsilon(0.01));
    CHECK(alpha_bound(0.5, 0.5) == 1.0);
    const auto gaps = *curved_up().dimensionless_gaps();
    CHECK(alpha_bound(gaps.first, gaps.second) == doctest::Approx(1.17690).epsilon(1e-5));
    CHECK_THROWS_AS(alpha_bound(0.0, 1.0), ContractError);
    CHECK_THROWS_AS(alpha_bound(1.0, -1.0), ContractError);
}

TEST_CASE("efficiency and COP contracts") {
    CHECK(efficiency(two_levels(0.0, 2.0, 0.0, 2.0)) == 0.0);
    CHECK_THROWS_AS(efficiency(two_levels(0.0, 1.0, 3.0, 3.0)), helix::DegenerateSpectrumError);

    CycleResult fridge;
    fridge.q_cold = 1.0;
    fridge.q_hot = -2.0;
    fridge.work = -1.0;
    fridge.mode = Mode::refrigerator;
    CHECK(coefficient_of_performance(fridge) == 1.0);
    fridge.mode = Mode::engine;
    CHECK_THROWS_AS(coefficient_of_performance(fridge), ContractError);
}

TEST_CASE("mode classification by sign") {
    CHECK(classify_mode(-1.0, 3.0, 2.0).mode == Mode::engine);
    CHECK(classify_mode(1.0, -3.0, -2.0).mode == Mode::refrigerator);
    CHECK(classify_mode(-1.0, -1.0, -2.0).mode == Mode::heater);
    CHECK(classify_mode(2.0, -1.0, 1.0).mode == Mode::heater);
    const auto zero = classify_mode(0.0, 0.0, 0.0);
    CHECK(zero.mode == Mode::heater);
    CHECK(zero.boundary);
    CHECK_FALSE(classify_mode(-1.0, 3.0, 2.0).boundary);
    CHECK(to_string(Mode::engine) == "engine");
    CHECK(to_string(Mode::refrigerator) == "refrigerator");
    CHECK(to_string(Mode::heater) == "heater");
}

TEST_CASE("level validation") {
    CycleConfig config;
    WorkingLevels bad = two_levels(0.0, 1.0, 0.0, 1.0);
    bad.hot.push_back(2.0);
    CHECK_THROWS_AS(cycle_heats(config, bad), ContractError);
    CHECK_THROWS_AS(two_levels(1.0, 1.0, 0.0, 2.0).validate(), ContractError);
    CHECK_THROWS_AS(two_levels(0.0, 1.0, 2.0, 1.0).validate(), ContractError);
    config.level_count = 3;
    CHECK_THROWS_AS(cycle_heats(config, two_levels(0.0, 1.0, 0.0, 2.0)), ContractError);
    CHECK_THROWS_AS(BathParams::make(0.0, 1.0), ContractError);
    CHECK_THROWS_AS(BathParams::make(12.0, -1.0), ContractError);
    CHECK_THROWS_AS(Medium::helicoid(0.0, 1.0), ContractError);
    CHECK_THROWS_AS(LevelModel::flat(1), ContractError);
}

TEST_CASE("work windows") {
    const auto flat = work_window(CycleTemplate{LevelModel::flat(), BathParams{}}, 0.2, 8.0);
    CHECK(flat.first == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(flat.second == doctest::Approx(std::sqrt(12.0)).epsilon(1e-9));

    const auto up = work_window(CycleTemplate{curved_up(), BathParams{}}, 0.3, 3.0);
    CHECK(up.first == doctest::Approx(0.54242548).epsilon(1e-7));
    CHECK(up.second == doctest::Approx(1.879017).epsilon(1e-6));

    const auto down = work_window(CycleTemplate{curved_down(), BathParams{}}, 1.0, 8.0);
    CHECK(down.first == doctest::Approx(1.8435712).epsilon(1e-7));
    CHECK(down.second == doctest::Approx(6.386318).epsilon(1e-6));

    // the endpoints are where the gap ratio hits 1 and 1/theta
    for (const auto &[model, window] : {std::pair{&curved_up(), up}, std::pair{&curved_down(), down}}) {
        const auto lo = model->at(window.first);
        const auto hi = model->at(window.second);
        CHECK(lo.cold_gap() / lo.hot_gap() == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(hi.cold_gap() / hi.hot_gap() == doctest::Approx(1.0 / 12.0).epsilon(1e-4));
    }
}

TEST_CASE("work window topology errors") {
    const CycleTemplate cycle{LevelModel::flat(), BathParams{}};
    CHECK_THROWS_AS(work_window(cycle, 1.5, 3.0), helix::TopologyError);
    CHECK_THROWS_AS(work_window(cycle, 2.0, 8.0), helix::TopologyError);
    CHECK_THROWS_AS(work_window(cycle, 3.0, 2.0), ContractError);
}

TEST_CASE("energy conservation against the direct work sum") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const int n = 2 + static_cast<int>(u(rng) * 4);
        WorkingLevels levels;
        double c = 0.0;
        double h = 0.0;
        for (int k = 0; k < n; ++k) {
            c += 0.05 + 5.0 * u(rng);
            h += 0.05 + 5.0 * u(rng);
            levels.cold.push_back(c);
            levels.hot.push_back(h);
            levels.labels.push_back({1, k});
        }
        CycleConfig config;
        config.level_count = n;
        config.bath = BathParams::make(0.5 + 20.0 * u(rng), 0.1 + 3.0 * u(rng));
        const auto result = cycle_heats(config, levels);
        REQUIRE(result.work == result.q_hot + result.q_cold);
        const double direct = oracle::work_direct(levels.cold, levels.hot, config.bath.varsigma, config.bath.theta);
        REQUIRE(std::abs(result.work - direct) <= 1e-12 * (1.0 + std::abs(direct)));
        // Clausius: Q_h / T_h + Q_c / T_c <= 0 for any level count
        REQUIRE(result.q_hot / config.bath.theta + result.q_cold <= 1e-12);
    }
}

TEST_CASE("two-level closed forms") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double gc = 5.0 * u(rng);
        const double ec = gc + 0.01 + 5.0 * u(rng);
        const double gh = 5.0 * u(rng);
        const double eh = gh + 0.01 + 5.0 * u(rng);
        CycleConfig config;
        config.bath = BathParams::make(0.5 + 20.0 * u(rng), 0.1 + 2.0 * u(rng));
        const auto result = cycle_heats(config, two_levels(gc, ec, gh, eh));
        const auto closed = oracle::two_level_closed_form(gc, ec, gh, eh, config.bath.varsigma, config.bath.theta);
        const double scale = std::abs(closed.q_hot) + std::abs(closed.q_cold);
        REQUIRE(std::abs(result.q_cold - closed.q_cold) <= 1e-12 * scale);
        REQUIRE(std::abs(result.q_hot - closed.q_hot) <= 1e-12 * scale);
    }
}

TEST_CASE("only the products varsigma * E enter") {
    const auto base = cycle_heats(CycleConfig{}, two_levels(1.0, 2.5, 1.5, 4.0));
    for (const double c : {0.1, 3.0, 17.0}) {
        CycleConfig config;
        config.bath = BathParams::make(12.0, c);
        const auto scaled = cycle_heats(config, two_levels(1.0 / c, 2.5 / c, 1.5 / c, 4.0 / c));
        CHECK(scaled.q_cold * c == doctest::Approx(base.q_cold).epsilon(1e-12));
        CHECK(scaled.q_hot * c == doctest::Approx(base.q_hot).epsilon(1e-12));
        CHECK(scaled.work * c == doctest::Approx(base.work).epsilon(1e-12));
    }
}

TEST_CASE("Carnot and COP bounds on fine sweeps") {
    const BathParams bath{};
    for (const LevelModel *model : {&curved_up(), &curved_down()}) {
        const CycleTemplate cycle{*model, bath};
        const auto rows = sweep(cycle, make_grid(0.2, 8.0, 0.01));
        for (const auto &row : rows) {
            if (row.mode == Mode::engine) {
                REQUIRE(row.eta_norm);
                REQUIRE(*row.eta_norm <= 1.0);
                REQUIRE_FALSE(row.cop_norm);
            } else if (row.mode == Mode::refrigerator) {
                REQUIRE(row.cop_norm);
                REQUIRE(*row.cop_norm <= 1.0);
                REQUIRE_FALSE(row.eta_norm);
            } else {
                REQUIRE_FALSE(row.eta_norm);
                REQUIRE_FALSE(row.cop_norm);
            }
        }
    }
}

TEST_CASE("grid construction") {
    CHECK(make_grid(2.0, 2.0, 1.0).size() == 1);
    CHECK(make_grid(0.2, 8.0, 0.01).size() == 781);
    CHECK(make_grid(0.2, 8.0, 0.01).back() == doctest::Approx(8.0).epsilon(1e-12));
    CHECK_THROWS_AS(make_grid(1.0, 0.5, 0.1), ContractError);
    CHECK_THROWS_AS(make_grid(0.5, 1.0, 0.0), ContractError);
    const CycleTemplate cycle{LevelModel::flat(), BathParams{}};
    const std::vector<double> descending{2.0, 1.0};
    CHECK_THROWS_AS(sweep(cycle, descending), ContractError);
    const std::vector<double> negative{-1.0, 1.0};
    CHECK_THROWS_AS(sweep(cycle, negative), ContractError);
}

} // TEST_SUITE
