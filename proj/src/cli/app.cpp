#include "helix/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "helix/cli/format.hpp"
#include "helix/cli/svg.hpp"
#include "helix/errors.hpp"
#include "helix/geometry.hpp"
#include "helix/otto.hpp"
#include "helix/spectrum.hpp"
#include "json_config.hpp"

namespace helix::cli {

namespace {

using json = nlohmann::ordered_json;

// "lo:hi:step" or a single number.
std::vector<double> parse_range(const std::string &text) {
    const auto to_double = [&](const std::string &s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v)) {
            throw ContractError("bad number '" + s + "' in range '" + text + "'");
        }
        return v;
    };
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) {
        parts.push_back(part);
    }
    if (parts.size() == 1) {
        return {to_double(parts[0])};
    }
    if (parts.size() != 3) {
        throw ContractError("range '" + text + "' must be lo:hi:step");
    }
    return otto::make_grid(to_double(parts[0]), to_double(parts[1]), to_double(parts[2]));
}

json optional_json(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

void apply_thread_cap(std::ostream &err) {
    const char *value = std::getenv("HELIX_OTTO_THREADS");
    if (value == nullptr) {
        return;
    }
    char *end = nullptr;
    const long n = std::strtol(value, &end, 10);
    if (end == value || *end != '\0' || n < 1) {
        err << "warning: ignoring HELIX_OTTO_THREADS=" << value << "\n";
        return;
    }
    omp_set_num_threads(static_cast<int>(std::min<long>(n, omp_get_max_threads())));
}

struct Output {
    std::string format;
    std::string path;

    void emit(const std::string &text, std::ostream &out) const {
        if (path.empty()) {
            out << text;
        } else {
            write_atomic(path, text);
        }
    }
};

void add_output_flags(CLI::App *cmd, Output &output, const std::string &default_format,
                      std::vector<std::string> formats) {
    output.format = default_format;
    cmd->add_option("--format", output.format, "Output format")
        ->check(CLI::IsMember(std::move(formats)))
        ->capture_default_str();
    cmd->add_option("-o,--output", output.path, "Write to this file instead of stdout");
}

// ---------------------------------------------------------------------------- geometry

struct GeometryArgs {
    double omega = 1.0;
    std::optional<double> omega_r;
    double rho_max = 1.0;
    double height = 1.0;
    std::optional<double> omega2;
    std::optional<double> omega_r2;
    std::string rho;
    double energy_unit = 1.0;
    Output output;
};

void run_geometry(const GeometryArgs &args, std::ostream &out) {
    const double omega = args.omega_r ? *args.omega_r / args.rho_max : args.omega;
    const auto geometry = geometry::HelicoidGeometry::make(omega, args.rho_max, args.height);

    std::vector<double> rhos;
    if (args.rho.empty()) {
        for (int i = 0; i <= 10; ++i) {
            rhos.push_back(args.rho_max * i / 10.0);
        }
    } else {
        rhos = parse_range(args.rho);
    }

    std::optional<double> omega2;
    if (args.omega_r2) {
        omega2 = *args.omega_r2 / args.rho_max;
    } else if (args.omega2) {
        omega2 = *args.omega2;
    }

    const double area = geometry::helicoid_area(geometry);
    std::vector<geometry::CurvatureSample> samples;
    std::vector<double> potentials;
    for (const double rho : rhos) {
        samples.push_back(geometry::principal_curvatures(geometry, rho));
        potentials.push_back(geometry::geometric_potential(geometry, rho, args.energy_unit));
    }

    if (args.output.format == "csv") {
        std::string text = "rho,kappa1,kappa2,mean,gaussian,v_geometric\n";
        for (std::size_t i = 0; i < rhos.size(); ++i) {
            const auto &s = samples[i];
            text += format_number(rhos[i]) + ',' + format_number(s.kappa1) + ',' + format_number(s.kappa2) + ',' +
                    format_number(s.mean) + ',' + format_number(s.gaussian) + ',' + format_number(potentials[i]) +
                    '\n';
        }
        args.output.emit(text, out);
        return;
    }
    if (args.output.format == "svg") {
        SvgPlot plot("Helicoid curvature and geometric potential", "ρ", "K_G, V_S / (ħ²/2m)");
        std::vector<double> k, v;
        for (std::size_t i = 0; i < rhos.size(); ++i) {
            k.push_back(samples[i].gaussian);
            v.push_back(potentials[i] / args.energy_unit);
        }
        plot.add_series("K_G", rhos, k);
        plot.add_series("V_S", rhos, v);
        plot.add_hline(0.0);
        args.output.emit(plot.render(), out);
        return;
    }

    json report = {{"omega", geometry.omega}, {"rho_max", geometry.rho_max}, {"height", geometry.height},
                   {"xi_max", geometry.xi_max()}, {"area", area}};
    if (omega2) {
        const double h2 = geometry::height_for_constant_area(geometry.omega, *omega2, geometry.rho_max,
                                                             geometry.height);
        report["omega2"] = *omega2;
        report["height2"] = h2;
        report["height_ratio"] = h2 / geometry.height;
        report["area2"] = geometry::helicoid_area(geometry::HelicoidGeometry::make(*omega2, geometry.rho_max, h2));
    }
    json rows = json::array();
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        const auto &s = samples[i];
        rows.push_back({{"rho", rhos[i]},
                        {"kappa1", s.kappa1},
                        {"kappa2", s.kappa2},
                        {"mean", s.mean},
                        {"gaussian", s.gaussian},
                        {"v_geometric", potentials[i]}});
    }
    report["samples"] = rows;
    args.output.emit(report.dump(2) + "\n", out);
}

// ---------------------------------------------------------------------------- spectrum

struct SpectrumArgs {
    double xi_max = 1.0;
    int l_max = 0;
    int count = 1;
    std::string method = "shooting";
    int grid_points = 100000;
    Output output;
};

std::string spectrum_svg(const SpectrumArgs &args, const std::vector<spectrum::Spectrum> &spectra) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto &s : spectra) {
        lo = std::min(lo, s.modes.front().epsilon);
        hi = std::max(hi, s.modes.back().epsilon);
    }
    const double margin = 0.15 * (hi - lo) + 1.0;
    lo = std::max(lo - margin, -0.5);
    hi += margin;

    char title[96];
    std::snprintf(title, sizeof title, "Boundary value χ(ξ_max; ε) for ξ_max = %g", args.xi_max);
    SvgPlot plot(title, "ε", "χ(ξ_max; ε) / max|χ(ξ_max)|");
    constexpr int kSamples = 400;
    for (const auto &s : spectra) {
        std::vector<double> eps, chi;
        double peak = 0.0;
        for (int i = 0; i <= kSamples; ++i) {
            const double e = lo + (hi - lo) * i / kSamples;
            eps.push_back(e);
            chi.push_back(spectrum::integrate_radial(s.problem, e).boundary_value);
            peak = std::max(peak, std::abs(chi.back()));
        }
        if (peak > 0.0) {
            for (double &c : chi) {
                c /= peak;
            }
        }
        const std::string l = std::to_string(s.problem.l);
        plot.add_series("l = " + l, eps, chi);
        std::vector<double> zeros;
        for (const auto &m : s.modes) {
            zeros.push_back(m.epsilon);
        }
        plot.add_markers("zeros, l = " + l, zeros, std::vector<double>(zeros.size(), 0.0));
    }
    plot.add_hline(0.0);
    return plot.render();
}

void run_spectrum(const SpectrumArgs &args, std::ostream &out, std::ostream &err) {
    apply_thread_cap(err);
    std::vector<spectrum::RadialProblem> problems;
    for (int l = 0; l <= args.l_max; ++l) {
        problems.push_back(spectrum::RadialProblem::make(args.xi_max, l));
    }
    std::vector<spectrum::Spectrum> spectra;
    if (args.method == "shooting") {
        spectra = spectrum::solve_grid(problems, args.count);
    } else {
        for (const auto &p : problems) {
            spectra.push_back(spectrum::finite_difference_spectrum(p, args.grid_points, args.count));
        }
    }

    if (args.output.format == "csv") {
        std::string text = "xi_max,l,n,epsilon\n";
        for (const auto &s : spectra) {
            for (const auto &m : s.modes) {
                text += format_number(s.problem.xi_max) + ',' + std::to_string(m.l) + ',' + std::to_string(m.n) +
                        ',' + format_number(m.epsilon) + '\n';
            }
        }
        args.output.emit(text, out);
    } else if (args.output.format == "json") {
        json modes = json::array();
        for (const auto &s : spectra) {
            for (const auto &m : s.modes) {
                modes.push_back({{"l", m.l}, {"n", m.n}, {"epsilon", m.epsilon}});
            }
        }
        const json report = {{"xi_max", args.xi_max}, {"method", args.method}, {"modes", modes}};
        args.output.emit(report.dump(2) + "\n", out);
    } else {
        args.output.emit(spectrum_svg(args, spectra), out);
    }
}

// ---------------------------------------------------------------------------- cycle / sweep

struct MediumArgs {
    std::string preset;
    std::string medium = "helicoid";
    std::optional<double> xi_cold;
    std::optional<double> xi_hot;
    double theta = 12.0;
    double varsigma = 1.0;
    int levels = 2;

    otto::Medium resolve() const {
        if (preset == "flat") {
            return otto::Medium::flat_stripe();
        }
        if (preset == "curved-up") {
            return otto::Medium::helicoid(0.5, 1.0);
        }
        if (preset == "curved-down") {
            return otto::Medium::helicoid(1.0, 0.5);
        }
        if (medium == "flat") {
            return otto::Medium::flat_stripe();
        }
        if (!xi_cold || !xi_hot) {
            throw ContractError("give --preset, --medium flat, or both --xi-cold and --xi-hot");
        }
        return otto::Medium::helicoid(*xi_cold, *xi_hot);
    }

    std::string label() const {
        if (!preset.empty()) {
            return preset;
        }
        return medium == "flat" ? "flat" : "helicoid";
    }
};

void add_medium_flags(CLI::App *cmd, MediumArgs &args) {
    auto *preset = cmd->add_option("--preset", args.preset, "Reproduction preset")
                       ->check(CLI::IsMember({"flat", "curved-up", "curved-down"}));
    auto *medium = cmd->add_option("--medium", args.medium, "Working medium when no preset is given")
                       ->check(CLI::IsMember({"flat", "helicoid"}));
    auto *xc = cmd->add_option("--xi-cold", args.xi_cold, "omega_c rho_c")->check(CLI::PositiveNumber);
    auto *xh = cmd->add_option("--xi-hot", args.xi_hot, "omega_h rho_h")->check(CLI::PositiveNumber);
    preset->excludes(medium)->excludes(xc)->excludes(xh);
    cmd->add_option("--theta", args.theta, "T_h / T_c")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--varsigma", args.varsigma, "hbar^2 / (2 m k_B rho_c^2 T_c)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--levels", args.levels, "Number of levels in the working substance")
        ->check(CLI::Range(2, 64))
        ->capture_default_str();
}

struct CycleArgs {
    MediumArgs medium;
    double r = 1.0;
    Output output;
};

void run_cycle(const CycleArgs &args, std::ostream &out) {
    otto::CycleConfig config;
    config.medium = args.medium.resolve();
    config.r = args.r;
    config.bath = otto::BathParams::make(args.medium.theta, args.medium.varsigma);
    config.level_count = args.medium.levels;
    const auto model = otto::LevelModel::for_medium(config.medium, config.level_count);
    const otto::WorkingLevels levels = model.at(config.r);
    const otto::CycleResult result = otto::cycle_heats(config, levels);

    std::optional<double> alpha = config.alpha();
    std::optional<double> alpha_min;
    if (const auto gaps = model.dimensionless_gaps()) {
        alpha_min = otto::alpha_bound(gaps->first, gaps->second);
    }
    const bool warn = alpha && alpha_min && *alpha <= *alpha_min;

    json report = {{"medium", args.medium.label()},
                   {"r", config.r},
                   {"theta", config.bath.theta},
                   {"varsigma", config.bath.varsigma},
                   {"q_cold", result.q_cold},
                   {"q_hot", result.q_hot},
                   {"work", result.work},
                   {"efficiency", optional_json(result.efficiency)},
                   {"cop", optional_json(result.cop)},
                   {"mode", std::string(otto::to_string(result.mode))},
                   {"boundary", result.boundary},
                   {"alpha", optional_json(alpha)},
                   {"alpha_min", optional_json(alpha_min)},
                   {"alpha_warning", warn},
                   {"e_ground_cold", levels.cold[0]},
                   {"e_excited_cold", levels.cold[1]},
                   {"e_ground_hot", levels.hot[0]},
                   {"e_excited_hot", levels.hot[1]}};
    if (const auto gaps = model.dimensionless_gaps()) {
        report["delta_cold"] = gaps->first;
        report["delta_hot"] = gaps->second;
    }

    if (args.output.format == "json") {
        args.output.emit(report.dump(2) + "\n", out);
        return;
    }
    std::vector<std::string> header;
    std::vector<std::string> row;
    for (const auto &[key, value] : report.items()) {
        header.push_back(key);
        if (value.is_number()) {
            row.push_back(format_number(value.get<double>()));
        } else if (value.is_string()) {
            row.push_back(value.get<std::string>());
        } else if (value.is_boolean()) {
            row.push_back(value.get<bool>() ? "true" : "false");
        } else {
            row.emplace_back();
        }
    }
    args.output.emit(CLI::detail::join(header, ",") + "\n" + CLI::detail::join(row, ",") + "\n", out);
}

struct SweepArgs {
    MediumArgs medium;
    std::string r;
    std::string plot = "heat";
    bool window = false;
    Output output;
};

std::string sweep_svg(const SweepArgs &args, const std::vector<otto::SweepRow> &rows) {
    std::vector<double> r;
    for (const auto &row : rows) {
        r.push_back(row.r);
    }
    const std::string tag = args.medium.label();
    char suffix[64];
    std::snprintf(suffix, sizeof suffix, " (%s, θ = %g)", tag.c_str(), args.medium.theta);
    if (args.plot == "efficiency") {
        SvgPlot plot(std::string("Efficiency vs compression ratio") + suffix, "r = ρ_c/ρ_h", "η/(1 − T_c/T_h)");
        std::vector<std::optional<double>> eta;
        for (const auto &row : rows) {
            eta.push_back(row.eta_norm);
        }
        plot.add_series("η/(1 − T_c/T_h)", r, eta);
        return plot.render();
    }
    if (args.plot == "cop") {
        SvgPlot plot(std::string("Coefficient of performance vs compression ratio") + suffix, "r = ρ_c/ρ_h",
                     "ε/[T_c/(T_h − T_c)]");
        std::vector<std::optional<double>> cop;
        for (const auto &row : rows) {
            cop.push_back(row.cop_norm);
        }
        plot.add_series("ε/[T_c/(T_h − T_c)]", r, cop);
        return plot.render();
    }
    SvgPlot plot(std::string("Heat and work vs compression ratio") + suffix, "r = ρ_c/ρ_h",
                 "Q̃_c, Q̃_h, W̃  [ħ²/(2mρ_c²)]");
    std::vector<double> w, qc, qh;
    for (const auto &row : rows) {
        w.push_back(row.work);
        qc.push_back(row.q_cold);
        qh.push_back(row.q_hot);
    }
    plot.add_series("W̃", r, w);
    plot.add_series("Q̃_c", r, qc);
    plot.add_series("Q̃_h", r, qh);
    plot.add_hline(0.0);
    return plot.render();
}

void run_sweep(const SweepArgs &args, std::ostream &out, std::ostream &err) {
    apply_thread_cap(err);
    const auto grid = parse_range(args.r);
    const otto::CycleTemplate cycle{otto::LevelModel::for_medium(args.medium.resolve(), args.medium.levels),
                                    otto::BathParams::make(args.medium.theta, args.medium.varsigma)};
    const auto rows = otto::sweep(cycle, grid);

    std::optional<std::pair<double, double>> window;
    if (args.window) {
        window = otto::work_window(cycle, grid.front(), grid.back());
    }

    if (args.output.format == "csv") {
        std::string text = "r,q_cold,q_hot,work,eta_norm,cop_norm,mode\n";
        for (const auto &row : rows) {
            text += format_number(row.r) + ',' + format_number(row.q_cold) + ',' + format_number(row.q_hot) + ',' +
                    format_number(row.work) + ',' + format_optional(row.eta_norm) + ',' +
                    format_optional(row.cop_norm) + ',' + std::string(otto::to_string(row.mode)) + '\n';
        }
        args.output.emit(text, out);
        if (window) {
            err << "work window: " << format_number(window->first) << " < r < " << format_number(window->second)
                << "\n";
        }
    } else if (args.output.format == "json") {
        json table = json::array();
        for (const auto &row : rows) {
            table.push_back({{"r", row.r},
                             {"q_cold", row.q_cold},
                             {"q_hot", row.q_hot},
                             {"work", row.work},
                             {"eta_norm", optional_json(row.eta_norm)},
                             {"cop_norm", optional_json(row.cop_norm)},
                             {"mode", std::string(otto::to_string(row.mode))}});
        }
        json report = {{"medium", args.medium.label()},
                       {"theta", args.medium.theta},
                       {"varsigma", args.medium.varsigma},
                       {"rows", table}};
        if (window) {
            report["work_window"] = {window->first, window->second};
        }
        args.output.emit(report.dump(2) + "\n", out);
    } else {
        args.output.emit(sweep_svg(args, rows), out);
    }
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum Otto cycle on a helicoidal stripe: geometry, spectrum, cycle and sweep tools",
                 "helix_otto"};
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file mirroring the flag namespace (flags override it)");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    GeometryArgs geometry_args;
    auto *geometry_cmd = app.add_subcommand("geometry", "Curvatures, area and constant-area height");
    auto *omega = geometry_cmd->add_option("--omega", geometry_args.omega, "Twist density")
                      ->check(CLI::NonNegativeNumber)
                      ->capture_default_str();
    auto *omega_r = geometry_cmd->add_option("--omega-r", geometry_args.omega_r, "omega * R (sets omega)")
                        ->check(CLI::NonNegativeNumber);
    omega->excludes(omega_r);
    geometry_cmd->add_option("-R,--rho-max", geometry_args.rho_max, "Radial extent R")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    geometry_cmd->add_option("--height", geometry_args.height, "Axial extent h")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto *omega2 = geometry_cmd->add_option("--omega2", geometry_args.omega2, "Companion twist density")
                       ->check(CLI::NonNegativeNumber);
    auto *omega_r2 = geometry_cmd->add_option("--omega-r2", geometry_args.omega_r2, "Companion omega * R")
                         ->check(CLI::NonNegativeNumber);
    omega2->excludes(omega_r2);
    geometry_cmd->add_option("--rho", geometry_args.rho, "Sample radii lo:hi:step (default 11 points on [0, R])");
    geometry_cmd->add_option("--energy-unit", geometry_args.energy_unit, "hbar^2/2m")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(geometry_cmd, geometry_args.output, "json", {"csv", "json", "svg"});

    SpectrumArgs spectrum_args;
    auto *spectrum_cmd = app.add_subcommand("spectrum", "Radial eigenvalues on the helicoidal stripe");
    spectrum_cmd->add_option("--xi-max", spectrum_args.xi_max, "omega * rho_2")
        ->required()
        ->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--l-max", spectrum_args.l_max, "Largest angular quantum number")
        ->check(CLI::Range(0, 1000))
        ->capture_default_str();
    spectrum_cmd->add_option("--count", spectrum_args.count, "Levels per l")
        ->check(CLI::Range(1, 10000))
        ->capture_default_str();
    spectrum_cmd->add_option("--method", spectrum_args.method, "Eigenvalue solver")
        ->check(CLI::IsMember({"shooting", "finite-difference"}))
        ->capture_default_str();
    spectrum_cmd->add_option("--grid-points", spectrum_args.grid_points, "Interior nodes for finite-difference")
        ->check(CLI::Range(1000, 100000000))
        ->capture_default_str();
    add_output_flags(spectrum_cmd, spectrum_args.output, "csv", {"csv", "json", "svg"});

    CycleArgs cycle_args;
    auto *cycle_cmd = app.add_subcommand("cycle", "One Otto cycle at a fixed compression ratio");
    add_medium_flags(cycle_cmd, cycle_args.medium);
    cycle_cmd->add_option("--r", cycle_args.r, "Compression ratio rho_c / rho_h")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(cycle_cmd, cycle_args.output, "json", {"csv", "json"});

    SweepArgs sweep_args;
    auto *sweep_cmd = app.add_subcommand("sweep", "Heats, work, efficiency and COP over a compression-ratio grid");
    add_medium_flags(sweep_cmd, sweep_args.medium);
    sweep_cmd->add_option("--r", sweep_args.r, "Compression ratios lo:hi:step")->required();
    sweep_cmd->add_option("--plot", sweep_args.plot, "Quantity plotted with --format svg")
        ->check(CLI::IsMember({"heat", "efficiency", "cop"}))
        ->capture_default_str();
    sweep_cmd->add_flag("--window", sweep_args.window, "Locate the positive-work window on the grid's span");
    add_output_flags(sweep_cmd, sweep_args.output, "csv", {"csv", "json", "svg"});

    for (auto *cmd : {geometry_cmd, spectrum_cmd, cycle_cmd, sweep_cmd}) {
        cmd->allow_config_extras(CLI::config_extras_mode::error);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*geometry_cmd) {
            run_geometry(geometry_args, out);
        } else if (*spectrum_cmd) {
            run_spectrum(spectrum_args, out, err);
        } else if (*cycle_cmd) {
            run_cycle(cycle_args, out);
        } else if (*sweep_cmd) {
            run_sweep(sweep_args, out, err);
        }
    } catch (const ContractError &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const NumericalError &e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kNumericalFailure;
    }
    return kSuccess;
}

} // namespace helix::cli
