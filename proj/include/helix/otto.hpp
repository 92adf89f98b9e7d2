#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace helix::otto {

/// theta = T_h / T_c, varsigma = hbar^2 / (2 m k_B rho_c^2 T_c).
struct BathParams {
    double theta = 12.0;
    double varsigma = 1.0;

    static BathParams make(double theta, double varsigma);
};

struct LevelLabel {
    int n = 1;
    int l = 0;
};

/// Stroke-endpoint energies in units of hbar^2 / (2 m rho_c^2).
struct WorkingLevels {
    std::vector<double> cold;
    std::vector<double> hot;
    std::vector<LevelLabel> labels;

    /// Throws ContractError unless both lists are strictly increasing with equal length >= 2.
    void validate() const;
    double cold_gap() const { return cold.at(1) - cold.at(0); }
    double hot_gap() const { return hot.at(1) - hot.at(0); }
};

enum class Mode { engine, refrigerator, heater };

std::string_view to_string(Mode mode);

struct CycleResult {
    double q_cold = 0.0;
    double q_hot = 0.0;
    double work = 0.0;
    std::optional<double> efficiency;
    std::optional<double> cop;
    Mode mode = Mode::heater;
    bool boundary = false; ///< some of Q_c, Q_h, W is exactly zero
};

struct Classification {
    Mode mode;
    bool boundary;
};

/// Working medium: untwisted (Bessel-limit) stripe, or helicoid with fixed dimensionless widths.
struct Medium {
    bool flat = true;
    double xi_cold = 0.0;
    double xi_hot = 0.0;

    static Medium flat_stripe() { return {}; }
    static Medium helicoid(double xi_cold, double xi_hot);
};

struct CycleConfig {
    Medium medium;
    double r = 1.0; ///< compression ratio rho_c / rho_h
    BathParams bath;
    int level_count = 2;

    /// (omega_h / omega_c)^2 = r^2 (xi_hot / xi_cold)^2; empty for the flat medium.
    std::optional<double> alpha() const;
};

/// r-independent part of the level structure: cold energies and hot energies at r = 1.
/// Hot energies at compression ratio r are r^2 times the stored ones.
class LevelModel {
  public:
    static LevelModel flat(int level_count = 2);
    /// Solves the radial problem at both widths; levels are (n=1, l=0..level_count-1).
    static LevelModel curved(double xi_cold, double xi_hot, int level_count = 2);
    static LevelModel for_medium(const Medium &medium, int level_count = 2);

    WorkingLevels at(double r) const;
    int level_count() const { return static_cast<int>(cold_.size()); }

    /// Dimensionless gaps eps_e - eps_g at the two widths; empty for the flat medium.
    std::optional<std::pair<double, double>> dimensionless_gaps() const { return gaps_; }

  private:
    std::vector<double> cold_;
    std::vector<double> hot_unit_;
    std::vector<LevelLabel> labels_;
    std::optional<std::pair<double, double>> gaps_;
};

/// Thermal populations exp(-beta E_n) / Z, shifted by min E for overflow safety.
std::vector<double> boltzmann_populations(std::span<const double> levels, double inverse_temperature);

CycleResult cycle_heats(const CycleConfig &config, const WorkingLevels &levels);

/// Bound alpha > delta_c / delta_h for a compressed cold gap.
double alpha_bound(double delta_c, double delta_h);

/// 1 - Delta_c / Delta_h. Throws DegenerateSpectrumError when Delta_h == 0.
double efficiency(const WorkingLevels &levels);

/// Q_c / |W|. Throws ContractError unless result.mode is refrigerator.
double coefficient_of_performance(const CycleResult &result);

Classification classify_mode(double q_cold, double q_hot, double work);

/// Levels + bath with the compression ratio left free.
struct CycleTemplate {
    LevelModel levels;
    BathParams bath;

    CycleResult evaluate(double r) const;
};

/// The two roots of W(r) = 0 inside [r_lo, r_hi]. Throws TopologyError unless the scan at
/// `resolution` finds exactly two sign changes.
std::pair<double, double> work_window(const CycleTemplate &cycle, double r_lo, double r_hi,
                                      double resolution = 1e-3);

struct SweepSpec {
    Medium medium;
    BathParams bath;
    std::vector<double> r_grid;
    int level_count = 2;
};

struct SweepRow {
    double r = 0.0;
    double q_cold = 0.0;
    double q_hot = 0.0;
    double work = 0.0;
    std::optional<double> eta_norm; ///< eta / (1 - 1/theta), engine rows only
    std::optional<double> cop_norm; ///< COP / (1 / (theta - 1)), refrigerator rows only
    Mode mode = Mode::heater;
    bool boundary = false;

    friend bool operator==(const SweepRow &, const SweepRow &) = default;
};

/// Inclusive grid lo, lo + step, ... <= hi (tolerant to round-off at hi).
std::vector<double> make_grid(double lo, double hi, double step);

SweepRow make_row(double r, const CycleResult &result, const BathParams &bath);

/// One row per r, evaluated with OpenMP; row order follows the grid.
std::vector<SweepRow> sweep(const SweepSpec &spec);
std::vector<SweepRow> sweep(const CycleTemplate &cycle, std::span<const double> r_grid);

} // namespace helix::otto

namespace helix::reference {

std::vector<otto::SweepRow> sweep(const otto::CycleTemplate &cycle, std::span<const double> r_grid);

} // namespace helix::reference
