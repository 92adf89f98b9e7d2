#pragma once

#include <optional>
#include <string>
#include <vector>

namespace helix::cli {

/// Minimal single-panel SVG 1.1 line plot.
class SvgPlot {
  public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    /// Absent y values split the polyline.
    void add_series(std::string name, std::vector<double> x, std::vector<std::optional<double>> y);
    void add_series(std::string name, const std::vector<double> &x, const std::vector<double> &y);
    void add_markers(std::string name, std::vector<double> x, std::vector<double> y, bool annotate = true);
    /// Horizontal reference line (e.g. y = 0).
    void add_hline(double y);

    std::string render() const;

  private:
    struct Series {
        std::string name;
        std::vector<double> x;
        std::vector<std::optional<double>> y;
        bool markers = false;
        bool annotate = false;
    };

    std::string title_;
    std::string x_label_;
    std::string y_label_;
    std::vector<Series> series_;
    std::vector<double> hlines_;
};

/// "nice" tick positions covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

} // namespace helix::cli
