#include "helix/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace helix::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char *, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string escape(const std::string &s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

} // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
    if (!(hi > lo)) {
        return {lo};
    }
    const double raw = (hi - lo) / std::max(target, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (const double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
        ticks.push_back(t);
    }
    return ticks;
}

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::add_series(std::string name, std::vector<double> x, std::vector<std::optional<double>> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("svg series: x and y differ in length");
    }
    series_.push_back({std::move(name), std::move(x), std::move(y), false, false});
}

void SvgPlot::add_series(std::string name, const std::vector<double> &x, const std::vector<double> &y) {
    add_series(std::move(name), x, std::vector<std::optional<double>>(y.begin(), y.end()));
}

void SvgPlot::add_markers(std::string name, std::vector<double> x, std::vector<double> y, bool annotate) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("svg markers: x and y differ in length");
    }
    series_.push_back({std::move(name), std::move(x), std::vector<std::optional<double>>(y.begin(), y.end()), true,
                       annotate});
}

void SvgPlot::add_hline(double y) { hlines_.push_back(y); }

std::string SvgPlot::render() const {
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = -x_lo;
    for (const auto &s : series_) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!s.y[i] || !std::isfinite(*s.y[i]) || !std::isfinite(s.x[i])) {
                continue;
            }
            x_lo = std::min(x_lo, s.x[i]);
            x_hi = std::max(x_hi, s.x[i]);
            y_lo = std::min(y_lo, *s.y[i]);
            y_hi = std::max(y_hi, *s.y[i]);
        }
    }
    for (const double h : hlines_) {
        y_lo = std::min(y_lo, h);
        y_hi = std::max(y_hi, h);
    }
    if (!std::isfinite(x_lo)) {
        x_lo = 0.0;
        x_hi = 1.0;
        y_lo = 0.0;
        y_hi = 1.0;
    }
    if (x_hi == x_lo) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (y_hi == y_lo) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    const auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
       << "<text class=\"title\" x=\"" << num(kLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title_) << "</text>\n";

    os << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n"
       << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w) << "\" height=\""
       << num(plot_h) << "\"/>\n</g>\n";

    os << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (const double t : nice_ticks(x_lo, x_hi)) {
        os << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(px(t))
           << "\" y2=\"" << num(kTop + plot_h + 5) << "\" stroke=\"black\"/>"
           << "<text x=\"" << num(px(t)) << "\" y=\"" << num(kTop + plot_h + 18) << "\" text-anchor=\"middle\">"
           << tick_label(t) << "</text>\n";
    }
    for (const double t : nice_ticks(y_lo, y_hi)) {
        os << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(kLeft) << "\" y2=\""
           << num(py(t)) << "\" stroke=\"black\"/>"
           << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">"
           << tick_label(t) << "</text>\n";
    }
    os << "</g>\n";

    os << "<text class=\"xlabel\" x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 15)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(x_label_) << "</text>\n"
       << "<text class=\"ylabel\" x=\"20\" y=\"" << num(kTop + plot_h / 2) << "\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 20 " << num(kTop + plot_h / 2)
       << ")\">" << escape(y_label_) << "</text>\n";

    for (const double h : hlines_) {
        os << "<line class=\"reference\" x1=\"" << num(kLeft) << "\" y1=\"" << num(py(h)) << "\" x2=\""
           << num(kLeft + plot_w) << "\" y2=\"" << num(py(h)) << "\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n";
    }

    std::size_t colour = 0;
    double legend_y = kTop + 10;
    for (const auto &s : series_) {
        const char *c = kPalette[colour++ % kPalette.size()];
        if (s.markers) {
            os << "<g class=\"markers\" fill=\"" << c << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!s.y[i]) {
                    continue;
                }
                os << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(*s.y[i])) << "\" r=\"3.5\"/>";
                if (s.annotate) {
                    char buf[48];
                    std::snprintf(buf, sizeof buf, "%.6g", s.x[i]);
                    os << "<text x=\"" << num(px(s.x[i]) + 4) << "\" y=\"" << num(py(*s.y[i]) - 6) << "\">" << buf
                       << "</text>";
                }
                os << '\n';
            }
            os << "</g>\n";
        } else {
            std::string points;
            const auto flush = [&] {
                if (!points.empty()) {
                    os << "<polyline class=\"series\" fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\""
                       << points << "\"/>\n";
                    points.clear();
                }
            };
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!s.y[i] || !std::isfinite(*s.y[i])) {
                    flush();
                    continue;
                }
                if (!points.empty()) {
                    points += ' ';
                }
                points += num(px(s.x[i])) + ',' + num(py(*s.y[i]));
            }
            flush();
        }
        os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">"
           << "<line x1=\"" << num(kWidth - kRight + 12) << "\" y1=\"" << num(legend_y) << "\" x2=\""
           << num(kWidth - kRight + 32) << "\" y2=\"" << num(legend_y) << "\" stroke=\"" << c
           << "\" stroke-width=\"2\"/><text x=\"" << num(kWidth - kRight + 38) << "\" y=\"" << num(legend_y + 4)
           << "\">" << escape(s.name) << "</text></g>\n";
        legend_y += 18;
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace helix::cli
