#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "jgl/errors.hpp"

namespace jgl {

struct SvgSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct SvgSpec {
    int width = 800;
    int height = 520;
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
};

namespace detail {

inline std::string svg_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string svg_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c; break;
        }
    }
    return out;
}

}  // namespace detail

// Deterministic line plot: fixed layout, fixed palette, fixed numeric
// formatting. Identical input produces identical bytes. Non-finite points
// (and non-positive ones on a log axis) are dropped from their polyline.
inline std::string render_svg(const std::vector<SvgSeries>& series, const SvgSpec& spec) {
    std::size_t total_points = 0;
    for (const auto& s : series) total_points += s.points.size();
    if (series.empty() || total_points == 0) {
        throw InvalidArgument("render_svg: nothing to plot");
    }

    const auto usable = [&](double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y)) return false;
        if (spec.log_x && !(x > 0.0)) return false;
        if (spec.log_y && !(y > 0.0)) return false;
        return true;
    };
    const auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };
    const auto ty = [&](double y) { return spec.log_y ? std::log10(y) : y; };

    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!usable(x, y)) continue;
            const double u = tx(x), v = ty(y);
            if (first) {
                x_min = x_max = u;
                y_min = y_max = v;
                first = false;
            } else {
                x_min = std::min(x_min, u);
                x_max = std::max(x_max, u);
                y_min = std::min(y_min, v);
                y_max = std::max(y_max, v);
            }
        }
    }
    if (first) throw InvalidArgument("render_svg: no drawable points");
    if (x_max == x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if (y_max == y_min) {
        y_min -= 0.5;
        y_max += 0.5;
    }

    const double left = 70.0, right = 150.0, top = 40.0, bottom = 50.0;
    const double plot_w = spec.width - left - right;
    const double plot_h = spec.height - top - bottom;
    const auto px = [&](double u) { return left + (u - x_min) / (x_max - x_min) * plot_w; };
    const auto py = [&](double v) {
        return top + (1.0 - (v - y_min) / (y_max - y_min)) * plot_h;
    };

    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                     "#9467bd", "#ff7f0e", "#8c564b"};
    constexpr int kPaletteSize = 6;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(spec.width) + "\" height=\"" + std::to_string(spec.height) +
           "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
           std::to_string(spec.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!spec.title.empty()) {
        out += "<text x=\"" + detail::svg_num(left + plot_w / 2) +
               "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"16\">" +
               detail::xml_escape(spec.title) + "</text>\n";
    }

    // axes
    out += "<line x1=\"" + detail::svg_num(left) + "\" y1=\"" + detail::svg_num(top) +
           "\" x2=\"" + detail::svg_num(left) + "\" y2=\"" +
           detail::svg_num(top + plot_h) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + detail::svg_num(left) + "\" y1=\"" +
           detail::svg_num(top + plot_h) + "\" x2=\"" + detail::svg_num(left + plot_w) +
           "\" y2=\"" + detail::svg_num(top + plot_h) + "\" stroke=\"black\"/>\n";

    // ticks: five per axis on the transformed scale
    for (int i = 0; i <= 4; ++i) {
        const double u = x_min + (x_max - x_min) * i / 4.0;
        const double x = px(u);
        const double label = spec.log_x ? std::pow(10.0, u) : u;
        out += "<line x1=\"" + detail::svg_num(x) + "\" y1=\"" +
               detail::svg_num(top + plot_h) + "\" x2=\"" + detail::svg_num(x) +
               "\" y2=\"" + detail::svg_num(top + plot_h + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + detail::svg_num(x) + "\" y=\"" +
               detail::svg_num(top + plot_h + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::svg_label(label) + "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double v = y_min + (y_max - y_min) * i / 4.0;
        const double y = py(v);
        const double label = spec.log_y ? std::pow(10.0, v) : v;
        out += "<line x1=\"" + detail::svg_num(left - 5) + "\" y1=\"" +
               detail::svg_num(y) + "\" x2=\"" + detail::svg_num(left) + "\" y2=\"" +
               detail::svg_num(y) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + detail::svg_num(left - 8) + "\" y=\"" +
               detail::svg_num(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::svg_label(label) + "</text>\n";
    }
    if (!spec.x_label.empty()) {
        out += "<text x=\"" + detail::svg_num(left + plot_w / 2) + "\" y=\"" +
               detail::svg_num(top + plot_h + 38) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
               detail::xml_escape(spec.x_label) + "</text>\n";
    }
    if (!spec.y_label.empty()) {
        out += "<text x=\"16\" y=\"" + detail::svg_num(top + plot_h / 2) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
               "transform=\"rotate(-90 16 " +
               detail::svg_num(top + plot_h / 2) + ")\">" +
               detail::xml_escape(spec.y_label) + "</text>\n";
    }

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % kPaletteSize];
        std::string pts;
        for (const auto& [x, y] : series[s].points) {
            if (!usable(x, y)) continue;
            if (!pts.empty()) pts += ' ';
            pts += detail::svg_num(px(tx(x))) + "," + detail::svg_num(py(ty(y)));
        }
        if (!pts.empty()) {
            out += "<polyline fill=\"none\" stroke=\"";
            out += color;
            out += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        }
        // legend
        const double ly = top + 14.0 + 18.0 * static_cast<double>(s);
        out += "<line x1=\"" + detail::svg_num(left + plot_w + 12) + "\" y1=\"" +
               detail::svg_num(ly) + "\" x2=\"" + detail::svg_num(left + plot_w + 34) +
               "\" y2=\"" + detail::svg_num(ly) + "\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\"/>\n";
        out += "<text x=\"" + detail::svg_num(left + plot_w + 40) + "\" y=\"" +
               detail::svg_num(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" +
               detail::xml_escape(series[s].name) + "</text>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace jgl
