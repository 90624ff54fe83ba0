#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "enclose/errors.hpp"
#include "enclose/vec2.hpp"

namespace enclose {

// One labeled polyline. NaN points split the line into segments, which is how
// series that end early (removed agents) are rendered.
struct PlotSeries {
    std::string label;
    std::vector<Vec2> points;
    bool start_marker = false;
};

namespace svgdetail {

constexpr double kWidth = 880.0, kHeight = 560.0;
constexpr double kMarginL = 72.0, kMarginR = 24.0, kMarginT = 44.0, kMarginB = 56.0;

inline const char* color(std::size_t i) {
    static const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    void expand(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (hi <= lo) {
            lo -= 1.0;
            hi += 1.0;
        }
        const double margin = 0.04 * (hi - lo);
        lo -= margin;
        hi += margin;
    }
};

}  // namespace svgdetail

// Minimal self-contained line plot: border, ticks, labeled axes, legend, one
// polyline per series. No dependency beyond the standard library.
inline void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                           const std::string& xlabel, const std::string& ylabel,
                           const std::vector<PlotSeries>& series) {
    namespace sd = svgdetail;
    if (series.empty()) throw std::invalid_argument("write_svg_plot: no series");

    sd::Range rx, ry;
    bool any = false;
    for (const PlotSeries& s : series)
        for (const Vec2& p : s.points)
            if (std::isfinite(p.x) && std::isfinite(p.y)) {
                if (!any) {
                    rx.lo = rx.hi = p.x;
                    ry.lo = ry.hi = p.y;
                    any = true;
                }
                rx.expand(p.x);
                ry.expand(p.y);
            }
    if (!any) throw std::invalid_argument("write_svg_plot: no finite points");
    rx.pad();
    ry.pad();

    const double plot_w = sd::kWidth - sd::kMarginL - sd::kMarginR;
    const double plot_h = sd::kHeight - sd::kMarginT - sd::kMarginB;
    auto to_px = [&](const Vec2& p) -> Vec2 {
        return {sd::kMarginL + (p.x - rx.lo) / (rx.hi - rx.lo) * plot_w,
                sd::kMarginT + (ry.hi - p.y) / (ry.hi - ry.lo) * plot_h};
    };

    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << sd::kWidth
        << "\" height=\"" << sd::kHeight << "\" viewBox=\"0 0 " << sd::kWidth << " "
        << sd::kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<rect x=\"" << sd::kMarginL << "\" y=\"" << sd::kMarginT << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";

    out << "<text x=\"" << sd::kWidth / 2 << "\" y=\"" << sd::kMarginT - 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << sd::escape(title) << "</text>\n";
    out << "<text x=\"" << sd::kMarginL + plot_w / 2 << "\" y=\"" << sd::kHeight - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << sd::escape(xlabel) << "</text>\n";
    out << "<text x=\"18\" y=\"" << sd::kMarginT + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << sd::kMarginT + plot_h / 2 << ")\">"
        << sd::escape(ylabel) << "</text>\n";

    constexpr int kTicks = 5;
    for (int t = 0; t <= kTicks; ++t) {
        const double fx = rx.lo + (rx.hi - rx.lo) * t / kTicks;
        const double fy = ry.lo + (ry.hi - ry.lo) * t / kTicks;
        const Vec2 px = to_px({fx, ry.lo});
        const Vec2 py = to_px({rx.lo, fy});
        out << "<line x1=\"" << sd::num(px.x) << "\" y1=\"" << sd::kMarginT + plot_h
            << "\" x2=\"" << sd::num(px.x) << "\" y2=\"" << sd::kMarginT + plot_h + 5
            << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << sd::num(px.x) << "\" y=\"" << sd::kMarginT + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << sd::num(fx) << "</text>\n";
        out << "<line x1=\"" << sd::kMarginL - 5 << "\" y1=\"" << sd::num(py.y) << "\" x2=\""
            << sd::kMarginL << "\" y2=\"" << sd::num(py.y) << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << sd::kMarginL - 8 << "\" y=\"" << sd::num(py.y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << sd::num(fy) << "</text>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        const char* col = sd::color(si);
        std::string seg;
        bool seg_open = false;
        auto flush = [&]() {
            if (seg_open)
                out << "<polyline fill=\"none\" stroke=\"" << col
                    << "\" stroke-width=\"1.5\" points=\"" << seg << "\"/>\n";
            seg.clear();
            seg_open = false;
        };
        for (const Vec2& p : s.points) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
                flush();
                continue;
            }
            const Vec2 px = to_px(p);
            seg += sd::num(px.x) + "," + sd::num(px.y) + " ";
            seg_open = true;
        }
        flush();
        if (s.start_marker && !s.points.empty() && std::isfinite(s.points.front().x)) {
            const Vec2 px = to_px(s.points.front());
            out << "<circle cx=\"" << sd::num(px.x) << "\" cy=\"" << sd::num(px.y)
                << "\" r=\"4\" fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\"/>\n";
        }
        const double ly = sd::kMarginT + 14.0 + 16.0 * static_cast<double>(si);
        out << "<line x1=\"" << sd::kMarginL + plot_w - 110 << "\" y1=\"" << ly - 4 << "\" x2=\""
            << sd::kMarginL + plot_w - 90 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << col
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << sd::kMarginL + plot_w - 84 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << sd::escape(s.label)
            << "</text>\n";
    }

    out << "</svg>\n";
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace enclose
