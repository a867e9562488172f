#ifndef BECGROWTH_SVG_HPP
#define BECGROWTH_SVG_HPP

// =====================================================================
//  becgrowth/svg.hpp
//
//  Minimal direct-emission SVG line plots: two stacked panels showing a
//  growth curve with linear and logarithmic occupation axes.  Axes,
//  ticks, labels, one polyline per panel; no scripting, no external
//  assets, deterministic output text.
// =====================================================================

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace becgrowth {

namespace detail {

inline std::string format_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

struct SvgPanel {
    double x0, y0, w, h;        // plot rectangle in page coordinates
    double xmin, xmax, ymin, ymax;
    double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
    double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

inline void emit_axes(std::ofstream& out, const SvgPanel& p, const std::string& xlabel,
                      const std::string& ylabel, bool log_ticks) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<rect x='%.1f' y='%.1f' width='%.1f' height='%.1f' fill='none' "
                  "stroke='black' stroke-width='1'/>\n",
                  p.x0, p.y0, p.w, p.h);
    out << buf;
    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        const double fx = static_cast<double>(i) / nticks;
        const double xv = p.xmin + fx * (p.xmax - p.xmin);
        const double X = p.px(xv);
        std::snprintf(buf, sizeof(buf),
                      "<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' stroke='black'/>\n", X,
                      p.y0 + p.h, X, p.y0 + p.h + 5.0);
        out << buf;
        std::snprintf(buf, sizeof(buf),
                      "<text x='%.1f' y='%.1f' font-size='11' text-anchor='middle'>%s</text>\n",
                      X, p.y0 + p.h + 18.0, detail::format_tick(xv).c_str());
        out << buf;

        const double yv = p.ymin + fx * (p.ymax - p.ymin);
        const double Y = p.py(yv);
        std::snprintf(buf, sizeof(buf),
                      "<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' stroke='black'/>\n",
                      p.x0 - 5.0, Y, p.x0, Y);
        out << buf;
        const std::string lab =
            log_ticks ? ("1e" + detail::format_tick(yv)) : detail::format_tick(yv);
        std::snprintf(buf, sizeof(buf),
                      "<text x='%.1f' y='%.1f' font-size='11' text-anchor='end'>%s</text>\n",
                      p.x0 - 8.0, Y + 4.0, lab.c_str());
        out << buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x='%.1f' y='%.1f' font-size='12' text-anchor='middle'>%s</text>\n",
                  p.x0 + p.w / 2, p.y0 + p.h + 34.0, xlabel.c_str());
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x='%.1f' y='%.1f' font-size='12' text-anchor='middle' "
                  "transform='rotate(-90 %.1f %.1f)'>%s</text>\n",
                  p.x0 - 52.0, p.y0 + p.h / 2, p.x0 - 52.0, p.y0 + p.h / 2, ylabel.c_str());
    out << buf;
}

inline void emit_polyline(std::ofstream& out, const SvgPanel& p, const std::vector<double>& x,
                          const std::vector<double>& y, const std::string& color) {
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    char buf[64];
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", p.px(x[i]), p.py(y[i]));
        out << buf;
    }
    out << "'/>\n";
}

}  // namespace detail

// Two-panel growth plot: occupation vs time, linear above, log10 below.
// Points with n <= 0 are dropped from the log panel.
inline void write_growth_svg(const std::string& path, const std::vector<double>& t,
                             const std::vector<double>& n, const std::string& title) {
    if (t.size() != n.size() || t.empty())
        throw std::invalid_argument("svg: time and occupation series must match and be nonempty");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("svg: cannot open " + path + " for writing");

    const double W = 860.0, H = 780.0;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
        << "' viewBox='0 0 " << W << " " << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2
        << "' y='24' font-size='15' text-anchor='middle' font-family='sans-serif'>" << title
        << "</text>\n";

    const double tmax = *std::max_element(t.begin(), t.end());
    const double nmax = *std::max_element(n.begin(), n.end());

    detail::SvgPanel lin{90, 50, W - 130, 310, 0.0, tmax > 0 ? tmax : 1.0, 0.0,
                         nmax > 0 ? 1.05 * nmax : 1.0};
    detail::emit_axes(out, lin, "t [s]", "n", false);
    detail::emit_polyline(out, lin, t, n, "#1f4e9c");

    std::vector<double> tl, nl;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (n[i] > 0.0) {
            tl.push_back(t[i]);
            nl.push_back(std::log10(n[i]));
        }
    double lmin = -1.0, lmax = 1.0;
    if (!nl.empty()) {
        lmin = *std::min_element(nl.begin(), nl.end());
        lmax = *std::max_element(nl.begin(), nl.end());
        if (lmax - lmin < 1e-12) {
            lmin -= 1.0;
            lmax += 1.0;
        }
    }
    detail::SvgPanel logp{90, 430, W - 130, 290, 0.0, tmax > 0 ? tmax : 1.0, lmin, lmax};
    detail::emit_axes(out, logp, "t [s]", "log10 n", true);
    if (!tl.empty()) detail::emit_polyline(out, logp, tl, nl, "#9c2f1f");

    out << "</svg>\n";
}

}  // namespace becgrowth

#endif  // BECGROWTH_SVG_HPP
