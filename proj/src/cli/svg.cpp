#include "spdc/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spdc/cli/csv.hpp"

namespace spdc::cli {

const std::vector<std::string>& color_palette() {
    static const std::vector<std::string> p = {"#1f77b4", "#d62728", "#2ca02c",
                                               "#9467bd", "#ff7f0e", "#8c564b",
                                               "#17becf", "#e377c2"};
    return p;
}

namespace {

constexpr double kPanelW = 460.0, kPanelH = 360.0;
constexpr double kMarginL = 64.0, kMarginR = 16.0, kMarginT = 34.0, kMarginB = 48.0;

struct Range {
    double lo = 0.0, hi = 1.0;
    void grow(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
};

double nice_step(double span) {
    if (!(span > 0.0)) return 1.0;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    if (r < 1.5) return mag;
    if (r < 3.5) return 2.0 * mag;
    if (r < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v == 0.0 ? 0.0 : v);
    return buf;
}

class PanelDrawer {
  public:
    PanelDrawer(std::ostringstream& out, double x0, double y0, Range xr, Range yr)
        : out_(out), x0_(x0), y0_(y0), xr_(xr), yr_(yr) {
        if (xr_.hi <= xr_.lo) xr_.hi = xr_.lo + 1.0;
        if (yr_.hi <= yr_.lo) yr_.hi = yr_.lo + 1.0;
    }

    double px(double x) const {
        return x0_ + kMarginL + (x - xr_.lo) / (xr_.hi - xr_.lo) * plot_w();
    }
    double py(double y) const {
        return y0_ + kMarginT + (1.0 - (y - yr_.lo) / (yr_.hi - yr_.lo)) * plot_h();
    }
    static double plot_w() { return kPanelW - kMarginL - kMarginR; }
    static double plot_h() { return kPanelH - kMarginT - kMarginB; }

    void frame(const std::string& title, const std::string& xlabel, const std::string& ylabel) {
        out_ << "<rect x='" << x0_ + kMarginL << "' y='" << y0_ + kMarginT << "' width='"
             << plot_w() << "' height='" << plot_h()
             << "' fill='none' stroke='#444' stroke-width='1'/>\n";
        text(x0_ + kPanelW / 2, y0_ + 18, title, 13, "middle");
        text(x0_ + kMarginL + plot_w() / 2, y0_ + kPanelH - 10, xlabel, 12, "middle");
        // vertical axis label, rotated
        out_ << "<text x='" << x0_ + 14 << "' y='" << y0_ + kMarginT + plot_h() / 2
             << "' font-size='12' text-anchor='middle' transform='rotate(-90 " << x0_ + 14 << ' '
             << y0_ + kMarginT + plot_h() / 2 << ")'>" << ylabel << "</text>\n";
        ticks();
    }

    void polyline(const std::vector<double>& x, const std::vector<double>& y,
                  const std::string& color, double width) {
        if (x.size() < 2) return;
        out_ << "<polyline fill='none' stroke='" << color << "' stroke-width='" << width
             << "' points='";
        for (std::size_t i = 0; i < x.size(); ++i)
            out_ << px(x[i]) << ',' << py(y[i]) << (i + 1 < x.size() ? " " : "");
        out_ << "'/>\n";
    }

    void error_points(const ErrorSeries& s) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double cx = px(s.x[i]);
            const double cy = py(s.y[i]);
            const double ylo = py(s.y[i] - s.yerr[i]);
            const double yhi = py(s.y[i] + s.yerr[i]);
            out_ << "<line x1='" << cx << "' y1='" << ylo << "' x2='" << cx << "' y2='" << yhi
                 << "' stroke='" << s.color << "' stroke-width='1'/>\n";
            for (double ye : {ylo, yhi})
                out_ << "<line x1='" << cx - 3 << "' y1='" << ye << "' x2='" << cx + 3
                     << "' y2='" << ye << "' stroke='" << s.color << "' stroke-width='1'/>\n";
            out_ << "<circle cx='" << cx << "' cy='" << cy << "' r='2.5' fill='" << s.color
                 << "'/>\n";
        }
    }

    void legend_entry(int slot, const std::string& color, const std::string& label) {
        const double lx = x0_ + kMarginL + 8;
        const double ly = y0_ + kMarginT + 14 + 14 * slot;
        out_ << "<line x1='" << lx << "' y1='" << ly - 4 << "' x2='" << lx + 18 << "' y2='"
             << ly - 4 << "' stroke='" << color << "' stroke-width='2'/>\n";
        text(lx + 24, ly, label, 11, "start");
    }

  private:
    void text(double x, double y, const std::string& s, int size, const std::string& anchor) {
        out_ << "<text x='" << x << "' y='" << y << "' font-size='" << size
             << "' text-anchor='" << anchor << "'>" << s << "</text>\n";
    }

    void ticks() {
        const double xs = nice_step(xr_.hi - xr_.lo);
        for (double t = std::ceil(xr_.lo / xs) * xs; t <= xr_.hi + 1e-12 * xs; t += xs) {
            const double x = px(t);
            out_ << "<line x1='" << x << "' y1='" << py(yr_.lo) << "' x2='" << x << "' y2='"
                 << py(yr_.lo) + 4 << "' stroke='#444'/>\n";
            text(x, py(yr_.lo) + 16, fmt_tick(t), 10, "middle");
        }
        const double ys = nice_step(yr_.hi - yr_.lo);
        for (double t = std::ceil(yr_.lo / ys) * ys; t <= yr_.hi + 1e-12 * ys; t += ys) {
            const double y = py(t);
            out_ << "<line x1='" << px(xr_.lo) - 4 << "' y1='" << y << "' x2='" << px(xr_.lo)
                 << "' y2='" << y << "' stroke='#444'/>\n";
            text(px(xr_.lo) - 6, y + 3, fmt_tick(t), 10, "end");
        }
    }

    std::ostringstream& out_;
    double x0_, y0_;
    Range xr_, yr_;
};

std::string svg_open(double w, double h) {
    std::ostringstream o;
    o << "<?xml version='1.0' encoding='UTF-8'?>\n<svg xmlns='http://www.w3.org/2000/svg' "
      << "width='" << w << "' height='" << h << "' viewBox='0 0 " << w << ' ' << h
      << "' font-family='sans-serif'>\n<rect width='100%' height='100%' fill='white'/>\n";
    return o.str();
}

} // namespace

std::string render_panels(const std::vector<Panel>& panels) {
    std::ostringstream out;
    out << svg_open(kPanelW * panels.size(), kPanelH);
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const Panel& panel = panels[p];
        Range xr, yr;
        bool first = true;
        auto seed = [&](double x, double y) {
            if (first) {
                xr.lo = xr.hi = x;
                yr.lo = yr.hi = y;
                first = false;
            }
            xr.grow(x);
            yr.grow(y);
        };
        for (const Series& s : panel.lines)
            for (std::size_t i = 0; i < s.x.size(); ++i) seed(s.x[i], s.y[i]);
        for (const ErrorSeries& s : panel.points)
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                seed(s.x[i], s.y[i] - s.yerr[i]);
                seed(s.x[i], s.y[i] + s.yerr[i]);
            }
        // a little headroom
        const double pad = 0.05 * (yr.hi - yr.lo + 1e-12);
        yr.lo -= pad;
        yr.hi += pad;

        PanelDrawer d(out, kPanelW * static_cast<double>(p), 0.0, xr, yr);
        d.frame(panel.title, panel.xlabel, panel.ylabel);
        int slot = 0;
        for (const Series& s : panel.lines) {
            d.polyline(s.x, s.y, s.color, s.width);
            if (!s.label.empty()) d.legend_entry(slot++, s.color, s.label);
        }
        for (const ErrorSeries& s : panel.points) {
            d.error_points(s);
            if (!s.label.empty()) d.legend_entry(slot++, s.color, s.label);
        }
    }
    out << "</svg>\n";
    return out.str();
}

namespace {

void render_bars_at(std::ostringstream& out, const BarChart& chart, double x0, double w) {
    double vmax = 0.0;
    for (const auto& g : chart.groups)
        for (double v : g.values) vmax = std::max(vmax, v);
    if (vmax <= 0.0) vmax = 1.0;

    const double plot_x = x0 + kMarginL, plot_y = kMarginT;
    const double plot_w = w - kMarginL - kMarginR, plot_h = kPanelH - kMarginT - kMarginB;
    out << "<rect x='" << plot_x << "' y='" << plot_y << "' width='" << plot_w << "' height='"
        << plot_h << "' fill='none' stroke='#444'/>\n";
    out << "<text x='" << x0 + w / 2 << "' y='18' font-size='13' text-anchor='middle'>"
        << chart.title << "</text>\n";
    out << "<text x='" << x0 + 14 << "' y='" << plot_y + plot_h / 2
        << "' font-size='12' text-anchor='middle' transform='rotate(-90 " << x0 + 14 << ' '
        << plot_y + plot_h / 2 << ")'>" << chart.ylabel << "</text>\n";

    const double ys = nice_step(vmax);
    for (double t = 0.0; t <= vmax + 1e-12 * ys; t += ys) {
        const double y = plot_y + plot_h * (1.0 - t / (vmax * 1.05));
        out << "<line x1='" << plot_x - 4 << "' y1='" << y << "' x2='" << plot_x << "' y2='" << y
            << "' stroke='#444'/>\n<text x='" << plot_x - 6 << "' y='" << y + 3
            << "' font-size='10' text-anchor='end'>" << fmt_tick(t) << "</text>\n";
    }

    const std::size_t ncat = chart.categories.size();
    const std::size_t ngrp = std::max<std::size_t>(1, chart.groups.size());
    const double slot_w = plot_w / static_cast<double>(ncat);
    const double bar_w = 0.7 * slot_w / static_cast<double>(ngrp);
    for (std::size_t c = 0; c < ncat; ++c) {
        const double cx = plot_x + slot_w * (static_cast<double>(c) + 0.5);
        out << "<text x='" << cx << "' y='" << plot_y + plot_h + 16
            << "' font-size='11' text-anchor='middle'>" << chart.categories[c] << "</text>\n";
        for (std::size_t g = 0; g < chart.groups.size(); ++g) {
            const double v = chart.groups[g].values[c];
            const double h = plot_h * v / (vmax * 1.05);
            const double x = cx + bar_w * (static_cast<double>(g) - 0.5 * static_cast<double>(ngrp));
            out << "<rect x='" << x << "' y='" << plot_y + plot_h - h << "' width='"
                << bar_w * 0.9 << "' height='" << h << "' fill='" << chart.groups[g].color
                << "'/>\n";
        }
    }
    for (std::size_t g = 0; g < chart.groups.size(); ++g) {
        const double lx = plot_x + plot_w - 110.0;
        const double ly = plot_y + 16.0 + 14.0 * static_cast<double>(g);
        out << "<rect x='" << lx << "' y='" << ly - 9 << "' width='12' height='9' fill='"
            << chart.groups[g].color << "'/>\n<text x='" << lx + 18 << "' y='" << ly
            << "' font-size='11'>" << chart.groups[g].label << "</text>\n";
    }
}

} // namespace

std::string render_bar_panels(const std::vector<BarChart>& charts) {
    double panel_w = kPanelW;
    for (const BarChart& c : charts)
        panel_w = std::max(panel_w, 120.0 + 90.0 * static_cast<double>(c.categories.size()));
    std::ostringstream out;
    out << svg_open(panel_w * static_cast<double>(charts.size()), kPanelH);
    for (std::size_t i = 0; i < charts.size(); ++i)
        render_bars_at(out, charts[i], panel_w * static_cast<double>(i), panel_w);
    out << "</svg>\n";
    return out.str();
}

std::string render_bars(const BarChart& chart) { return render_bar_panels({chart}); }

} // namespace spdc::cli
