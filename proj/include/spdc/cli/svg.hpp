#ifndef SPDC_CLI_SVG_HPP
#define SPDC_CLI_SVG_HPP

#include <string>
#include <vector>

namespace spdc::cli {

// Minimal plot emitter: polylines, error bars, grouped bars. Plots are
// conveniences; the CSV files are the contract.

struct Series {
    std::vector<double> x, y;
    std::string color = "#000000";
    double width = 1.0;
    std::string label;
};

struct ErrorSeries {
    std::vector<double> x, y, yerr;
    std::string color = "#1f77b4";
    std::string label;
};

struct Panel {
    std::string title, xlabel, ylabel;
    std::vector<Series> lines;
    std::vector<ErrorSeries> points;
};

std::string render_panels(const std::vector<Panel>& panels);

struct BarChart {
    std::string title, ylabel;
    std::vector<std::string> categories;
    struct Group {
        std::string label;
        std::string color;
        std::vector<double> values; // one per category
    };
    std::vector<Group> groups;
};

std::string render_bars(const BarChart& chart);
std::string render_bar_panels(const std::vector<BarChart>& charts);

const std::vector<std::string>& color_palette();

} // namespace spdc::cli

#endif
