#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sumdecomp::detail {

// Minimal polyline chart writer; enough for the figure-shaped CLI outputs.
class SvgChart {
public:
    explicit SvgChart(std::string title) : title_(std::move(title)) {}

    void add_series(std::string label, std::vector<std::pair<double, double>> points);
    void write(const std::string& path) const;

private:
    std::string title_;
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series_;
};

}  // namespace sumdecomp::detail
