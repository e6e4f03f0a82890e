#include "sumdecomp/detail/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "sumdecomp/errors.hpp"
#include "sumdecomp/multiset.hpp"

namespace sumdecomp::detail {

void SvgChart::add_series(std::string label, std::vector<std::pair<double, double>> points) {
    series_.emplace_back(std::move(label), std::move(points));
}

void SvgChart::write(const std::string& path) const {
    const double width = 860, height = 480;
    const double ml = 70, mr = 30, mt = 40, mb = 50;

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& [label, pts] : series_) {
        for (const auto& [x, y] : pts) {
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    std::ofstream out(path);
    if (!out) throw sumdecomp::IoError("cannot open " + path + " for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title_ << "</text>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml << "\" y=\"" << height - mb + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << sumdecomp::format_double(xmin)
        << "</text>\n";
    out << "<text x=\"" << width - mr << "\" y=\"" << height - mb + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << sumdecomp::format_double(xmax)
        << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << height - mb
        << "\" font-size=\"11\" text-anchor=\"end\">" << sumdecomp::format_double(ymin)
        << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << sumdecomp::format_double(ymax)
        << "</text>\n";

    int ci = 0;
    for (const auto& [label, pts] : series_) {
        const char* color = colors[ci % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
        for (const auto& [x, y] : pts) {
            out << px(x) << "," << py(y) << " ";
        }
        out << "\"/>\n";
        out << "<text x=\"" << width - mr - 150 << "\" y=\"" << mt + 16 * (ci + 1)
            << "\" font-size=\"12\" fill=\"" << color << "\">" << label << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
    if (!out.good()) throw sumdecomp::IoError("failed writing " + path);
}

}  // namespace sumdecomp::detail
