#include "paik/svg.hpp"

#include <cstdio>
#include <iterator>
#include <utility>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace paik::svg {

namespace {

constexpr double kWidth = 720.0;
constexpr double kPanelHeight = 300.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 45.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

void panel(std::ostringstream& os, double y0, const Axes& axes, const std::vector<Series>& series) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double pw = kWidth - kLeft - kRight;
    const double ph = kPanelHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    const auto py = [&](double y) { return y0 + kTop + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

    os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(y0 + kTop) << "\" width=\"" << num(pw) << "\" height=\""
       << num(ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(y0 + 20) << "\" text-anchor=\"middle\">"
       << escape(axes.title) << "</text>\n";
    os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(y0 + kPanelHeight - 8)
       << "\" text-anchor=\"middle\">" << escape(axes.x_label) << "</text>\n";
    os << "<text x=\"15\" y=\"" << num(y0 + kTop + ph / 2) << "\" transform=\"rotate(-90 15 "
       << num(y0 + kTop + ph / 2) << ")\" text-anchor=\"middle\">" << escape(axes.y_label) << "</text>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = xmin + (xmax - xmin) * t / 4.0;
        const double yv = ymin + (ymax - ymin) * t / 4.0;
        os << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(y0 + kTop + ph + 15)
           << "\" font-size=\"10\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
        os << "<text x=\"" << num(kLeft - 5) << "\" y=\"" << num(py(yv) + 3)
           << "\" font-size=\"10\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kColors[k % std::size(kColors)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            os << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
        }
        os << "\"/>\n";
        if (!s.label.empty()) {
            os << "<text x=\"" << num(kWidth - kRight - 5) << "\" y=\"" << num(y0 + kTop + 14 + 14 * k)
               << "\" font-size=\"11\" text-anchor=\"end\" fill=\"" << color << "\">" << escape(s.label)
               << "</text>\n";
        }
    }
}

std::string header(double width, double height) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return os.str();
}

}  // namespace

std::string line_plot(const std::vector<std::pair<Axes, std::vector<Series>>>& panels) {
    std::ostringstream os;
    os << header(kWidth, kPanelHeight * static_cast<double>(panels.size()));
    for (std::size_t i = 0; i < panels.size(); ++i) {
        panel(os, kPanelHeight * static_cast<double>(i), panels[i].first, panels[i].second);
    }
    os << "</svg>\n";
    return os.str();
}

std::string heatmap(const Axes& axes, const std::vector<std::string>& row_labels,
                    const std::vector<std::string>& col_labels, const std::vector<std::vector<double>>& values) {
    const double cell = 60.0;
    const double left = 120.0;
    const double top = 50.0;
    const std::size_t rows = values.size();
    const std::size_t cols = rows ? values.front().size() : 0;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& r : values) {
        for (const double v : r) {
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (!(hi > lo)) hi = lo + 1.0;

    std::ostringstream os;
    os << header(left + cell * static_cast<double>(cols) + 20, top + cell * static_cast<double>(rows) + 60);
    os << "<text x=\"10\" y=\"20\">" << escape(axes.title) << "</text>\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double v = c < values[r].size() ? values[r][c] : std::nan("");
            const double x = left + cell * static_cast<double>(c);
            const double y = top + cell * static_cast<double>(r);
            std::string fill = "#bbbbbb";
            if (std::isfinite(v)) {
                const double t = (v - lo) / (hi - lo);
                const int red = static_cast<int>(std::lround(40 + 215 * t));
                const int blue = static_cast<int>(std::lround(255 - 215 * t));
                char buf[16];
                std::snprintf(buf, sizeof buf, "#%02x%02x%02x", red, 60, blue);
                fill = buf;
            }
            os << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(cell) << "\" height=\""
               << num(cell) << "\" fill=\"" << fill << "\" stroke=\"white\"/>\n";
            os << "<text x=\"" << num(x + cell / 2) << "\" y=\"" << num(y + cell / 2 + 4)
               << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"white\">"
               << (std::isfinite(v) ? tick(v) : std::string("n/a")) << "</text>\n";
        }
        os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(top + cell * (static_cast<double>(r) + 0.5) + 4)
           << "\" text-anchor=\"end\">" << escape(r < row_labels.size() ? row_labels[r] : "") << "</text>\n";
    }
    for (std::size_t c = 0; c < cols; ++c) {
        os << "<text x=\"" << num(left + cell * (static_cast<double>(c) + 0.5)) << "\" y=\""
           << num(top + cell * static_cast<double>(rows) + 16) << "\" text-anchor=\"middle\">"
           << escape(c < col_labels.size() ? col_labels[c] : "") << "</text>\n";
    }
    os << "<text x=\"" << num(left) << "\" y=\"" << num(top + cell * static_cast<double>(rows) + 40) << "\">"
       << escape(axes.x_label) << " / " << escape(axes.y_label) << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace paik::svg
