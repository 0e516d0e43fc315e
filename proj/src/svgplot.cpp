#include "vortexhop/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "vortexhop/errors.hpp"

namespace vortexhop::svgplot {

namespace {

constexpr double kW = 720.0, kH = 480.0;
constexpr double kL = 80.0, kR = 30.0, kT = 50.0, kB = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("plot: cannot write " + path);
    return out;
}

void header(std::ofstream& out, const std::string& title, const std::string& x_label,
            const std::string& y_label) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\""
        << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
           "font-family=\"sans-serif\">"
        << title << "</text>\n"
        << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 14
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << x_label
        << "</text>\n"
        << "<text x=\"18\" y=\"" << kH / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 18 "
        << kH / 2 << ")\">" << y_label << "</text>\n";
}

} // namespace

void line_chart(const std::string& path, const std::string& title,
                const std::string& x_label, const std::string& y_label,
                const std::vector<Series>& series) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = std::numeric_limits<double>::infinity(), ymax = 1e-300;
    for (const Series& s : series) {
        for (auto [x, y] : s.points) {
            if (!(y > 0.0)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmax >= xmin)) throw ValidationError("plot: no positive data to draw");
    if (xmax == xmin) xmax = xmin + 1.0;
    double lo = std::floor(std::log10(ymin)), hi = std::ceil(std::log10(ymax));
    if (hi <= lo) hi = lo + 1.0;

    auto px = [&](double x) { return kL + (x - xmin) / (xmax - xmin) * (kW - kL - kR); };
    auto py = [&](double y) {
        return kH - kB - (std::log10(y) - lo) / (hi - lo) * (kH - kT - kB);
    };

    std::ofstream out = open_out(path);
    header(out, title, x_label, y_label);
    // decade gridlines + y tick labels
    for (double d = lo; d <= hi + 1e-9; d += 1.0) {
        const double y = py(std::pow(10.0, d));
        out << "<line x1=\"" << kL << "\" y1=\"" << y << "\" x2=\"" << kW - kR << "\" y2=\""
            << y << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << kL - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">1e"
            << static_cast<int>(d) << "</text>\n";
    }
    const int xticks = 6;
    for (int i = 0; i <= xticks; ++i) {
        const double x = xmin + (xmax - xmin) * i / xticks;
        out << "<line x1=\"" << px(x) << "\" y1=\"" << kH - kB << "\" x2=\"" << px(x)
            << "\" y2=\"" << kH - kB + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px(x) << "\" y=\"" << kH - kB + 18
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
            << fmt(x) << "</text>\n";
    }
    out << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR
        << "\" height=\"" << kH - kT - kB << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % 8];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
        for (auto [x, y] : series[si].points) {
            if (!(y > 0.0)) continue;
            out << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
        }
        out << "\"/>\n";
        const double ly = kT + 16.0 + 16.0 * static_cast<double>(si);
        out << "<line x1=\"" << kW - kR - 150 << "\" y1=\"" << ly << "\" x2=\""
            << kW - kR - 126 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kW - kR - 120 << "\" y=\"" << ly + 4
            << "\" font-size=\"11\" font-family=\"sans-serif\">" << series[si].label
            << "</text>\n";
    }
    out << "</svg>\n";
}

void heatmap(const std::string& path, const std::string& title, const std::string& x_label,
             const std::string& y_label, const std::vector<double>& xs,
             const std::vector<double>& ys, const std::vector<std::vector<double>>& z) {
    if (xs.empty() || ys.empty() || z.size() != ys.size()) {
        throw ValidationError("plot: heatmap grid shape mismatch");
    }
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& row : z) {
        for (double v : row) {
            if (v > 0.0) {
                lo = std::min(lo, std::log10(v));
                hi = std::max(hi, std::log10(v));
            }
        }
    }
    if (!(hi >= lo)) throw ValidationError("plot: no positive data to draw");
    if (hi == lo) hi = lo + 1.0;

    const double cw = (kW - kL - kR) / static_cast<double>(xs.size());
    const double ch = (kH - kT - kB) / static_cast<double>(ys.size());
    std::ofstream out = open_out(path);
    header(out, title, x_label, y_label);
    for (std::size_t yi = 0; yi < ys.size(); ++yi) {
        for (std::size_t xi = 0; xi < xs.size(); ++xi) {
            const double v = z[yi][xi];
            double t = v > 0.0 ? (std::log10(v) - lo) / (hi - lo) : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            const int r = static_cast<int>(255.0 * t);
            const int b = static_cast<int>(255.0 * (1.0 - t));
            const int g = static_cast<int>(80.0 * (1.0 - std::abs(2.0 * t - 1.0)));
            out << "<rect x=\"" << fmt(kL + cw * static_cast<double>(xi)) << "\" y=\""
                << fmt(kH - kB - ch * static_cast<double>(yi + 1)) << "\" width=\"" << fmt(cw + 0.5)
                << "\" height=\"" << fmt(ch + 0.5) << "\" fill=\"rgb(" << r << ',' << g << ','
                << b << ")\"/>\n";
        }
    }
    out << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR
        << "\" height=\"" << kH - kT - kB << "\" fill=\"none\" stroke=\"black\"/>\n"
        << "<text x=\"" << kL << "\" y=\"" << kH - kB + 18
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << x_label << ": " << fmt(xs.front())
        << " .. " << fmt(xs.back()) << "; " << y_label << ": " << fmt(ys.front()) << " .. "
        << fmt(ys.back()) << "; color: log10 BER " << fmt(lo) << " .. " << fmt(hi)
        << "</text>\n</svg>\n";
}

} // namespace vortexhop::svgplot
