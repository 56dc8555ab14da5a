#include "stewart/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stewart {

namespace {

struct Series {
    std::string label;
    std::string color;
    bool dashed{false};
    std::vector<double> y;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Tick spacing of the form {1, 2, 5} * 10^k closest to span / 5.
std::vector<double> nice_ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> ticks;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
        ticks.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    }
    return ticks;
}

// One x-y chart rendered into a <g> at the given offset.
class SubChart {
  public:
    SubChart(double ox, double oy, double width, double height)
        : ox_(ox), oy_(oy), w_(width), h_(height) {}

    std::string render(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<double>& x,
                       const std::vector<Series>& series) const {
        double x_lo = x.front(), x_hi = x.back();
        double y_lo = series.front().y.front(), y_hi = y_lo;
        for (const Series& s : series) {
            for (double v : s.y) {
                y_lo = std::min(y_lo, v);
                y_hi = std::max(y_hi, v);
            }
        }
        const double pad = std::max(0.05 * (y_hi - y_lo), 1e-9);
        y_lo -= pad;
        y_hi += pad;

        const double px0 = ox_ + 62.0, px1 = ox_ + w_ - 12.0;
        const double py0 = oy_ + 26.0, py1 = oy_ + h_ - 34.0;
        auto map_x = [&](double v) { return px0 + (v - x_lo) / (x_hi - x_lo) * (px1 - px0); };
        auto map_y = [&](double v) { return py1 - (v - y_lo) / (y_hi - y_lo) * (py1 - py0); };

        std::ostringstream svg;
        svg << "<g>\n";
        svg << "<text x=\"" << num(ox_ + w_ / 2) << "\" y=\"" << num(oy_ + 16)
            << "\" text-anchor=\"middle\" class=\"title\">" << title << "</text>\n";

        for (double tv : nice_ticks(x_lo, x_hi)) {
            const double X = map_x(tv);
            svg << "<line x1=\"" << num(X) << "\" y1=\"" << num(py0) << "\" x2=\"" << num(X)
                << "\" y2=\"" << num(py1) << "\" class=\"grid\"/>\n";
            svg << "<text x=\"" << num(X) << "\" y=\"" << num(py1 + 14)
                << "\" text-anchor=\"middle\" class=\"tick\">" << num(tv) << "</text>\n";
        }
        for (double tv : nice_ticks(y_lo, y_hi)) {
            const double Y = map_y(tv);
            svg << "<line x1=\"" << num(px0) << "\" y1=\"" << num(Y) << "\" x2=\"" << num(px1)
                << "\" y2=\"" << num(Y) << "\" class=\"grid\"/>\n";
            svg << "<text x=\"" << num(px0 - 5) << "\" y=\"" << num(Y + 3)
                << "\" text-anchor=\"end\" class=\"tick\">" << num(tv) << "</text>\n";
        }
        svg << "<rect x=\"" << num(px0) << "\" y=\"" << num(py0) << "\" width=\""
            << num(px1 - px0) << "\" height=\"" << num(py1 - py0) << "\" class=\"frame\"/>\n";
        svg << "<text x=\"" << num((px0 + px1) / 2) << "\" y=\"" << num(py1 + 28)
            << "\" text-anchor=\"middle\" class=\"label\">" << x_label << "</text>\n";
        svg << "<text x=\"" << num(ox_ + 14) << "\" y=\"" << num((py0 + py1) / 2)
            << "\" text-anchor=\"middle\" class=\"label\" transform=\"rotate(-90 "
            << num(ox_ + 14) << " " << num((py0 + py1) / 2) << ")\">" << y_label
            << "</text>\n";

        for (const Series& s : series) {
            svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\"";
            if (s.dashed) svg << " stroke-dasharray=\"5 3\"";
            svg << " points=\"";
            for (size_t i = 0; i < x.size(); ++i) {
                svg << num(map_x(x[i])) << "," << num(map_y(s.y[i])) << " ";
            }
            svg << "\"/>\n";
        }

        double lx = px1 - 118.0;
        double ly = py0 + 12.0;
        for (const Series& s : series) {
            svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
                << num(lx + 18) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << s.color
                << "\" stroke-width=\"2\"";
            if (s.dashed) svg << " stroke-dasharray=\"5 3\"";
            svg << "/>\n";
            svg << "<text x=\"" << num(lx + 23) << "\" y=\"" << num(ly)
                << "\" class=\"tick\">" << s.label << "</text>\n";
            ly += 13.0;
        }
        svg << "</g>\n";
        return svg.str();
    }

  private:
    double ox_, oy_, w_, h_;
};

std::string svg_document(double width, double height, const std::string& body,
                         const std::string& desc = "") {
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
        << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << " "
        << num(height) << "\">\n";
    if (!desc.empty()) svg << "<desc>" << desc << "</desc>\n";
    svg << "<style>\n"
        << ".title { font: bold 13px sans-serif; fill: #333; }\n"
        << ".label { font: 11px sans-serif; fill: #333; }\n"
        << ".tick { font: 10px sans-serif; fill: #555; }\n"
        << ".grid { stroke: #ddd; stroke-width: 0.5; }\n"
        << ".frame { fill: none; stroke: #888; stroke-width: 1; }\n"
        << "</style>\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body << "</svg>\n";
    return svg.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
}

}  // namespace

void render_plots(const std::vector<SimRecord>& records, const std::string& dir) {
    if (records.empty()) throw std::invalid_argument("no records to plot");

    const std::filesystem::path out_dir(dir);
    std::filesystem::create_directories(out_dir);

    std::vector<double> t;
    t.reserve(records.size());
    for (const SimRecord& r : records) t.push_back(r.t);

    const char* axis_title[6] = {"X", "Y", "Z", "phi", "theta", "psi"};
    const char* axis_unit[6] = {"x [m]", "y [m]", "z [m]",
                                "phi [rad]", "theta [rad]", "psi [rad]"};

    {
        const double sub_w = 470.0, sub_h = 260.0;
        std::ostringstream body;
        for (int a = 0; a < 6; ++a) {
            std::vector<Series> series(3);
            series[0] = {"desired", "#2ca02c", true, {}};
            series[1] = {"true", "#1f77b4", false, {}};
            series[2] = {"estimate", "#ff7f0e", false, {}};
            for (const SimRecord& r : records) {
                series[0].y.push_back(r.xi_des(a));
                series[1].y.push_back(r.xi_true(a));
                series[2].y.push_back(r.xhat(a));
            }
            const SubChart chart((a % 2) * sub_w, (a / 2) * sub_h, sub_w, sub_h);
            body << chart.render(axis_title[a], "t [s]", axis_unit[a], t, series);
        }
        write_file(out_dir / "positions.svg",
                   svg_document(2 * sub_w, 3 * sub_h, body.str(),
                                "platform pose: desired, true, and estimated"));
    }

    {
        const char* palette[6] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                  "#d62728", "#9467bd", "#8c564b"};
        std::vector<Series> series(6);
        for (int i = 0; i < 6; ++i) {
            series[static_cast<size_t>(i)] = {"leg " + std::to_string(i + 1),
                                              palette[i], false, {}};
            for (const SimRecord& r : records) {
                series[static_cast<size_t>(i)].y.push_back(r.F(i));
            }
        }
        const SubChart chart(0.0, 0.0, 940.0, 420.0);
        write_file(out_dir / "forces.svg",
                   svg_document(940.0, 420.0,
                                chart.render("Actuator forces", "t [s]", "F [N]", t, series),
                                "actuator forces"));
    }

    {
        std::vector<Series> series(3);
        series[0] = {"e_l (estimate vs true)", "#1f77b4", false, {}};
        series[1] = {"e_t (true vs desired)", "#ff7f0e", false, {}};
        series[2] = {"e_cs (desired vs estimate)", "#2ca02c", false, {}};
        for (const SimRecord& r : records) {
            series[0].y.push_back(r.e_l);
            series[1].y.push_back(r.e_t);
            series[2].y.push_back(r.e_cs);
        }
        const SubChart chart(0.0, 0.0, 940.0, 420.0);
        std::string body =
            chart.render("Tracking and estimation errors", "t [s]", "error norm", t, series);
        write_file(out_dir / "errors.svg",
                   svg_document(940.0, 420.0, body,
                                "final e_l = " + full(records.back().e_l)));
    }
}

}  // namespace stewart
