#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "wikinav/report.hpp"

namespace wikinav {

namespace {

struct Series {
    std::string label;
    std::string color;
    std::vector<double> xs;
    std::vector<double> ys;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

// Minimal line chart; CSV/JSON stay the machine-readable contract.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series) {
    const double width = 640, height = 420;
    const double left = 70, right = 20, top = 50, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    bool first = true;
    for (const Series& s : series) {
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (first) {
                x_min = x_max = s.xs[i];
                y_min = y_max = s.ys[i];
                first = false;
            }
            x_min = std::min(x_min, s.xs[i]);
            x_max = std::max(x_max, s.xs[i]);
            y_min = std::min(y_min, s.ys[i]);
            y_max = std::max(y_max, s.ys[i]);
        }
    }
    if (y_min > 0.0) y_min = 0.0;
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;

    auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double y) { return top + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
           fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(width / 2) +
           "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">" +
           title + "</text>\n";

    for (int tick = 0; tick <= 5; ++tick) {
        const double y = y_min + (y_max - y_min) * tick / 5.0;
        const double py = sy(y);
        svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(py) + "\" x2=\"" +
               fmt(left + plot_w) + "\" y2=\"" + fmt(py) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(left - 8) + "\" y=\"" + fmt(py + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + fmt(y) +
               "</text>\n";
    }
    for (int tick = 0; tick <= 5; ++tick) {
        const double x = x_min + (x_max - x_min) * tick / 5.0;
        const double px = sx(x);
        svg += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(top + plot_h + 18) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" + fmt(x) +
               "</text>\n";
    }
    svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(top) + "\" x2=\"" + fmt(left) +
           "\" y2=\"" + fmt(top + plot_h) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(top + plot_h) + "\" x2=\"" +
           fmt(left + plot_w) + "\" y2=\"" + fmt(top + plot_h) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt(left + plot_w / 2) + "\" y=\"" + fmt(height - 16) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" + x_label +
           "</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt(top + plot_h / 2) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           fmt(top + plot_h / 2) + ")\">" + y_label + "</text>\n";

    double legend_y = top + 6;
    for (const Series& s : series) {
        if (s.xs.empty()) continue;
        std::string points;
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            points += fmt(sx(s.xs[i])) + "," + fmt(sy(s.ys[i]));
            if (i + 1 < s.xs.size()) points += " ";
        }
        svg += "<polyline fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
        svg += "<rect x=\"" + fmt(left + plot_w - 150) + "\" y=\"" + fmt(legend_y - 9) +
               "\" width=\"12\" height=\"4\" fill=\"" + s.color + "\"/>\n";
        svg += "<text x=\"" + fmt(left + plot_w - 132) + "\" y=\"" + fmt(legend_y - 3) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + s.label + "</text>\n";
        legend_y += 16;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace

std::string exposure_report_svg(const ExposureReport& report) {
    Series e_p{"e P->PBAR", "#c0392b", {}, {}};
    Series e_q{"e PBAR->P", "#2980b9", {}, {}};
    Series mut{"mutual", "#27ae60", {}, {}};
    for (const StepExposure& s : report.steps) {
        e_p.xs.push_back(s.l);
        e_p.ys.push_back(s.e_p_to_pbar);
        e_q.xs.push_back(s.l);
        e_q.ys.push_back(s.e_pbar_to_p);
        mut.xs.push_back(s.l);
        mut.ys.push_back(s.mutual);
    }
    char title[128];
    std::snprintf(title, sizeof(title), "%s | %s | alpha=%g", report.topic.c_str(),
                  report.cwp.c_str(), report.alpha);
    return line_chart(title, "clicks", "exposure", {e_p, e_q, mut});
}

}  // namespace wikinav
