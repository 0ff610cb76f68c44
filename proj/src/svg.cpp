/*
 * Copyright (c) 2026, rtpol contributors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rtpol/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "rtpol/csv.hpp"

namespace rtpol::svg {

namespace {

std::string xml_escape(std::string_view s) {
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

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::ofstream open(const std::filesystem::path& path, double w, double h) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
        << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\" font-family=\"sans-serif\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return out;
}

std::string diverging(double t) {
    // t in [0,1]: blue -> white -> red
    t = std::clamp(t, 0.0, 1.0);
    int r, g, b;
    if (t < 0.5) {
        const double u = t / 0.5;
        r = static_cast<int>(33 + u * (255 - 33));
        g = static_cast<int>(102 + u * (255 - 102));
        b = static_cast<int>(172 + u * (255 - 172));
    } else {
        const double u = (t - 0.5) / 0.5;
        r = static_cast<int>(255 - u * (255 - 178));
        g = static_cast<int>(255 - u * (255 - 24));
        b = static_cast<int>(255 - u * (255 - 43));
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

}  // namespace

void heatmap(const std::filesystem::path& path, const std::string& title, const std::vector<std::string>& row_labels,
             const std::vector<std::string>& col_labels, std::span<const std::optional<double>> values, double vmin,
             double vmax) {
    const std::size_t nr = row_labels.size(), nc = col_labels.size();
    if (values.size() != nr * nc) throw std::invalid_argument("heatmap: value count does not match labels");
    const double cell = std::clamp(600.0 / static_cast<double>(std::max<std::size_t>({nr, nc, 1})), 1.0, 40.0);
    const bool show_rows = nr <= 60, show_cols = nc <= 60;
    const double left = show_rows ? 110.0 : 20.0, top = show_cols ? 110.0 : 40.0;
    const double w = left + cell * static_cast<double>(nc) + 80.0;
    const double h = top + cell * static_cast<double>(nr) + 30.0;
    auto out = open(path, w, h);
    out << "<text x=\"" << num(left) << "\" y=\"20\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            const auto& v = values[i * nc + j];
            const std::string fill = v ? diverging((*v - vmin) / (vmax - vmin)) : std::string("#bdbdbd");
            out << "<rect x=\"" << num(left + cell * j) << "\" y=\"" << num(top + cell * i) << "\" width=\""
                << num(cell) << "\" height=\"" << num(cell) << "\" fill=\"" << fill << "\"/>\n";
        }
    }
    if (show_rows) {
        for (std::size_t i = 0; i < nr; ++i) {
            out << "<text x=\"" << num(left - 4) << "\" y=\"" << num(top + cell * (i + 0.5) + 4)
                << "\" font-size=\"10\" text-anchor=\"end\">" << xml_escape(row_labels[i]) << "</text>\n";
        }
    }
    if (show_cols) {
        for (std::size_t j = 0; j < nc; ++j) {
            const double x = left + cell * (j + 0.5);
            out << "<text x=\"" << num(x) << "\" y=\"" << num(top - 4) << "\" font-size=\"10\" transform=\"rotate(-60 "
                << num(x) << ' ' << num(top - 4) << ")\">" << xml_escape(col_labels[j]) << "</text>\n";
        }
    }
    // color bar
    const double bx = left + cell * static_cast<double>(nc) + 20.0;
    const double bh = std::max(cell * static_cast<double>(nr), 60.0);
    for (int k = 0; k < 50; ++k) {
        out << "<rect x=\"" << num(bx) << "\" y=\"" << num(top + bh * k / 50.0) << "\" width=\"12\" height=\""
            << num(bh / 50.0 + 0.5) << "\" fill=\"" << diverging(1.0 - k / 49.0) << "\"/>\n";
    }
    out << "<text x=\"" << num(bx + 16) << "\" y=\"" << num(top + 8) << "\" font-size=\"10\">"
        << csv::format_double(vmax, 3) << "</text>\n";
    out << "<text x=\"" << num(bx + 16) << "\" y=\"" << num(top + bh) << "\" font-size=\"10\">"
        << csv::format_double(vmin, 3) << "</text>\n";
    out << "</svg>\n";
}

void scatter(const std::filesystem::path& path, const std::string& title, std::span<const Point> points,
             std::span<const int> labels) {
    if (points.size() != labels.size()) throw std::invalid_argument("scatter: label count mismatch");
    const double size = 500.0, pad = 30.0;
    double minx = 0, maxx = 1, miny = 0, maxy = 1;
    if (!points.empty()) {
        minx = maxx = points[0].x;
        miny = maxy = points[0].y;
        for (const auto& p : points) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
    }
    const double span = std::max({maxx - minx, maxy - miny, 1e-9});
    auto out = open(path, size + 2 * pad, size + 2 * pad + 20);
    out << "<text x=\"" << num(pad) << "\" y=\"20\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double x = pad + (points[i].x - minx) / span * size;
        const double y = pad + 20 + (points[i].y - miny) / span * size;
        out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"2.5\" fill=\""
            << (labels[i] < 0 ? kPalette[0] : kPalette[1]) << "\" fill-opacity=\"0.7\"/>\n";
    }
    out << "</svg>\n";
}

void lines(const std::filesystem::path& path, const std::string& title, const std::vector<Series>& series,
           bool log_x, bool log_y, bool steps) {
    const double w = 560.0, h = 380.0, left = 60.0, right = 130.0, top = 40.0, bottom = 40.0;
    auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
    auto ok = [&](const std::pair<double, double>& p) {
        return (!log_x || p.first > 0.0) && (!log_y || p.second > 0.0);
    };
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            if (!ok(p)) continue;
            x0 = std::min(x0, tx(p.first));
            x1 = std::max(x1, tx(p.first));
            y0 = std::min(y0, ty(p.second));
            y1 = std::max(y1, ty(p.second));
        }
    }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 - x0 < 1e-12) x1 = x0 + 1;
    if (y1 - y0 < 1e-12) y1 = y0 + 1;
    const double pw = w - left - right, ph = h - top - bottom;
    auto px = [&](double v) { return left + (tx(v) - x0) / (x1 - x0) * pw; };
    auto py = [&](double v) { return top + ph - (ty(v) - y0) / (y1 - y0) * ph; };

    auto out = open(path, w, h);
    out << "<text x=\"" << num(left) << "\" y=\"22\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
    out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
        << "\" fill=\"none\" stroke=\"#444\"/>\n";
    auto axis_label = [&](double v, bool log) { return csv::format_double(log ? std::pow(10.0, v) : v, 3); };
    out << "<text x=\"" << num(left) << "\" y=\"" << num(h - 20) << "\" font-size=\"10\">" << axis_label(x0, log_x)
        << "</text>\n<text x=\"" << num(left + pw) << "\" y=\"" << num(h - 20)
        << "\" font-size=\"10\" text-anchor=\"end\">" << axis_label(x1, log_x) << "</text>\n";
    out << "<text x=\"" << num(left - 4) << "\" y=\"" << num(top + ph) << "\" font-size=\"10\" text-anchor=\"end\">"
        << axis_label(y0, log_y) << "</text>\n<text x=\"" << num(left - 4) << "\" y=\"" << num(top + 8)
        << "\" font-size=\"10\" text-anchor=\"end\">" << axis_label(y1, log_y) << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kPalette[k % std::size(kPalette)];
        std::string d;
        bool first = true;
        double prev_y = 0.0;
        for (const auto& p : series[k].points) {
            if (!ok(p)) continue;
            const double x = px(p.first), y = py(p.second);
            if (first) {
                d += "M" + num(x) + "," + num(y);
            } else {
                if (steps) d += " L" + num(x) + "," + num(prev_y);
                d += " L" + num(x) + "," + num(y);
            }
            first = false;
            prev_y = y;
        }
        out << "<path d=\"" << d << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << num(left + pw + 8) << "\" y=\"" << num(top + 14 + 14.0 * k) << "\" font-size=\"11\" fill=\""
            << color << "\">" << xml_escape(series[k].name) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace rtpol::svg
