/// engage/svg.hpp
///
/// Minimal SVG emission for the two documentation plots: a cumulative curve
/// with its fitted logistic, and the SI-vs-LH scatter.

#ifndef ENGAGE_SVG_HPP_
#define ENGAGE_SVG_HPP_

#include <algorithm>
#include <cstdio>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace engage::svg
{
    struct Frame
    {
        double x_min, x_max, y_min, y_max;
        double width = 640, height = 420, margin = 56;

        double px(double x) const
        {
            return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin);
        }

        double py(double y) const
        {
            return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin);
        }
    };

    inline std::string num(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return buf;
    }

    inline std::string escape(std::string_view s)
    {
        std::string out;
        for(char c : s)
        {
            switch(c)
            {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
            }
        }
        return out;
    }

    inline std::string header(const Frame &f, std::string_view title, std::string_view xlabel, std::string_view ylabel)
    {
        std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(f.width) + "\" height=\"" + num(f.height) +
             "\" viewBox=\"0 0 " + num(f.width) + " " + num(f.height) + "\">\n";
        s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        s += "<text x=\"" + num(f.width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
             escape(title) + "</text>\n";
        // axes
        s += "<line x1=\"" + num(f.margin) + "\" y1=\"" + num(f.height - f.margin) + "\" x2=\"" + num(f.width - f.margin) +
             "\" y2=\"" + num(f.height - f.margin) + "\" stroke=\"black\"/>\n";
        s += "<line x1=\"" + num(f.margin) + "\" y1=\"" + num(f.margin) + "\" x2=\"" + num(f.margin) + "\" y2=\"" +
             num(f.height - f.margin) + "\" stroke=\"black\"/>\n";
        for(int i = 0; i <= 4; ++i)
        {
            const double xv = f.x_min + (f.x_max - f.x_min) * i / 4.0;
            const double yv = f.y_min + (f.y_max - f.y_min) * i / 4.0;
            s += "<text x=\"" + num(f.px(xv)) + "\" y=\"" + num(f.height - f.margin + 16) +
                 "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + num(xv) + "</text>\n";
            s += "<text x=\"" + num(f.margin - 6) + "\" y=\"" + num(f.py(yv) + 4) +
                 "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(yv) + "</text>\n";
        }
        s += "<text x=\"" + num(f.width / 2) + "\" y=\"" + num(f.height - 14) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + escape(xlabel) + "</text>\n";
        s += "<text x=\"16\" y=\"" + num(f.height / 2) + "\" transform=\"rotate(-90 16 " + num(f.height / 2) +
             ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + escape(ylabel) + "</text>\n";
        return s;
    }

    inline std::string polyline(const Frame &f, std::span<const std::pair<double, double>> pts, std::string_view color,
                                double stroke_width = 1.5)
    {
        std::string s = "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"" + num(stroke_width) +
                        "\" points=\"";
        for(const auto &[x, y] : pts)
            s += num(f.px(x)) + "," + num(f.py(y)) + " ";
        s += "\"/>\n";
        return s;
    }

    /// Step curve of the observed series plus the fitted curve.
    inline std::string curve_plot(std::string_view title, std::span<const std::pair<double, double>> observed,
                                  std::span<const std::pair<double, double>> fitted)
    {
        double x_max = 1.0;
        for(const auto &p : observed)
            x_max = std::max(x_max, p.first);
        Frame f{0.0, x_max, 0.0, 1.0};
        std::string s = header(f, title, "days since first post", "cumulative engagement fraction");
        s += polyline(f, observed, "#1f77b4", 2.0);
        s += polyline(f, fitted, "#d62728", 1.5);
        s += "</svg>\n";
        return s;
    }

    inline std::string scatter_plot(std::string_view title, std::span<const std::pair<double, double>> pts,
                                    std::string_view xlabel, std::string_view ylabel, double x_min, double x_max,
                                    double y_min, double y_max)
    {
        Frame f{x_min, x_max, y_min, y_max};
        std::string s = header(f, title, xlabel, ylabel);
        for(const auto &[x, y] : pts)
            s += "<circle cx=\"" + num(f.px(x)) + "\" cy=\"" + num(f.py(y)) + "\" r=\"3\" fill=\"#1f77b4\" fill-opacity=\"0.6\"/>\n";
        s += "</svg>\n";
        return s;
    }
}

#endif
