#include "svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace thzmol::cli {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

std::string fixed(double v) {
    char buf[48];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, ptr);
}

std::string label(double v) {
    char buf[48];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4);
    return std::string(buf, ptr);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_line_plot(const PlotSpec& spec, const std::vector<Series>& series) {
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    double y_pos_min = x_lo;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            x_lo = std::min(x_lo, s.x[i] * spec.x_scale);
            x_hi = std::max(x_hi, s.x[i] * spec.x_scale);
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
            if (s.y[i] > 0.0) y_pos_min = std::min(y_pos_min, s.y[i]);
        }
    }
    if (!(x_hi > x_lo)) { x_lo -= 0.5; x_hi += 0.5; }
    auto ty = [&](double y) { return spec.log_y ? std::log10(y) : y; };
    if (spec.log_y) {
        if (!std::isfinite(y_pos_min)) y_pos_min = 1.0;
        y_hi = std::max(y_hi, y_pos_min);
        y_lo = std::max(y_pos_min, y_hi * 1e-12);
        y_lo = std::pow(10.0, std::floor(std::log10(y_lo)));
        y_hi = std::pow(10.0, std::ceil(std::log10(y_hi)));
        if (y_hi <= y_lo) y_hi = y_lo * 10.0;
    } else {
        if (!std::isfinite(y_lo)) { y_lo = 0.0; y_hi = 1.0; }
        y_lo = std::min(y_lo, 0.0);
        if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;
    }
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x * spec.x_scale - x_lo) / (x_hi - x_lo) * pw; };
    auto py = [&](double y) {
        const double v = spec.log_y ? std::max(y, y_lo) : y;
        return kTop + ph - (ty(v) - ty(y_lo)) / (ty(y_hi) - ty(y_lo)) * ph;
    };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(spec.title) << "</text>\n";
    o << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(pw) << "\" height=\""
      << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 5.0;
        const double x = kLeft + pw * i / 5.0;
        o << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(kTop + ph) << "\" x2=\"" << fixed(x) << "\" y2=\""
          << fixed(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(kTop + ph + 20) << "\" text-anchor=\"middle\">"
          << label(xv) << "</text>\n";
    }
    if (spec.log_y) {
        for (double d = std::log10(y_lo); d <= std::log10(y_hi) + 1e-9; d += 1.0) {
            const double y = py(std::pow(10.0, d));
            o << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(kLeft)
              << "\" y2=\"" << fixed(y) << "\" stroke=\"black\"/>\n";
            o << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">1e"
              << static_cast<int>(std::lround(d)) << "</text>\n";
        }
    } else {
        for (int i = 0; i <= 5; ++i) {
            const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
            const double y = py(yv);
            o << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(kLeft)
              << "\" y2=\"" << fixed(y) << "\" stroke=\"black\"/>\n";
            o << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">"
              << label(yv) << "</text>\n";
        }
    }
    o << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"" << fixed(kHeight - 15) << "\" text-anchor=\"middle\">"
      << escape(spec.x_label) << "</text>\n";
    o << "<text transform=\"translate(18," << fixed(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(spec.y_label) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kColors[s % std::size(kColors)];
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (i) o << ' ';
            o << fixed(px(series[s].x[i])) << ',' << fixed(py(series[s].y[i]));
        }
        o << "\"/>\n";
        const double ly = kTop + 10 + 18.0 * static_cast<double>(s);
        o << "<line x1=\"" << fixed(kLeft + pw + 10) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(kLeft + pw + 30)
          << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << fixed(kLeft + pw + 35) << "\" y=\"" << fixed(ly + 4) << "\">" << escape(series[s].name)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace thzmol::cli
