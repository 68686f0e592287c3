#include "sfgm/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "sfgm/errors.hpp"

namespace sfgm {

namespace {

constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
};

// Fixed two-decimal formatting keeps coordinates deterministic and compact.
std::string fixed2(double value) {
  std::array<char, 64> buffer;
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                    std::chars_format::fixed, 2);
  return std::string(buffer.data(), ptr);
}

std::string fixed0(double value) {
  std::array<char, 64> buffer;
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                    std::chars_format::fixed, 0);
  return std::string(buffer.data(), ptr);
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
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

bool drawable(double x, double y) {
  return std::isfinite(x) && std::isfinite(y) && y > 0.0;
}

}  // namespace

std::string emit_svg(const std::vector<PlotSeries>& series, const PlotOptions& options) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -std::numeric_limits<double>::infinity();
  double ly_min = std::numeric_limits<double>::infinity();
  double ly_max = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!drawable(x, y)) continue;
      any = true;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      const double ly = std::log10(y);
      ly_min = std::min(ly_min, ly);
      ly_max = std::max(ly_max, ly);
    }
  }
  if (!any) throw Error("no drawable points (log-scale axis needs positive finite values)");
  if (x_max - x_min < 1e-12) { x_min -= 0.5; x_max += 0.5; }
  if (ly_max - ly_min < 1e-12) { ly_min -= 0.5; ly_max += 0.5; }

  const double left = 70, right = 180, top = 40, bottom = 50;
  const double w = options.width, h = options.height;
  const double pw = w - left - right, ph = h - top - bottom;
  const auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
  const auto py = [&](double ly) { return top + (ly_max - ly) / (ly_max - ly_min) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(options.width) + "\" height=\"" + std::to_string(options.height) +
         "\" viewBox=\"0 0 " + std::to_string(options.width) + " " +
         std::to_string(options.height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(options.width) + "\" height=\"" +
         std::to_string(options.height) + "\" fill=\"white\"/>\n";

  if (!options.title.empty())
    svg += "<text x=\"" + fixed2(w / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"16\">" +
           xml_escape(options.title) + "</text>\n";

  // Frame.
  svg += "<rect x=\"" + fixed2(left) + "\" y=\"" + fixed2(top) + "\" width=\"" + fixed2(pw) +
         "\" height=\"" + fixed2(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  // Horizontal decade grid and labels.
  const long dec_lo = static_cast<long>(std::ceil(ly_min - 1e-9));
  const long dec_hi = static_cast<long>(std::floor(ly_max + 1e-9));
  const long span = std::max<long>(dec_hi - dec_lo, 0);
  const long step = std::max<long>(1, (span + 7) / 8);
  for (long d = dec_lo; d <= dec_hi; d += step) {
    const double y = py(static_cast<double>(d));
    svg += "<line x1=\"" + fixed2(left) + "\" y1=\"" + fixed2(y) + "\" x2=\"" +
           fixed2(left + pw) + "\" y2=\"" + fixed2(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fixed2(left - 8) + "\" y=\"" + fixed2(y + 4) +
           "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">1e" +
           std::to_string(d) + "</text>\n";
  }

  // Five x ticks.
  for (int t = 0; t <= 4; ++t) {
    const double x = x_min + (x_max - x_min) * t / 4.0;
    const double xp = px(x);
    svg += "<line x1=\"" + fixed2(xp) + "\" y1=\"" + fixed2(top + ph) + "\" x2=\"" + fixed2(xp) +
           "\" y2=\"" + fixed2(top + ph + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed2(xp) + "\" y=\"" + fixed2(top + ph + 20) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">" + fixed0(x) +
           "</text>\n";
  }

  if (!options.x_label.empty())
    svg += "<text x=\"" + fixed2(left + pw / 2) + "\" y=\"" + fixed2(h - 12) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">" +
           xml_escape(options.x_label) + "</text>\n";
  if (!options.y_label.empty())
    svg += "<text x=\"16\" y=\"" + fixed2(top + ph / 2) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" "
           "transform=\"rotate(-90 16 " +
           fixed2(top + ph / 2) + ")\">" + xml_escape(options.y_label) + "</text>\n";

  // Series.
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPalette.size()];
    std::string points;
    long visible = 0;
    double last_x = 0, last_y = 0;
    for (const auto& [x, y] : series[s].points) {
      if (!drawable(x, y)) continue;
      ++visible;
      last_x = px(x);
      last_y = py(std::log10(y));
      points += fixed2(last_x) + "," + fixed2(last_y) + " ";
    }
    if (visible == 0) continue;
    if (visible == 1) {
      svg += "<circle cx=\"" + fixed2(last_x) + "\" cy=\"" + fixed2(last_y) +
             "\" r=\"3\" fill=\"" + std::string(color) + "\"/>\n";
    } else {
      points.pop_back();
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    }
  }

  // Legend, input order.
  const double legend_x = left + pw + 14;
  double legend_y = top + 14;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPalette.size()];
    svg += "<line x1=\"" + fixed2(legend_x) + "\" y1=\"" + fixed2(legend_y - 4) + "\" x2=\"" +
           fixed2(legend_x + 22) + "\" y2=\"" + fixed2(legend_y - 4) + "\" stroke=\"" +
           std::string(color) + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fixed2(legend_x + 28) + "\" y=\"" + fixed2(legend_y) +
           "\" font-family=\"monospace\" font-size=\"12\">" + xml_escape(series[s].label) +
           "</text>\n";
    legend_y += 18;
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace sfgm
