#include "corp/svg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace corp {

namespace {

constexpr double kWidth = 600.0;
constexpr double kPanel = 600.0;
constexpr double kStrip = 120.0;
constexpr double kLeft = 60.0;
constexpr double kTop = 20.0;
constexpr double kSide = 520.0;

double px(double x) { return kLeft + kSide * x; }
double py(double p) { return kTop + kSide * (1.0 - p); }

std::string point(double x, double p) { return fmt::format("{:.2f},{:.2f}", px(x), py(p)); }

std::string score_text(double v) {
  return std::isfinite(v) ? fmt::format("{:.3f}", v) : std::string("inf");
}

}  // namespace

std::string render_svg(const ReliabilityDiagram& diagram) {
  std::string svg;
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
      "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kPanel + kStrip);
  svg += fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", kWidth,
                     kPanel + kStrip);

  // Axes and ticks.
  svg += fmt::format(
      "<rect class=\"frame\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
      "fill=\"none\" stroke=\"black\"/>\n",
      kLeft, kTop, kSide, kSide);
  for (int t = 0; t <= 5; ++t) {
    const double v = t / 5.0;
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:.1f}</text>\n",
                       px(v), kTop + kSide + 16.0, v);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.1f}</text>\n",
                       kLeft - 6.0, py(v) + 4.0, v);
  }
  svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">Forecast value</text>\n",
                     px(0.5), kTop + kSide + 34.0);
  svg += fmt::format(
      "<text x=\"16\" y=\"{:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2f})\">"
      "CEP</text>\n",
      py(0.5), py(0.5));

  if (diagram.band && !diagram.band->positions.empty()) {
    const UncertaintyBand& band = *diagram.band;
    std::string pts;
    for (std::size_t j = 0; j < band.positions.size(); ++j) {
      pts += (pts.empty() ? "" : " ") + point(band.positions[j], band.upper[j]);
    }
    for (std::size_t j = band.positions.size(); j-- > 0;) {
      pts += " " + point(band.positions[j], band.lower[j]);
    }
    svg += fmt::format("<polygon class=\"band\" points=\"{}\" fill=\"#b3cde3\" "
                       "fill-opacity=\"0.6\" stroke=\"none\"/>\n",
                       pts);
  }

  svg += fmt::format("<line class=\"diagonal\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" "
                     "y2=\"{:.2f}\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n",
                     px(0.0), py(0.0), px(1.0), py(1.0));

  std::string curve;
  for (const DiagramPoint& p : diagram.points) {
    curve += (curve.empty() ? "" : " ") + point(p.forecast, p.calibrated);
  }
  svg += fmt::format("<polyline class=\"curve\" points=\"{}\" fill=\"none\" stroke=\"#d7301f\" "
                     "stroke-width=\"2\"/>\n",
                     curve);
  if (diagram.mode == DiagramMode::Discrete) {
    for (const DiagramPoint& p : diagram.points) {
      svg += fmt::format("<circle class=\"point\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" "
                         "fill=\"#d7301f\"/>\n",
                         px(p.forecast), py(p.calibrated));
    }
  }

  const ScoreDecomposition& a = diagram.annotation;
  svg += fmt::format("<text class=\"annotation\" x=\"{:.2f}\" y=\"{:.2f}\">{}  MCB {}  DSC {}  "
                     "UNC {}</text>\n",
                     kLeft + 8.0, kTop + 18.0, a.rule, score_text(a.mcb), score_text(a.dsc),
                     score_text(a.unc));

  // Marginal histogram strip.
  const double strip_top = kPanel + 10.0;
  const double strip_height = kStrip - 20.0;
  std::size_t tallest = 1;
  for (const HistogramBin& b : diagram.histogram) tallest = std::max(tallest, b.count);
  for (const HistogramBin& b : diagram.histogram) {
    const double h = strip_height * static_cast<double>(b.count) / static_cast<double>(tallest);
    double x = px(b.lower);
    double w = px(b.upper) - px(b.lower);
    if (w < 3.0) {  // unique-value bars
      x = px(b.lower) - 1.5;
      w = 3.0;
    }
    svg += fmt::format("<rect class=\"histogram\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" "
                       "height=\"{:.2f}\" fill=\"#999999\" stroke=\"white\" stroke-width=\"0.5\"/>\n",
                       x, strip_top + strip_height - h, w, h);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace corp
