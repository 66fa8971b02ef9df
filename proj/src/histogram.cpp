#include "corp/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "corp/error.hpp"
#include "corp/stats.hpp"

namespace corp {

const char* to_string(DiagramMode mode) {
  return mode == DiagramMode::Discrete ? "discrete" : "continuous";
}

DiagramMode detect_mode(std::span<const double> forecasts, double min_gap) {
  if (forecasts.empty()) throw ValidationError("empty input");
  std::vector<double> sorted(forecasts.begin(), forecasts.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double gap = sorted[i] - sorted[i - 1];
    if (gap > 0.0 && gap < min_gap) return DiagramMode::Continuous;
  }
  return DiagramMode::Discrete;
}

Histogram fd_histogram(std::span<const double> forecasts) {
  if (forecasts.empty()) throw ValidationError("empty input");
  std::vector<double> sorted(forecasts.begin(), forecasts.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double n = static_cast<double>(sorted.size());

  std::size_t bins = 1;
  double width = 1.0;
  if (iqr > 0.0) {
    width = 2.0 * iqr / std::cbrt(n);
    const double ratio = 1.0 / width;
    // Snap ratios within rounding of an integer so that e.g. width 0.5
    // yields exactly two bins.
    const double nearest = std::round(ratio);
    bins = std::abs(ratio - nearest) < 1e-9 ? static_cast<std::size_t>(nearest)
                                            : static_cast<std::size_t>(std::ceil(ratio));
    bins = std::max<std::size_t>(bins, 1);
  }

  Histogram histogram(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    histogram[b].lower = static_cast<double>(b) * width;
    histogram[b].upper = b + 1 == bins ? 1.0 : static_cast<double>(b + 1) * width;
  }
  for (double x : sorted) ++histogram[histogram_bin_index(histogram, x)].count;
  return histogram;
}

Histogram unique_value_histogram(const UniqueValueSummary& summary) {
  Histogram histogram;
  histogram.reserve(summary.size());
  for (std::size_t j = 0; j < summary.size(); ++j) {
    histogram.push_back({summary.values[j], summary.values[j], summary.counts[j]});
  }
  return histogram;
}

std::size_t histogram_bin_index(const Histogram& histogram, double x) {
  // First bin whose upper edge exceeds x; x on an interior edge belongs to
  // the bin on its right.
  const auto it = std::upper_bound(histogram.begin(), histogram.end(), x,
                                   [](double v, const HistogramBin& b) { return v < b.upper; });
  if (it == histogram.end()) return histogram.size() - 1;
  return static_cast<std::size_t>(it - histogram.begin());
}

double histogram_density(const Histogram& histogram, double x) {
  const std::size_t total = std::accumulate(
      histogram.begin(), histogram.end(), std::size_t{0},
      [](std::size_t acc, const HistogramBin& b) { return acc + b.count; });
  const HistogramBin& bin = histogram[histogram_bin_index(histogram, x)];
  const double width = bin.upper - bin.lower;
  if (total == 0 || width <= 0.0) return 0.0;
  return static_cast<double>(bin.count) / (static_cast<double>(total) * width);
}

}  // namespace corp
