#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "corp/pav.hpp"

namespace corp {

enum class DiagramMode { Discrete, Continuous };

const char* to_string(DiagramMode mode);

/// Discrete iff the smallest gap between distinct forecast values is at
/// least `min_gap` (vacuously true for a single distinct value).
DiagramMode detect_mode(std::span<const double> forecasts, double min_gap = 0.01);

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

using Histogram = std::vector<HistogramBin>;

/// Freedman-Diaconis histogram on [0, 1]: width 2 IQR n^(-1/3), bins anchored
/// at 0, last bin clipped at 1 and closed. IQR uses linear-interpolation
/// quantiles. Zero IQR gives the single bin [0, 1].
Histogram fd_histogram(std::span<const double> forecasts);

/// One degenerate bin [z_j, z_j] per unique value.
Histogram unique_value_histogram(const UniqueValueSummary& summary);

/// Index of the bin containing x (half-open bins, last closed).
std::size_t histogram_bin_index(const Histogram& histogram, double x);

/// Density estimate count / (n * width) of the bin containing x.
double histogram_density(const Histogram& histogram, double x);

}  // namespace corp
