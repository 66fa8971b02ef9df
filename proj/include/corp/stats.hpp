#pragma once

#include <span>
#include <vector>

namespace corp {

/// Linear-interpolation quantile of sorted data (the "type 7" convention):
/// h = (n - 1) p, result = x[floor h] + (h - floor h)(x[floor h + 1] - x[floor h]).
double quantile_sorted(std::span<const double> sorted, double p);

/// Same as quantile_sorted but sorts a copy first.
double quantile(std::vector<double> values, double p);

/// Standard normal quantile.
double normal_quantile(double p);

}  // namespace corp
