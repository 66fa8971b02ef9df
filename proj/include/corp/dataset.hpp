#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace corp {

/// Paired probability forecasts and binary outcomes.
///
/// The constructor validates: equal lengths, n >= 1, every forecast in
/// [0, 1] and every outcome exactly 0 or 1. Errors name the offending index.
class ForecastDataset {
 public:
  ForecastDataset(std::vector<double> forecasts, std::vector<std::uint8_t> outcomes);

  std::span<const double> forecasts() const { return forecasts_; }
  std::span<const std::uint8_t> outcomes() const { return outcomes_; }
  std::size_t size() const { return forecasts_.size(); }

  std::size_t event_count() const;
  /// Marginal event frequency (the reference forecast of the decomposition).
  double event_rate() const;

 private:
  std::vector<double> forecasts_;
  std::vector<std::uint8_t> outcomes_;
};

}  // namespace corp
