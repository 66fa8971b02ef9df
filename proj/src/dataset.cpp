#include "corp/dataset.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "corp/error.hpp"

namespace corp {

ForecastDataset::ForecastDataset(std::vector<double> forecasts, std::vector<std::uint8_t> outcomes)
    : forecasts_(std::move(forecasts)), outcomes_(std::move(outcomes)) {
  if (forecasts_.empty() && outcomes_.empty()) throw ValidationError("empty input");
  if (forecasts_.size() != outcomes_.size()) {
    throw ValidationError(fmt::format("length mismatch: {} forecasts, {} outcomes",
                                      forecasts_.size(), outcomes_.size()));
  }
  for (std::size_t i = 0; i < forecasts_.size(); ++i) {
    const double x = forecasts_[i];
    if (!(x >= 0.0 && x <= 1.0)) {
      throw ValidationError(fmt::format("index {}: forecast out of range", i));
    }
    if (outcomes_[i] > 1) throw ValidationError(fmt::format("index {}: outcome not binary", i));
  }
}

std::size_t ForecastDataset::event_count() const {
  return std::accumulate(outcomes_.begin(), outcomes_.end(), std::size_t{0});
}

double ForecastDataset::event_rate() const {
  return static_cast<double>(event_count()) / static_cast<double>(size());
}

}  // namespace corp
