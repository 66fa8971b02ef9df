#include "corp/diagram.hpp"

namespace corp {

ReliabilityDiagram build_diagram(const ForecastDataset& dataset, const DiagramOptions& options) {
  const UniqueValueSummary summary = aggregate(dataset);
  IsotonicFit fit = pav_fit(summary);

  ReliabilityDiagram diagram;
  diagram.n = dataset.size();
  diagram.mode = options.mode.value_or(detect_mode(dataset.forecasts()));

  diagram.points.reserve(summary.size());
  for (std::size_t j = 0; j < summary.size(); ++j) {
    diagram.points.push_back({summary.values[j], fit.fitted_per_unique[j]});
  }
  diagram.bins.reserve(fit.blocks.size());
  for (const PavBlock& b : fit.blocks) {
    diagram.bins.push_back({summary.values[b.first], summary.values[b.last], b.value(),
                            static_cast<std::size_t>(b.weight)});
  }

  // A single observation has no spread to bin; fall back to per-value counts.
  if (diagram.mode == DiagramMode::Discrete || dataset.size() < 2) {
    diagram.histogram = unique_value_histogram(summary);
  } else {
    diagram.histogram = fd_histogram(dataset.forecasts());
  }

  std::vector<double> recalibrated;
  recalibrated.reserve(dataset.size());
  for (double x : dataset.forecasts()) {
    recalibrated.push_back(fit.fitted_per_unique[unique_index(summary, x)]);
  }
  diagram.annotation = corp_decomposition(options.rule, dataset, recalibrated);

  if (options.band) diagram.band = compute_band(summary, fit, *options.band);
  return diagram;
}

}  // namespace corp
