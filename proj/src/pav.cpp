#include "corp/pav.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "corp/error.hpp"

namespace corp {

std::uint64_t UniqueValueSummary::total_count() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t UniqueValueSummary::total_events() const {
  return std::accumulate(events.begin(), events.end(), std::uint64_t{0});
}

void UniqueValueSummary::validate() const {
  if (values.empty()) throw ValidationError("empty input");
  if (counts.size() != values.size() || events.size() != values.size()) {
    throw ValidationError("summary columns differ in length");
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (j > 0 && !(values[j - 1] < values[j])) {
      throw ValidationError(fmt::format("unique value {} not strictly increasing", j));
    }
    if (counts[j] == 0) throw ValidationError(fmt::format("unique value {} has zero count", j));
    if (events[j] > counts[j]) {
      throw ValidationError(fmt::format("unique value {} has more events than cases", j));
    }
  }
}

UniqueValueSummary aggregate(const ForecastDataset& dataset) {
  const auto x = dataset.forecasts();
  const auto y = dataset.outcomes();
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  UniqueValueSummary summary;
  for (std::size_t i : order) {
    if (summary.values.empty() || summary.values.back() != x[i]) {
      summary.values.push_back(x[i]);
      summary.counts.push_back(0);
      summary.events.push_back(0);
    }
    ++summary.counts.back();
    summary.events.back() += y[i];
  }
  return summary;
}

namespace detail {

void pav_blocks(std::span<const std::uint64_t> counts, std::span<const std::uint64_t> events,
                std::vector<PavBlock>& blocks) {
  blocks.clear();
  for (std::size_t j = 0; j < counts.size(); ++j) {
    blocks.push_back({j, j, counts[j], events[j]});
    // Merge while the previous block's frequency is >= the top's; the
    // comparison e1/w1 >= e2/w2 is done exactly in integers.
    while (blocks.size() >= 2) {
      PavBlock& top = blocks.back();
      PavBlock& prev = blocks[blocks.size() - 2];
      if (prev.events * top.weight < top.events * prev.weight) break;
      prev.last = top.last;
      prev.weight += top.weight;
      prev.events += top.events;
      blocks.pop_back();
    }
  }
}

void expand_blocks(std::span<const PavBlock> blocks, std::span<double> out) {
  for (const PavBlock& b : blocks) {
    const double v = b.value();
    for (std::size_t j = b.first; j <= b.last; ++j) out[j] = v;
  }
}

}  // namespace detail

IsotonicFit pav_fit(const UniqueValueSummary& summary) {
  summary.validate();
  IsotonicFit fit;
  detail::pav_blocks(summary.counts, summary.events, fit.blocks);
  fit.fitted_per_unique.resize(summary.size());
  detail::expand_blocks(fit.blocks, fit.fitted_per_unique);
  return fit;
}

std::size_t unique_index(const UniqueValueSummary& summary, double value) {
  const auto it = std::lower_bound(summary.values.begin(), summary.values.end(), value);
  if (it == summary.values.end() || *it != value) {
    throw ValidationError("forecast value not present in summary");
  }
  return static_cast<std::size_t>(it - summary.values.begin());
}

IsotonicFit fit_dataset(const ForecastDataset& dataset) {
  const UniqueValueSummary summary = aggregate(dataset);
  IsotonicFit fit = pav_fit(summary);
  fit.fitted_per_observation.reserve(dataset.size());
  for (double x : dataset.forecasts()) {
    fit.fitted_per_observation.push_back(fit.fitted_per_unique[unique_index(summary, x)]);
  }
  return fit;
}

std::vector<double> recalibrate(const ForecastDataset& dataset) {
  return fit_dataset(dataset).fitted_per_observation;
}

}  // namespace corp
