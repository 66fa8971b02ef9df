#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "corp/dataset.hpp"

namespace corp {

/// Distinct forecast values z_1 < ... < z_k with their multiplicities n_j and
/// event counts o_j.
struct UniqueValueSummary {
  std::vector<double> values;
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> events;

  std::size_t size() const { return values.size(); }
  std::uint64_t total_count() const;
  std::uint64_t total_events() const;
  /// Throws ValidationError unless values are strictly increasing, counts
  /// positive and 0 <= events <= counts.
  void validate() const;
};

/// A maximal run of unique values sharing one calibrated probability.
/// Stored as integer counts; the value is derived on read.
struct PavBlock {
  std::size_t first = 0;  // index into UniqueValueSummary::values
  std::size_t last = 0;   // inclusive
  std::uint64_t weight = 0;
  std::uint64_t events = 0;

  double value() const { return static_cast<double>(events) / static_cast<double>(weight); }
};

struct IsotonicFit {
  std::vector<PavBlock> blocks;  // block values strictly increasing
  std::vector<double> fitted_per_unique;
  /// Aligned with the original dataset order; empty when fitted from a summary.
  std::vector<double> fitted_per_observation;
};

/// Sorts and groups by exact forecast equality.
UniqueValueSummary aggregate(const ForecastDataset& dataset);

/// Isotonic (nondecreasing) weighted least-squares fit of o_j / n_j with
/// weights n_j; stack-based pool-adjacent-violators, linear in k.
IsotonicFit pav_fit(const UniqueValueSummary& summary);

/// pav_fit on aggregate(dataset), with fitted_per_observation filled in.
IsotonicFit fit_dataset(const ForecastDataset& dataset);

/// PAV-recalibrated probabilities in the original observation order.
std::vector<double> recalibrate(const ForecastDataset& dataset);

/// Index of `value` in summary.values (exact match); throws if absent.
std::size_t unique_index(const UniqueValueSummary& summary, double value);

namespace detail {

/// Allocation-free PAV core used by the resampling loops. `blocks` is scratch
/// storage, replaced by the resulting blocks.
void pav_blocks(std::span<const std::uint64_t> counts, std::span<const std::uint64_t> events,
                std::vector<PavBlock>& blocks);

/// Expands blocks to one value per unique index.
void expand_blocks(std::span<const PavBlock> blocks, std::span<double> out);

}  // namespace detail

}  // namespace corp
