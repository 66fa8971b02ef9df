#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corp/bands.hpp"
#include "corp/dataset.hpp"
#include "corp/rng.hpp"

namespace corp {

/// Forecast-value distributions on [0, 1]: Uniform (q = 1), Linear
/// (q(x) = 0.4 + 1.2 x) and BetaMixture (3/4 Beta(1, 10) + 1/4 Uniform).
enum class Distribution { Uniform, Linear, BetaMixture };

/// A forecast distribution, either continuous or discretized to the k
/// midpoints (2j - 1) / (2k) with probabilities proportional to q.
struct Scenario {
  Distribution distribution = Distribution::Uniform;
  std::optional<std::size_t> discrete_values;  // k; nullopt = continuous

  std::string name() const;
  /// Parses names like "uniform-continuous", "linear-discrete10", "betamix-discrete50".
  static Scenario parse(const std::string& name);
  void validate() const;
};

struct ScenarioSpec {
  Scenario scenario;
  std::size_t n = 1;
  std::uint64_t seed = 0;
};

/// Density q of the continuous distribution.
double forecast_density(Distribution distribution, double x);

/// Probabilities p_j of the discretized distribution, j = 1..k.
std::vector<double> discrete_probabilities(Distribution distribution, std::size_t k);

std::vector<double> sample_forecasts(const Scenario& scenario, std::size_t n, StreamRng& rng);
std::vector<double> sample_forecasts(const ScenarioSpec& spec);

/// y_i ~ Bernoulli(x_i) independently: the true CEP is the diagonal.
std::vector<std::uint8_t> sample_outcomes_calibrated(std::span<const double> forecasts,
                                                     StreamRng& rng);
std::vector<std::uint8_t> sample_outcomes_calibrated(std::span<const double> forecasts,
                                                     std::uint64_t seed);

/// Classical binning-and-counting estimators.
struct BinningEstimatorSpec {
  enum class Kind { FixedEquidistant, QuantileBins };

  Kind kind = Kind::FixedEquidistant;
  std::size_t bins = 10;  // FixedEquidistant
  double exponent = 1.0 / 3.0;  // QuantileBins: m(n) = floor(n^exponent)

  static BinningEstimatorSpec fixed(std::size_t bins);
  static BinningEstimatorSpec quantile(double exponent);

  void validate() const;
  /// Number of bins used for a sample of size n (at least 1).
  std::size_t bin_count(std::size_t n) const;
  std::string name() const;
};

/// Per-observation CEP estimate (input order): the event frequency of the
/// observation's bin. Bins are half-open with the last one closed; quantile
/// bins are bracketed by 0, the linear-interpolation quantiles at j/m and 1.
std::vector<double> binning_counting_estimate(const ForecastDataset& dataset,
                                              const BinningEstimatorSpec& spec);

/// CORP (PAV) or a binning-and-counting baseline.
struct EstimatorSpec {
  std::optional<BinningEstimatorSpec> binning;  // nullopt = CORP

  static EstimatorSpec corp() { return {}; }
  static EstimatorSpec from(BinningEstimatorSpec spec) { return {spec}; }
  std::string name() const;
  std::vector<double> estimate(const ForecastDataset& dataset) const;
};

/// The baselines compared against CORP: m in {5, 10, 50} fixed bins and
/// quantile bins with exponents 1/6, 1/3, 1/2.
std::vector<EstimatorSpec> default_estimators();

struct StudyRow {
  std::string scenario;
  std::string estimator;  // estimator name, or band descriptor for coverage
  std::size_t n = 0;
  double statistic = 0.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::string method;  // band method(s) used; empty for MSE rows
};

struct StudyResult {
  std::string statistic;  // "mse" or "coverage"
  std::vector<StudyRow> rows;

  const StudyRow* find(const std::string& scenario, const std::string& estimator,
                       std::size_t n) const;
  std::string to_csv() const;
};

/// Mean over replicates of (1/n) sum_i (estimate_i - x_i)^2 for every
/// (scenario, estimator, n). All estimators see the same simulated data.
StudyResult mse_study(std::span<const Scenario> scenarios,
                      std::span<const EstimatorSpec> estimators,
                      std::span<const std::size_t> sample_sizes, std::size_t replicates,
                      std::uint64_t seed);

/// Mean over replicates of the fraction of unique forecast values at which
/// the band holds its target: the CORP curve for consistency bands, the true
/// CEP (the diagonal, as outcomes are simulated calibrated) for confidence
/// bands.
StudyResult coverage_study(std::span<const Scenario> scenarios,
                           std::span<const BandSpec> bands,
                           std::span<const std::size_t> sample_sizes, std::size_t replicates,
                           std::uint64_t seed);

/// Label used for coverage rows, e.g. "consistency-0.90".
std::string band_label(const BandSpec& spec);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace corp
