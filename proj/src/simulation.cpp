#include "corp/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "corp/error.hpp"
#include "corp/parallel.hpp"
#include "corp/pav.hpp"
#include "corp/stats.hpp"

namespace corp {

namespace {

const char* distribution_name(Distribution d) {
  switch (d) {
    case Distribution::Uniform: return "uniform";
    case Distribution::Linear: return "linear";
    case Distribution::BetaMixture: return "betamix";
  }
  return "";
}

double sample_continuous(Distribution distribution, StreamRng& rng) {
  const double u = rng.uniform();
  switch (distribution) {
    case Distribution::Uniform: return u;
    case Distribution::Linear:
      // Inverse of F(x) = 0.4 x + 0.6 x^2.
      return (-0.4 + std::sqrt(0.16 + 2.4 * u)) / 1.2;
    case Distribution::BetaMixture:
      if (u < 0.75) return 1.0 - std::pow(rng.uniform(), 0.1);
      return rng.uniform();
  }
  return u;
}

// Stream path identifying one simulated dataset.
std::uint64_t scenario_tag(const Scenario& s) {
  return static_cast<std::uint64_t>(s.distribution) * 1000003ULL + s.discrete_values.value_or(0);
}

}  // namespace

std::string Scenario::name() const {
  if (discrete_values) return fmt::format("{}-discrete{}", distribution_name(distribution), *discrete_values);
  return fmt::format("{}-continuous", distribution_name(distribution));
}

Scenario Scenario::parse(const std::string& name) {
  const auto dash = name.find('-');
  if (dash == std::string::npos) throw ValidationError(fmt::format("bad scenario '{}'", name));
  const std::string dist = name.substr(0, dash);
  const std::string support = name.substr(dash + 1);

  Scenario s;
  if (dist == "uniform") {
    s.distribution = Distribution::Uniform;
  } else if (dist == "linear") {
    s.distribution = Distribution::Linear;
  } else if (dist == "betamix") {
    s.distribution = Distribution::BetaMixture;
  } else {
    throw ValidationError(fmt::format("unknown distribution '{}'", dist));
  }

  if (support == "continuous") return s;
  const std::string prefix = "discrete";
  if (support.rfind(prefix, 0) != 0 || support.size() == prefix.size()) {
    throw ValidationError(fmt::format("bad scenario support '{}'", support));
  }
  const std::string digits = support.substr(prefix.size());
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ValidationError(fmt::format("bad scenario support '{}'", support));
  }
  s.discrete_values = std::stoul(digits);
  s.validate();
  return s;
}

void Scenario::validate() const {
  if (discrete_values && *discrete_values < 2) throw ValidationError("discrete scenarios need k >= 2");
}

double forecast_density(Distribution distribution, double x) {
  switch (distribution) {
    case Distribution::Uniform: return 1.0;
    case Distribution::Linear: return 0.4 + 1.2 * x;
    case Distribution::BetaMixture: return 0.75 * 10.0 * std::pow(1.0 - x, 9) + 0.25;
  }
  return 0.0;
}

std::vector<double> discrete_probabilities(Distribution distribution, std::size_t k) {
  std::vector<double> p(k);
  for (std::size_t j = 0; j < k; ++j) {
    p[j] = forecast_density(distribution, (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(k)));
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
  return p;
}

std::vector<double> sample_forecasts(const Scenario& scenario, std::size_t n, StreamRng& rng) {
  scenario.validate();
  std::vector<double> x(n);
  if (!scenario.discrete_values) {
    for (double& v : x) v = sample_continuous(scenario.distribution, rng);
    return x;
  }
  const std::size_t k = *scenario.discrete_values;
  std::vector<double> cumulative = discrete_probabilities(scenario.distribution, k);
  std::partial_sum(cumulative.begin(), cumulative.end(), cumulative.begin());
  for (double& v : x) {
    const double u = rng.uniform();
    const auto j = std::min<std::size_t>(
        static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                 cumulative.begin()),
        k - 1);
    v = (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(k));
  }
  return x;
}

std::vector<double> sample_forecasts(const ScenarioSpec& spec) {
  if (spec.n < 1) throw ValidationError("scenario needs n >= 1");
  StreamRng rng(spec.seed, {0x666f7265ULL});
  return sample_forecasts(spec.scenario, spec.n, rng);
}

std::vector<std::uint8_t> sample_outcomes_calibrated(std::span<const double> forecasts,
                                                     StreamRng& rng) {
  std::vector<std::uint8_t> y(forecasts.size());
  for (std::size_t i = 0; i < forecasts.size(); ++i) y[i] = rng.bernoulli(forecasts[i]) ? 1 : 0;
  return y;
}

std::vector<std::uint8_t> sample_outcomes_calibrated(std::span<const double> forecasts,
                                                     std::uint64_t seed) {
  StreamRng rng(seed, {0x6f757463ULL});
  return sample_outcomes_calibrated(forecasts, rng);
}

BinningEstimatorSpec BinningEstimatorSpec::fixed(std::size_t bins) {
  BinningEstimatorSpec s;
  s.kind = Kind::FixedEquidistant;
  s.bins = bins;
  s.validate();
  return s;
}

BinningEstimatorSpec BinningEstimatorSpec::quantile(double exponent) {
  BinningEstimatorSpec s;
  s.kind = Kind::QuantileBins;
  s.exponent = exponent;
  s.validate();
  return s;
}

void BinningEstimatorSpec::validate() const {
  if (kind == Kind::FixedEquidistant && bins < 1) throw ValidationError("need at least one bin");
  if (kind == Kind::QuantileBins && !(exponent > 0.0 && exponent < 1.0)) {
    throw ValidationError("quantile-bin exponent must lie in (0, 1)");
  }
}

std::size_t BinningEstimatorSpec::bin_count(std::size_t n) const {
  if (kind == Kind::FixedEquidistant) return bins;
  const double target = std::pow(static_cast<double>(n), exponent);
  auto m = static_cast<std::size_t>(std::floor(target));
  // pow(1000, 1/3) evaluates to 9.999...; an integer within rounding counts.
  if (static_cast<double>(m + 1) <= target * (1.0 + 1e-12)) ++m;
  return std::max<std::size_t>(m, 1);
}

std::string BinningEstimatorSpec::name() const {
  if (kind == Kind::FixedEquidistant) return fmt::format("fixed-m{}", bins);
  return fmt::format("quantile-a{:.4f}", exponent);
}

std::vector<double> binning_counting_estimate(const ForecastDataset& dataset,
                                              const BinningEstimatorSpec& spec) {
  spec.validate();
  const auto x = dataset.forecasts();
  const auto y = dataset.outcomes();
  const std::size_t m = spec.bin_count(dataset.size());

  std::vector<std::size_t> bin_of(x.size());
  if (spec.kind == BinningEstimatorSpec::Kind::FixedEquidistant) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      bin_of[i] = std::min(static_cast<std::size_t>(std::floor(x[i] * static_cast<double>(m))), m - 1);
    }
  } else {
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> edges;  // interior edges
    edges.reserve(m - 1);
    for (std::size_t j = 1; j < m; ++j) {
      edges.push_back(quantile_sorted(sorted, static_cast<double>(j) / static_cast<double>(m)));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto b = static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), x[i]) -
                                              edges.begin());
      bin_of[i] = std::min(b, m - 1);
    }
  }

  std::vector<std::uint64_t> counts(m, 0);
  std::vector<std::uint64_t> events(m, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    ++counts[bin_of[i]];
    events[bin_of[i]] += y[i];
  }
  std::vector<double> estimate(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t b = bin_of[i];
    estimate[i] = static_cast<double>(events[b]) / static_cast<double>(counts[b]);
  }
  return estimate;
}

std::string EstimatorSpec::name() const { return binning ? binning->name() : "corp"; }

std::vector<double> EstimatorSpec::estimate(const ForecastDataset& dataset) const {
  return binning ? binning_counting_estimate(dataset, *binning) : recalibrate(dataset);
}

std::vector<EstimatorSpec> default_estimators() {
  return {EstimatorSpec::corp(),
          EstimatorSpec::from(BinningEstimatorSpec::fixed(5)),
          EstimatorSpec::from(BinningEstimatorSpec::fixed(10)),
          EstimatorSpec::from(BinningEstimatorSpec::fixed(50)),
          EstimatorSpec::from(BinningEstimatorSpec::quantile(1.0 / 6.0)),
          EstimatorSpec::from(BinningEstimatorSpec::quantile(1.0 / 3.0)),
          EstimatorSpec::from(BinningEstimatorSpec::quantile(1.0 / 2.0))};
}

const StudyRow* StudyResult::find(const std::string& scenario, const std::string& estimator,
                                  std::size_t n) const {
  for (const StudyRow& row : rows) {
    if (row.scenario == scenario && row.estimator == estimator && row.n == n) return &row;
  }
  return nullptr;
}

std::string StudyResult::to_csv() const {
  std::string out = fmt::format("scenario,estimator,n,{},replicates,seed,method\n", statistic);
  for (const StudyRow& r : rows) {
    out += fmt::format("{},{},{},{:.17g},{},{},{}\n", r.scenario, r.estimator, r.n, r.statistic,
                       r.replicates, r.seed, r.method);
  }
  return out;
}

namespace {

ForecastDataset simulate_dataset(const Scenario& scenario, std::size_t n, std::uint64_t seed,
                                 std::size_t replicate) {
  StreamRng rng(seed, {scenario_tag(scenario), n, replicate});
  std::vector<double> x = sample_forecasts(scenario, n, rng);
  std::vector<std::uint8_t> y = sample_outcomes_calibrated(x, rng);
  return ForecastDataset(std::move(x), std::move(y));
}

void check_study_args(std::span<const Scenario> scenarios, std::span<const std::size_t> sizes,
                      std::size_t replicates) {
  if (replicates < 1) throw ValidationError("need at least one replicate");
  for (const Scenario& s : scenarios) s.validate();
  for (std::size_t n : sizes) {
    if (n < 1) throw ValidationError("sample sizes must be positive");
  }
}

}  // namespace

StudyResult mse_study(std::span<const Scenario> scenarios,
                      std::span<const EstimatorSpec> estimators,
                      std::span<const std::size_t> sample_sizes, std::size_t replicates,
                      std::uint64_t seed) {
  check_study_args(scenarios, sample_sizes, replicates);
  for (const EstimatorSpec& e : estimators) {
    if (e.binning) e.binning->validate();
  }
  StudyResult result{"mse", {}};
  for (const Scenario& scenario : scenarios) {
    for (std::size_t n : sample_sizes) {
      // mse[r * E + e]
      std::vector<double> mse(replicates * estimators.size());
      parallel_for(replicates, [&](std::size_t r) {
        const ForecastDataset data = simulate_dataset(scenario, n, seed, r);
        const auto x = data.forecasts();
        for (std::size_t e = 0; e < estimators.size(); ++e) {
          const std::vector<double> est = estimators[e].estimate(data);
          double total = 0.0;
          for (std::size_t i = 0; i < n; ++i) total += (est[i] - x[i]) * (est[i] - x[i]);
          mse[r * estimators.size() + e] = total / static_cast<double>(n);
        }
      });
      for (std::size_t e = 0; e < estimators.size(); ++e) {
        double total = 0.0;
        for (std::size_t r = 0; r < replicates; ++r) total += mse[r * estimators.size() + e];
        result.rows.push_back({scenario.name(), estimators[e].name(), n,
                               total / static_cast<double>(replicates), replicates, seed, ""});
      }
    }
  }
  return result;
}

std::string band_label(const BandSpec& spec) {
  return fmt::format("{}-{:.2f}", to_string(spec.kind), spec.level);
}

StudyResult coverage_study(std::span<const Scenario> scenarios,
                           std::span<const BandSpec> bands,
                           std::span<const std::size_t> sample_sizes, std::size_t replicates,
                           std::uint64_t seed) {
  check_study_args(scenarios, sample_sizes, replicates);
  for (const BandSpec& b : bands) b.validate();
  StudyResult result{"coverage", {}};
  for (const Scenario& scenario : scenarios) {
    for (std::size_t n : sample_sizes) {
      std::vector<double> coverage(replicates * bands.size());
      std::vector<BandMethod> methods(replicates * bands.size());
      parallel_for(replicates, [&](std::size_t r) {
        const ForecastDataset data = simulate_dataset(scenario, n, seed, r);
        const UniqueValueSummary summary = aggregate(data);
        const IsotonicFit fit = pav_fit(summary);
        for (std::size_t b = 0; b < bands.size(); ++b) {
          BandSpec spec = bands[b];
          spec.seed = derive_key(seed, {scenario_tag(scenario), n, r, 0x62616e64ULL});
          const UncertaintyBand band = compute_band(summary, fit, spec);
          // A consistency band describes where the CORP curve falls under
          // calibration; a confidence band should contain the true CEP.
          coverage[r * bands.size() + b] = spec.kind == BandKind::Consistency
                                               ? curve_coverage(band, fit.fitted_per_unique)
                                               : diagonal_coverage(band);
          methods[r * bands.size() + b] = band.method_used;
        }
      });
      for (std::size_t b = 0; b < bands.size(); ++b) {
        double total = 0.0;
        std::set<std::string> used;
        for (std::size_t r = 0; r < replicates; ++r) {
          total += coverage[r * bands.size() + b];
          used.insert(to_string(methods[r * bands.size() + b]));
        }
        std::string method;
        for (const std::string& m : used) method += (method.empty() ? "" : "+") + m;
        result.rows.push_back({scenario.name(), band_label(bands[b]), n,
                               total / static_cast<double>(replicates), replicates, seed, method});
      }
    }
  }
  return result;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("slope needs two or more points");
  const double m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace corp
