#include "corp/scoring.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "corp/error.hpp"

namespace corp {

ScoringRule ScoringRule::elementary(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw ValidationError(fmt::format("elementary threshold {} not inside (0, 1)", theta));
  }
  return ScoringRule(Kind::Elementary, theta);
}

ScoringRule ScoringRule::from_name(const std::string& name) {
  if (name == "brier") return brier();
  if (name == "log" || name == "logarithmic") return logarithmic();
  if (name == "misclass" || name == "misclassification") return misclassification();
  throw ValidationError(fmt::format("unknown scoring rule '{}'", name));
}

std::string ScoringRule::name() const {
  switch (kind_) {
    case Kind::Brier: return "brier";
    case Kind::Logarithmic: return "log";
    case Kind::Misclassification: return "misclass";
    case Kind::Elementary: return fmt::format("elementary({:.17g})", theta_);
  }
  return {};
}

double ScoringRule::operator()(double x, std::uint8_t y) const {
  switch (kind_) {
    case Kind::Brier: {
      const double d = x - y;
      return d * d;
    }
    case Kind::Logarithmic:
      // Only the realized term contributes, so 0 * log 0 never arises.
      return y == 1 ? -std::log(x) : -std::log1p(-x);
    case Kind::Misclassification:
      if (x == 0.5) return 0.5;
      return (x < 0.5) == (y == 1) ? 1.0 : 0.0;
    case Kind::Elementary: {
      const double forecast_side = theta_ < x ? 1.0 : 0.0;
      const double outcome_side = theta_ < y ? 1.0 : 0.0;
      return (forecast_side - outcome_side) * (theta_ - y);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double mean_score(const ScoringRule& rule, std::span<const double> forecasts,
                  std::span<const std::uint8_t> outcomes) {
  double total = 0.0;
  for (std::size_t i = 0; i < forecasts.size(); ++i) total += rule(forecasts[i], outcomes[i]);
  return total / static_cast<double>(forecasts.size());
}

double mean_score(const ScoringRule& rule, const ForecastDataset& dataset) {
  return mean_score(rule, dataset.forecasts(), dataset.outcomes());
}

ScoreDecomposition corp_decomposition(const ScoringRule& rule, const ForecastDataset& dataset,
                                      std::span<const double> recalibrated) {
  if (recalibrated.size() != dataset.size()) {
    throw ValidationError("recalibrated forecasts do not match dataset length");
  }
  ScoreDecomposition d;
  d.rule = rule.name();
  d.reference = dataset.event_rate();
  d.mean_score = mean_score(rule, dataset);
  d.calibrated_mean = mean_score(rule, recalibrated, dataset.outcomes());

  double reference_total = 0.0;
  for (std::uint8_t y : dataset.outcomes()) reference_total += rule(d.reference, y);
  d.reference_mean = reference_total / static_cast<double>(dataset.size());

  d.mcb = d.mean_score - d.calibrated_mean;
  d.dsc = d.reference_mean - d.calibrated_mean;
  d.unc = d.reference_mean;
  d.infinite = std::isinf(d.mean_score);
  return d;
}

ScoreDecomposition corp_decomposition(const ScoringRule& rule, const ForecastDataset& dataset) {
  return corp_decomposition(rule, dataset, recalibrate(dataset));
}

MurphyBrierDecomposition murphy_brier_decomposition(const UniqueValueSummary& summary) {
  summary.validate();
  const double n = static_cast<double>(summary.total_count());
  const double ybar = static_cast<double>(summary.total_events()) / n;
  MurphyBrierDecomposition d;
  for (std::size_t j = 0; j < summary.size(); ++j) {
    const double nj = static_cast<double>(summary.counts[j]);
    const double freq = static_cast<double>(summary.events[j]) / nj;
    d.rel += nj * (freq - summary.values[j]) * (freq - summary.values[j]);
    d.res += nj * (freq - ybar) * (freq - ybar);
  }
  d.rel /= n;
  d.res /= n;
  d.unc = ybar * (1.0 - ybar);
  return d;
}

std::vector<MurphyPoint> murphy_diagram(const ForecastDataset& dataset,
                                        std::span<const double> thresholds) {
  std::vector<ScoringRule> rules;
  rules.reserve(thresholds.size());
  for (double t : thresholds) rules.push_back(ScoringRule::elementary(t));

  const std::vector<double> recalibrated = recalibrate(dataset);
  std::vector<MurphyPoint> points;
  points.reserve(rules.size());
  for (const ScoringRule& rule : rules) {
    const ScoreDecomposition d = corp_decomposition(rule, dataset, recalibrated);
    points.push_back({rule.threshold(), d.mean_score, d.mcb, d.dsc, d.unc});
  }
  return points;
}

std::vector<double> equispaced_thresholds(std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    out.push_back(static_cast<double>(i) / static_cast<double>(count + 1));
  }
  return out;
}

}  // namespace corp
