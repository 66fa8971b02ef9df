#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corp/dataset.hpp"
#include "corp/pav.hpp"

namespace corp {

/// Proper scoring rules for binary events, negatively oriented (penalties).
class ScoringRule {
 public:
  enum class Kind { Brier, Logarithmic, Misclassification, Elementary };

  static ScoringRule brier() { return ScoringRule(Kind::Brier, 0.0); }
  static ScoringRule logarithmic() { return ScoringRule(Kind::Logarithmic, 0.0); }
  static ScoringRule misclassification() { return ScoringRule(Kind::Misclassification, 0.0); }
  /// Elementary score for threshold theta in (0, 1):
  /// S(x, y) = (1{theta < x} - 1{theta < y}) (theta - y).
  static ScoringRule elementary(double theta);
  /// Accepts "brier", "log"/"logarithmic", "misclass"/"misclassification".
  static ScoringRule from_name(const std::string& name);

  Kind kind() const { return kind_; }
  double threshold() const { return theta_; }
  std::string name() const;

  /// Penalty for forecast x in [0, 1] and outcome y in {0, 1}; may be +inf
  /// for the logarithmic score.
  double operator()(double x, std::uint8_t y) const;

 private:
  ScoringRule(Kind kind, double theta) : kind_(kind), theta_(theta) {}

  Kind kind_;
  double theta_;
};

inline double score(const ScoringRule& rule, double forecast, std::uint8_t outcome) {
  return rule(forecast, outcome);
}

double mean_score(const ScoringRule& rule, std::span<const double> forecasts,
                  std::span<const std::uint8_t> outcomes);
double mean_score(const ScoringRule& rule, const ForecastDataset& dataset);

/// Mean score split as mean_score = mcb - dsc + unc, with the PAV-recalibrated
/// forecast as the calibrated forecast and the event rate as the reference.
struct ScoreDecomposition {
  std::string rule;
  double mean_score = 0.0;       // original forecasts
  double mcb = 0.0;              // mean_score - calibrated_mean
  double dsc = 0.0;              // reference_mean - calibrated_mean
  double unc = 0.0;              // reference_mean
  double reference = 0.0;        // event rate
  double calibrated_mean = 0.0;
  double reference_mean = 0.0;
  /// Set when an original forecast receives an infinite penalty (log score at
  /// a confidently wrong 0 or 1); mean_score and mcb are then +inf.
  bool infinite = false;
};

ScoreDecomposition corp_decomposition(const ScoringRule& rule, const ForecastDataset& dataset);

/// Variant reusing a precomputed recalibration (fitted_per_observation order).
ScoreDecomposition corp_decomposition(const ScoringRule& rule, const ForecastDataset& dataset,
                                      std::span<const double> recalibrated);

/// Murphy's classical Brier decomposition over unique forecast values.
struct MurphyBrierDecomposition {
  double rel = 0.0;
  double res = 0.0;
  double unc = 0.0;
};

MurphyBrierDecomposition murphy_brier_decomposition(const UniqueValueSummary& summary);

struct MurphyPoint {
  double threshold = 0.0;
  double mean_score = 0.0;
  double mcb = 0.0;
  double dsc = 0.0;
  double unc = 0.0;
};

/// CORP decomposition under the elementary score at each threshold. Twice the
/// integral over (0, 1) of each component recovers the Brier component.
std::vector<MurphyPoint> murphy_diagram(const ForecastDataset& dataset,
                                        std::span<const double> thresholds);

/// n equispaced thresholds i / (n + 1), i = 1..n.
std::vector<double> equispaced_thresholds(std::size_t count);

}  // namespace corp
