#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corp/dataset.hpp"
#include "corp/pav.hpp"

namespace corp {

/// Consistency bands surround the diagonal (hypothesis of calibration);
/// confidence bands surround the PAV curve.
enum class BandKind { Consistency, Confidence };

enum class BandMethod { Auto, Resampling, AsymptoticDiscrete, AsymptoticContinuous };

const char* to_string(BandKind kind);
const char* to_string(BandMethod method);
BandKind parse_band_kind(const std::string& name);
/// Accepts auto, resampling, asym-discrete, asym-continuous.
BandMethod parse_band_method(const std::string& name);

struct BandSpec {
  BandKind kind = BandKind::Consistency;
  double level = 0.90;
  BandMethod method = BandMethod::Auto;
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  /// Slope of the true CEP, required for continuous-asymptotic confidence
  /// bands. Consistency bands always use 1.
  std::optional<double> cep_slope;

  void validate() const;
};

/// Pointwise band at the unique forecast values.
struct UncertaintyBand {
  std::vector<double> positions;
  std::vector<double> lower;
  std::vector<double> upper;
  BandMethod method_used = BandMethod::Resampling;
  BandKind kind = BandKind::Consistency;
  double level = 0.90;
  /// Positions whose density estimate was zero and had to be borrowed from
  /// the nearest nonzero histogram bin (continuous asymptotics only).
  std::vector<std::size_t> flagged;
};

/// Resolves Auto. Consistency: resampling if n <= 1000 or (n <= 5000 and
/// n <= 50k); otherwise discrete asymptotics if n >= 8k^2, else continuous.
/// Confidence: resampling.
BandMethod select_method(std::size_t n, std::size_t k, const BandSpec& spec);

/// Bootstrap-style band: outcomes redrawn as Bernoulli(x_i) (consistency) or
/// Bernoulli(PAV fit) (confidence), PAV refitted, pointwise quantiles taken.
/// Each replicate uses its own RNG stream derived from spec.seed.
UncertaintyBand resampling_band(const UniqueValueSummary& summary, const IsotonicFit& fit,
                                const BandSpec& spec);

/// Independent per-value normal approximation with standard error
/// sqrt(p (1 - p) / n_j).
UncertaintyBand discrete_asymptotic_band(const UniqueValueSummary& summary,
                                         const IsotonicFit& fit, const BandSpec& spec);

/// Cube-root asymptotics: half-width n^(-1/3) (4 m' s^2 / g)^(1/3) c, with c
/// the Chernoff quantile and g the Freedman-Diaconis density. Requires n >= 30.
UncertaintyBand continuous_asymptotic_band(const UniqueValueSummary& summary,
                                           const IsotonicFit& fit, const BandSpec& spec);

/// Resolves the method and dispatches.
UncertaintyBand compute_band(const UniqueValueSummary& summary, const IsotonicFit& fit,
                             const BandSpec& spec);
UncertaintyBand compute_band(const ForecastDataset& dataset, const BandSpec& spec);

/// Quantile function of Chernoff's distribution (argmax of W(t) - t^2), by
/// linear interpolation in an embedded table covering p in [1e-4, 1 - 1e-4].
double chernoff_quantile(double p);

/// Fraction of band positions j with lower_j <= curve_j <= upper_j.
double curve_coverage(const UncertaintyBand& band, std::span<const double> curve);

/// curve_coverage with the diagonal (curve_j = position_j) as the curve.
double diagonal_coverage(const UncertaintyBand& band);

}  // namespace corp
