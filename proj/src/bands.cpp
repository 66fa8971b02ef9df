#include "corp/bands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "corp/error.hpp"
#include "corp/histogram.hpp"
#include "corp/parallel.hpp"
#include "corp/rng.hpp"
#include "corp/stats.hpp"

namespace corp {

namespace {

constexpr std::array<std::pair<double, double>, 502> kChernoffTable{{
#include "chernoff_table.inc"
}};

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

UncertaintyBand empty_band(const UniqueValueSummary& summary, const BandSpec& spec,
                           BandMethod method) {
  UncertaintyBand band;
  band.positions = summary.values;
  band.lower.resize(summary.size());
  band.upper.resize(summary.size());
  band.method_used = method;
  band.kind = spec.kind;
  band.level = spec.level;
  return band;
}

}  // namespace

const char* to_string(BandKind kind) {
  return kind == BandKind::Consistency ? "consistency" : "confidence";
}

const char* to_string(BandMethod method) {
  switch (method) {
    case BandMethod::Auto: return "auto";
    case BandMethod::Resampling: return "resampling";
    case BandMethod::AsymptoticDiscrete: return "asym-discrete";
    case BandMethod::AsymptoticContinuous: return "asym-continuous";
  }
  return "";
}

BandKind parse_band_kind(const std::string& name) {
  if (name == "consistency") return BandKind::Consistency;
  if (name == "confidence") return BandKind::Confidence;
  throw ValidationError(fmt::format("unknown band kind '{}'", name));
}

BandMethod parse_band_method(const std::string& name) {
  for (BandMethod m : {BandMethod::Auto, BandMethod::Resampling, BandMethod::AsymptoticDiscrete,
                       BandMethod::AsymptoticContinuous}) {
    if (name == to_string(m)) return m;
  }
  throw ValidationError(fmt::format("unknown band method '{}'", name));
}

void BandSpec::validate() const {
  if (!(level > 0.0 && level < 1.0)) throw ValidationError("band level must lie in (0, 1)");
  if (method == BandMethod::Resampling && replicates < 2) {
    throw ValidationError("resampling needs at least 2 replicates");
  }
  if (cep_slope && !(*cep_slope > 0.0)) throw ValidationError("CEP slope must be positive");
}

BandMethod select_method(std::size_t n, std::size_t k, const BandSpec& spec) {
  if (spec.method != BandMethod::Auto) return spec.method;
  if (spec.kind == BandKind::Confidence) return BandMethod::Resampling;
  if (n <= 1000 || (n <= 5000 && n <= 50 * k)) return BandMethod::Resampling;
  if (n >= 8 * k * k) return BandMethod::AsymptoticDiscrete;
  return BandMethod::AsymptoticContinuous;
}

UncertaintyBand resampling_band(const UniqueValueSummary& summary, const IsotonicFit& fit,
                                const BandSpec& spec) {
  spec.validate();
  if (spec.replicates < 2) throw ValidationError("resampling needs at least 2 replicates");
  const std::size_t k = summary.size();
  const std::size_t reps = spec.replicates;
  const std::vector<double>& success =
      spec.kind == BandKind::Consistency ? summary.values : fit.fitted_per_unique;

  // draws[j * reps + r]: refitted curve at position j in replicate r.
  std::vector<double> draws(k * reps);
  parallel_for(reps, [&](std::size_t r) {
    StreamRng rng(spec.seed, {0x7265736dULL, r});
    std::vector<std::uint64_t> events(k);
    for (std::size_t j = 0; j < k; ++j) {
      std::uint64_t e = 0;
      for (std::uint64_t c = 0; c < summary.counts[j]; ++c) e += rng.bernoulli(success[j]);
      events[j] = e;
    }
    std::vector<PavBlock> blocks;
    detail::pav_blocks(summary.counts, events, blocks);
    for (const PavBlock& b : blocks) {
      const double v = b.value();
      for (std::size_t j = b.first; j <= b.last; ++j) draws[j * reps + r] = v;
    }
  });

  UncertaintyBand band = empty_band(summary, spec, BandMethod::Resampling);
  const double tail = (1.0 - spec.level) / 2.0;
  for (std::size_t j = 0; j < k; ++j) {
    const std::span<double> column(draws.data() + j * reps, reps);
    std::sort(column.begin(), column.end());
    // Pointwise quantiles of the refit can miss the center near the ends of
    // the range and at segment edges; the band is widened to contain it.
    band.lower[j] = std::min(quantile_sorted(column, tail), success[j]);
    band.upper[j] = std::max(quantile_sorted(column, 1.0 - tail), success[j]);
  }
  return band;
}

UncertaintyBand discrete_asymptotic_band(const UniqueValueSummary& summary,
                                         const IsotonicFit& fit, const BandSpec& spec) {
  spec.validate();
  UncertaintyBand band = empty_band(summary, spec, BandMethod::AsymptoticDiscrete);
  const double z = normal_quantile(1.0 - (1.0 - spec.level) / 2.0);
  for (std::size_t j = 0; j < summary.size(); ++j) {
    const double center =
        spec.kind == BandKind::Consistency ? summary.values[j] : fit.fitted_per_unique[j];
    const double half =
        z * std::sqrt(center * (1.0 - center) / static_cast<double>(summary.counts[j]));
    band.lower[j] = clip01(center - half);
    band.upper[j] = clip01(center + half);
  }
  return band;
}

UncertaintyBand continuous_asymptotic_band(const UniqueValueSummary& summary,
                                           const IsotonicFit& fit, const BandSpec& spec) {
  spec.validate();
  const std::uint64_t n = summary.total_count();
  if (n < 30) throw ValidationError("continuous asymptotic band needs n >= 30");
  double slope = 1.0;
  if (spec.kind == BandKind::Confidence) {
    if (!spec.cep_slope) {
      throw ValidationError("continuous asymptotic confidence band needs a CEP slope estimate");
    }
    slope = *spec.cep_slope;
  }

  std::vector<double> expanded;
  expanded.reserve(n);
  for (std::size_t j = 0; j < summary.size(); ++j) {
    expanded.insert(expanded.end(), summary.counts[j], summary.values[j]);
  }
  const Histogram histogram = fd_histogram(expanded);

  UncertaintyBand band = empty_band(summary, spec, BandMethod::AsymptoticContinuous);
  const double c = chernoff_quantile(1.0 - (1.0 - spec.level) / 2.0);
  const double nd = static_cast<double>(n);
  for (std::size_t j = 0; j < summary.size(); ++j) {
    const double x = summary.values[j];
    const double center = spec.kind == BandKind::Consistency ? x : fit.fitted_per_unique[j];
    double density = histogram_density(histogram, x);
    if (density <= 0.0) {
      // Borrow from the nearest nonzero bin.
      const std::size_t home = histogram_bin_index(histogram, x);
      for (std::size_t d = 1; d < histogram.size() && density <= 0.0; ++d) {
        for (std::size_t b : {home - std::min(home, d), home + d}) {
          if (b < histogram.size() && histogram[b].count > 0) {
            density = histogram_density(histogram, 0.5 * (histogram[b].lower + histogram[b].upper));
            break;
          }
        }
      }
      band.flagged.push_back(j);
    }
    const double variance = center * (1.0 - center);
    const double half = std::cbrt(4.0 * slope * variance / (density * nd)) * c;
    band.lower[j] = clip01(center - half);
    band.upper[j] = clip01(center + half);
  }
  return band;
}

UncertaintyBand compute_band(const UniqueValueSummary& summary, const IsotonicFit& fit,
                             const BandSpec& spec) {
  spec.validate();
  switch (select_method(summary.total_count(), summary.size(), spec)) {
    case BandMethod::AsymptoticDiscrete: return discrete_asymptotic_band(summary, fit, spec);
    case BandMethod::AsymptoticContinuous: return continuous_asymptotic_band(summary, fit, spec);
    default: return resampling_band(summary, fit, spec);
  }
}

UncertaintyBand compute_band(const ForecastDataset& dataset, const BandSpec& spec) {
  const UniqueValueSummary summary = aggregate(dataset);
  return compute_band(summary, pav_fit(summary), spec);
}

double chernoff_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("Chernoff quantile level outside (0, 1)");
  const bool lower_half = p < 0.5;
  const double upper = lower_half ? 1.0 - p : p;
  if (upper > kChernoffTable.back().first + 1e-15) {
    throw ValidationError(fmt::format("Chernoff quantile level {} outside the tabulated range", p));
  }
  const auto it = std::lower_bound(kChernoffTable.begin(), kChernoffTable.end(), upper,
                                   [](const auto& entry, double v) { return entry.first < v; });
  double q;
  if (it == kChernoffTable.begin()) {
    q = it->second;
  } else if (it == kChernoffTable.end()) {
    q = kChernoffTable.back().second;
  } else {
    const auto& [p1, q1] = *it;
    const auto& [p0, q0] = *(it - 1);
    q = q0 + (upper - p0) / (p1 - p0) * (q1 - q0);
  }
  return lower_half ? -q : q;
}

double curve_coverage(const UncertaintyBand& band, std::span<const double> curve) {
  if (curve.size() != band.positions.size()) {
    throw ValidationError("curve and band have different numbers of positions");
  }
  if (curve.empty()) return 1.0;
  std::size_t covered = 0;
  for (std::size_t j = 0; j < curve.size(); ++j) {
    covered += (band.lower[j] <= curve[j] && curve[j] <= band.upper[j]) ? 1 : 0;
  }
  return static_cast<double>(covered) / static_cast<double>(curve.size());
}

double diagonal_coverage(const UncertaintyBand& band) {
  return curve_coverage(band, band.positions);
}

}  // namespace corp
