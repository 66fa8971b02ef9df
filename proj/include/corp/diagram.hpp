#pragma once

#include <optional>
#include <vector>

#include "corp/bands.hpp"
#include "corp/dataset.hpp"
#include "corp/histogram.hpp"
#include "corp/scoring.hpp"

namespace corp {

struct DiagramPoint {
  double forecast = 0.0;
  double calibrated = 0.0;
};

/// A horizontal segment of the diagram: the unique values [lower, upper]
/// pooled into one PAV block.
struct DiagramBin {
  double lower = 0.0;
  double upper = 0.0;
  double calibrated = 0.0;
  std::size_t count = 0;
};

struct ReliabilityDiagram {
  DiagramMode mode = DiagramMode::Discrete;
  std::size_t n = 0;
  std::vector<DiagramPoint> points;  // vertices; rendered with straight segments
  std::vector<DiagramBin> bins;
  Histogram histogram;
  ScoreDecomposition annotation;
  std::optional<UncertaintyBand> band;
};

struct DiagramOptions {
  ScoringRule rule = ScoringRule::brier();
  std::optional<BandSpec> band;
  std::optional<DiagramMode> mode;  // overrides detect_mode
};

ReliabilityDiagram build_diagram(const ForecastDataset& dataset, const DiagramOptions& options = {});

}  // namespace corp
