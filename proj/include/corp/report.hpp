#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corp/diagram.hpp"
#include "corp/scoring.hpp"

namespace corp {

/// Minimal streaming JSON writer: keys appear in call order, reals are
/// printed with 17 significant digits and non-finite reals as null.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(double v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& value(bool v);
  JsonWriter& values(std::span<const double> vs);

  const std::string& str() const { return out_; }

 private:
  void separate();

  std::string out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

inline constexpr std::string_view kSchemaVersion = "corp/1";

/// {schema, n, k, mode, points, bins, histogram, band?, decomposition}.
/// The band key is absent when no band was requested.
std::string emit_report(const ReliabilityDiagram& diagram);

/// {schema, n, decomposition}.
std::string emit_decomposition(const ScoreDecomposition& decomposition, std::size_t n);

/// {schema, n, thresholds: [{threshold, mean_score, mcb, dsc, unc}, ...]}.
std::string emit_murphy(std::span<const MurphyPoint> points, std::size_t n);

}  // namespace corp
