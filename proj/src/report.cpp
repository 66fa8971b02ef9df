#include "corp/report.hpp"

#include <cmath>

#include <fmt/format.h>

namespace corp {

void JsonWriter::separate() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) out_ += ',';
    first_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  value(name);
  out_ += ':';
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separate();
  out_ += std::isfinite(v) ? fmt::format("{:.17g}", v) : std::string("null");
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  separate();
  out_ += fmt::format("{}", v);
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  separate();
  out_ += '"';
  for (char c : v) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      case '\r': out_ += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          out_ += fmt::format("\\u{:04x}", static_cast<int>(c));
        } else {
          out_ += c;
        }
    }
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separate();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::values(std::span<const double> vs) {
  begin_array();
  for (double v : vs) value(v);
  return end_array();
}

namespace {

void write_decomposition(JsonWriter& w, const ScoreDecomposition& d) {
  w.key("decomposition").begin_object();
  w.key("rule").value(d.rule);
  w.key("mean_score").value(d.mean_score);
  w.key("mcb").value(d.mcb);
  w.key("dsc").value(d.dsc);
  w.key("unc").value(d.unc);
  w.key("reference").value(d.reference);
  w.key("calibrated_mean").value(d.calibrated_mean);
  w.key("infinite").value(d.infinite);
  w.end_object();
}

void write_band(JsonWriter& w, const UncertaintyBand& band) {
  w.key("band").begin_object();
  w.key("kind").value(to_string(band.kind));
  w.key("method").value(to_string(band.method_used));
  w.key("level").value(band.level);
  w.key("positions").values(band.positions);
  w.key("lower").values(band.lower);
  w.key("upper").values(band.upper);
  w.key("flagged").begin_array();
  for (std::size_t j : band.flagged) w.value(std::uint64_t{j});
  w.end_array();
  w.end_object();
}

}  // namespace

std::string emit_report(const ReliabilityDiagram& diagram) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kSchemaVersion);
  w.key("n").value(std::uint64_t{diagram.n});
  w.key("k").value(std::uint64_t{diagram.points.size()});
  w.key("mode").value(to_string(diagram.mode));

  w.key("points").begin_array();
  for (const DiagramPoint& p : diagram.points) {
    w.begin_object().key("forecast").value(p.forecast).key("calibrated").value(p.calibrated).end_object();
  }
  w.end_array();

  w.key("bins").begin_array();
  for (const DiagramBin& b : diagram.bins) {
    w.begin_object();
    w.key("lower").value(b.lower).key("upper").value(b.upper);
    w.key("calibrated").value(b.calibrated).key("count").value(std::uint64_t{b.count});
    w.end_object();
  }
  w.end_array();

  w.key("histogram").begin_array();
  for (const HistogramBin& b : diagram.histogram) {
    w.begin_object();
    w.key("lower").value(b.lower).key("upper").value(b.upper).key("count").value(std::uint64_t{b.count});
    w.end_object();
  }
  w.end_array();

  if (diagram.band) write_band(w, *diagram.band);
  write_decomposition(w, diagram.annotation);
  w.end_object();
  return w.str() + "\n";
}

std::string emit_decomposition(const ScoreDecomposition& decomposition, std::size_t n) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kSchemaVersion);
  w.key("n").value(std::uint64_t{n});
  write_decomposition(w, decomposition);
  w.end_object();
  return w.str() + "\n";
}

std::string emit_murphy(std::span<const MurphyPoint> points, std::size_t n) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kSchemaVersion);
  w.key("n").value(std::uint64_t{n});
  w.key("thresholds").begin_array();
  for (const MurphyPoint& p : points) {
    w.begin_object();
    w.key("threshold").value(p.threshold);
    w.key("mean_score").value(p.mean_score);
    w.key("mcb").value(p.mcb).key("dsc").value(p.dsc).key("unc").value(p.unc);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

}  // namespace corp
