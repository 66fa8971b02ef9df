#include "corp/csv.hpp"

#include <charconv>
#include <fstream>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "corp/error.hpp"

namespace corp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

ForecastDataset parse_forecast_csv(std::istream& in) {
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    std::string_view view = line;
    if (view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    view = trim(view);
    if (view.empty()) continue;
    if (view != "forecast,outcome") throw ValidationError("missing header 'forecast,outcome'");
    have_header = true;
    break;
  }
  if (!have_header) throw ValidationError("empty input");

  std::vector<double> forecasts;
  std::vector<std::uint8_t> outcomes;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    ++row;
    const auto comma = view.find(',');
    if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
      throw ValidationError(fmt::format("row {}: expected 2 fields", row));
    }
    double x = 0.0;
    double y = 0.0;
    if (!parse_double(trim(view.substr(0, comma)), x)) {
      throw ValidationError(fmt::format("row {}: non-numeric forecast", row));
    }
    if (!parse_double(trim(view.substr(comma + 1)), y)) {
      throw ValidationError(fmt::format("row {}: non-numeric outcome", row));
    }
    if (!(x >= 0.0 && x <= 1.0)) throw ValidationError(fmt::format("row {}: forecast out of range", row));
    if (y != 0.0 && y != 1.0) throw ValidationError(fmt::format("row {}: outcome not 0/1", row));
    forecasts.push_back(x);
    outcomes.push_back(y == 1.0 ? 1 : 0);
  }
  if (forecasts.empty()) throw ValidationError("empty input");
  return ForecastDataset(std::move(forecasts), std::move(outcomes));
}

ForecastDataset read_forecast_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path));
  return parse_forecast_csv(in);
}

void write_forecast_csv(std::ostream& out, const ForecastDataset& dataset) {
  out << "forecast,outcome\n";
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    out << fmt::format("{:.17g},{}\n", dataset.forecasts()[i], int{dataset.outcomes()[i]});
  }
}

}  // namespace corp
