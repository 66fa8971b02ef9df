#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "corp/dataset.hpp"

namespace corp {

/// Reads `forecast,outcome` CSV (header required, LF or CRLF). Errors name
/// the 1-based data row, e.g. "row 1: forecast out of range".
ForecastDataset parse_forecast_csv(std::istream& in);

/// Throws IoError if the file cannot be opened.
ForecastDataset read_forecast_csv(const std::string& path);

/// Writes the dataset with round-trip (17 significant digit) precision.
void write_forecast_csv(std::ostream& out, const ForecastDataset& dataset);

}  // namespace corp
