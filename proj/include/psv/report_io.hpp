#pragma once

// CSV and JSON report writers. Files are written to a temporary name and
// renamed into place, so a report is either complete or absent.

#include <string>
#include <vector>

#include <json.hpp>

#include "psv/zeros.hpp"

namespace psv {

/// Splits one CSV record (RFC 4180 quoting). ParseError on an unterminated quote.
std::vector<std::string> split_csv_line(const std::string& line);
/// Quotes a cell when it holds a comma, quote or newline.
std::string csv_escape(const std::string& cell);
/// %.17g, so the value round-trips.
std::string format_double(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  /// ContractError if the row width differs from the header.
  void add_row(std::vector<std::string> row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes content to path via path + ".tmp" and rename. Error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

/// Every report: {"kind", "version", "config", "results"} plus kind-specific
/// result keys. Returns the list of problems, empty when valid.
std::vector<std::string> validate_report(const nlohmann::json& report);

/// Builds the envelope for a report of the given kind.
nlohmann::json make_report(const std::string& kind, const nlohmann::json& config, nlohmann::json results);

/// Serializes, re-parses, validates and writes. ContractError if the
/// round trip does not validate.
void write_report(const std::string& path, const nlohmann::json& report);

CsvTable zeros_table(const std::vector<Zero>& zeros);

}  // namespace psv
