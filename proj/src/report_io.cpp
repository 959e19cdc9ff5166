#include "psv/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "psv/errors.hpp"

namespace psv {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  if (quoted) throw ParseError("unterminated quote", 0);
  out.push_back(std::move(cell));
  return out;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string s = "\"";
  for (char ch : cell) {
    if (ch == '"') s += '"';
    s += ch;
  }
  return s + '"';
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw ContractError("CsvTable: row width differs from header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string s;
  auto emit = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) s += ',';
      s += csv_escape(r[i]);
    }
    s += '\n';
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return s;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename " + tmp + ": " + ec.message());
}

namespace {

using json = nlohmann::json;

// Keys every results object of a kind must carry.
const std::map<std::string, std::vector<std::string>>& result_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"identities", {"modulus", "r_max", "n_max", "pairs", "failures"}},
      {"zeros", {"modulus", "alpha", "T", "characters"}},
      {"sieve", {"dyadic", "duality"}},
      {"detector", {"cases"}},
      {"constants", {"c1", "c2", "c1_balanced", "z"}},
      {"fields", {"degree", "X", "count"}},
      {"chebotarev", {"degree", "x", "fields", "pairs", "partition_ok"}},
      {"torsion", {"degree", "X", "ell", "delta", "fields"}},
  };
  return keys;
}

}  // namespace

std::vector<std::string> validate_report(const json& report) {
  std::vector<std::string> problems;
  if (!report.is_object()) return {"report is not an object"};
  if (!report.contains("kind") || !report["kind"].is_string()) problems.push_back("missing string 'kind'");
  if (!report.contains("version") || !report["version"].is_number_integer())
    problems.push_back("missing integer 'version'");
  if (!report.contains("config") || !report["config"].is_object()) problems.push_back("missing object 'config'");
  if (!report.contains("results") || !report["results"].is_object()) problems.push_back("missing object 'results'");
  if (!problems.empty()) return problems;
  const auto it = result_keys().find(report["kind"].get<std::string>());
  if (it == result_keys().end()) return {"unknown kind '" + report["kind"].get<std::string>() + "'"};
  for (const auto& k : it->second)
    if (!report["results"].contains(k)) problems.push_back("results lacks '" + k + "'");
  for (const char* k : {"mode", "seed", "overrides"})
    if (!report["config"].contains(k)) problems.push_back(std::string("config lacks '") + k + "'");
  return problems;
}

json make_report(const std::string& kind, const json& config, json results) {
  return json{{"kind", kind}, {"version", 1}, {"config", config}, {"results", std::move(results)}};
}

void write_report(const std::string& path, const json& report) {
  const std::string text = report.dump(2) + "\n";
  const auto problems = validate_report(json::parse(text));
  if (!problems.empty()) throw ContractError("report does not validate: " + problems.front());
  write_file_atomic(path, text);
}

CsvTable zeros_table(const std::vector<Zero>& zeros) {
  CsvTable t({"character", "beta", "gamma", "enclosure"});
  for (const auto& z : zeros)
    t.add_row({z.character_label, format_double(z.beta), format_double(z.gamma), format_double(z.enclosure)});
  return t;
}

}  // namespace psv
