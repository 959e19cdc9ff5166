#pragma once

// Run configuration: `key = value` files with `#` comments.

#include <cstdint>
#include <istream>
#include <map>
#include <string>

#include <json.hpp>

namespace psv {

enum class Mode { paper, desk };

struct RunConfig {
  double precision = 1e-12;  // target absolute error of L-values
  double c = 0.1;            // zero-free region constant
  double c3 = 1.0;
  double c4 = 1.0;
  double delta = 0.1;
  double z = 4.0;
  double eps0 = 0.2, eps1 = 0.1, eps2 = 0.1, eps3 = 0.1, eps4 = 0.1;
  Mode mode = Mode::paper;
  std::uint64_t seed = 1;
  std::string out = ".";
  unsigned threads = 1;

  // raw text of every key that was set, echoed into reports
  std::map<std::string, std::string> overrides;

  /// Sets one key from its text form. ParseError on malformed values
  /// (line given by the caller), RangeError naming the key otherwise.
  void set(const std::string& key, const std::string& value, std::size_t line = 0);
  nlohmann::json to_json() const;
};

RunConfig parse_config(std::istream& in);
/// ParseError (line 0) if the file cannot be opened.
RunConfig parse_config(const std::string& path);

const char* mode_name(Mode m);

}  // namespace psv
