#include "psv/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "psv/errors.hpp"

namespace psv {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v, std::size_t line) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ParseError("value of '" + key + "' is not a number: '" + v + "'", line);
  }
  if (used != v.size() || !std::isfinite(x)) throw ParseError("value of '" + key + "' is not a number: '" + v + "'", line);
  return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v, std::size_t line) {
  std::uint64_t x = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty())
    throw ParseError("value of '" + key + "' is not a nonnegative integer: '" + v + "'", line);
  return x;
}

void require(bool ok, const std::string& key, const char* range) {
  if (!ok) throw RangeError("config key '" + key + "' out of range: must be " + range);
}

}  // namespace

const char* mode_name(Mode m) { return m == Mode::paper ? "paper" : "desk"; }

void RunConfig::set(const std::string& key, const std::string& value, std::size_t line) {
  auto real = [&](double& slot, auto pred, const char* range) {
    const double x = parse_double(key, value, line);
    require(pred(x), key, range);
    slot = x;
  };
  auto open01 = [](double x) { return x > 0 && x < 1; };
  if (key == "precision")
    real(precision, [](double x) { return x > 0 && x <= 1e-3; }, "in (0, 1e-3]");
  else if (key == "c")
    real(c, [](double x) { return x > 0; }, "positive");
  else if (key == "c3")
    real(c3, [](double x) { return x > 0; }, "positive");
  else if (key == "c4")
    real(c4, [](double x) { return x > 0; }, "positive");
  else if (key == "delta")
    real(delta, [](double x) { return x > 0 && x < 0.25; }, "in (0, 1/4)");
  else if (key == "z")
    real(z, [](double x) { return x >= 1; }, ">= 1");
  else if (key == "eps0")
    real(eps0, [](double x) { return x > 0 && x < 0.5; }, "in (0, 1/2)");
  else if (key == "eps1")
    real(eps1, open01, "in (0, 1)");
  else if (key == "eps2")
    real(eps2, open01, "in (0, 1)");
  else if (key == "eps3")
    real(eps3, open01, "in (0, 1)");
  else if (key == "eps4")
    real(eps4, open01, "in (0, 1)");
  else if (key == "mode") {
    if (value == "paper")
      mode = Mode::paper;
    else if (value == "desk")
      mode = Mode::desk;
    else
      throw RangeError("config key 'mode' out of range: must be paper or desk");
  } else if (key == "seed")
    seed = parse_uint(key, value, line);
  else if (key == "out") {
    require(!value.empty(), key, "a nonempty path");
    out = value;
  } else if (key == "threads") {
    const auto t = parse_uint(key, value, line);
    require(t >= 1 && t <= 1024, key, "in [1, 1024]");
    threads = static_cast<unsigned>(t);
  } else
    throw ParseError("unknown key '" + key + "'", line);
  overrides[key] = value;
}

nlohmann::json RunConfig::to_json() const {
  return {{"precision", precision}, {"c", c},       {"c3", c3},       {"c4", c4},     {"delta", delta},
          {"z", z},                 {"eps0", eps0}, {"eps1", eps1},   {"eps2", eps2}, {"eps3", eps3},
          {"eps4", eps4},           {"mode", mode_name(mode)},        {"seed", seed}, {"out", out},
          {"threads", threads},     {"overrides", overrides}};
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ParseError("missing key", line);
    if (value.empty()) throw ParseError("missing value for '" + key + "'", line);
    if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", line);
    cfg.set(key, value, line);
  }
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path, 0);
  return parse_config(in);
}

}  // namespace psv
