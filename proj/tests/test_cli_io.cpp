#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "psv/cli.hpp"
#include "psv/config.hpp"
#include "psv/errors.hpp"
#include "psv/report_io.hpp"

using namespace psv;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args, std::string* captured = nullptr) {
  std::vector<const char*> argv = {"psieve"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_subcommand(static_cast<int>(argv.size()), argv.data(), out, err);
  if (captured) *captured = out.str() + err.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("psieve_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream empty("");
  const auto d = parse_config(empty);
  CHECK(d.c == 0.1);
  CHECK(d.mode == Mode::paper);
  CHECK(d.overrides.empty());

  std::istringstream some("# comment\n c = 0.2  # trailing\n\nmode = desk\nseed = 99\n");
  const auto c = parse_config(some);
  CHECK(c.c == 0.2);
  CHECK(c.mode == Mode::desk);
  CHECK(c.seed == 99);
  CHECK(c.overrides.at("c") == "0.2");

  std::istringstream range("delta = 0.3\n");
  try {
    parse_config(range);
    FAIL("expected a range error");
  } catch (const RangeError& e) {
    CHECK(std::string(e.what()).find("delta") != std::string::npos);
  }
  std::istringstream unknown("c = 0.1\nfoo = 1\n");
  try {
    parse_config(unknown);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream malformed("\n\nc 0.1\n");
  try {
    parse_config(malformed);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream notnum("c = abc\n");
  CHECK_THROWS_AS(parse_config(notnum), ParseError);
  std::istringstream dup("c = 0.1\nc = 0.2\n");
  CHECK_THROWS_AS(parse_config(dup), ParseError);
}

TEST_CASE("csv helpers") {
  CHECK(split_csv_line("a,\"b,c\",d") == std::vector<std::string>{"a", "b,c", "d"});
  CHECK(split_csv_line("\"x\"\"y\"") == std::vector<std::string>{"x\"y"});
  CHECK(split_csv_line("") == std::vector<std::string>{""});
  CHECK_THROWS_AS(split_csv_line("\"abc"), ParseError);
  CHECK(csv_escape("[2,2]") == "\"[2,2]\"");
  CHECK(csv_escape("plain") == "plain");
  CHECK(std::stod(format_double(0.1)) == 0.1);
  CsvTable t({"a", "b"});
  CHECK_THROWS_AS(t.add_row({"1"}), ContractError);
}

TEST_CASE("report validation") {
  RunConfig cfg;
  auto rep = make_report("constants", cfg.to_json(), {{"c1", 1}, {"c2", 2}, {"c1_balanced", 3}, {"z", 4}});
  CHECK(validate_report(rep).empty());
  rep["results"].erase("z");
  CHECK_FALSE(validate_report(rep).empty());
  CHECK_FALSE(validate_report(make_report("nope", cfg.to_json(), nlohmann::json::object())).empty());
  const auto dir = scratch("validate");
  CHECK_THROWS_AS(write_report((dir / "bad.json").string(), rep), ContractError);
  CHECK_FALSE(fs::exists(dir / "bad.json"));
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run({}) == kExitUsage);
  CHECK(run({"bogus"}) == kExitUsage);
  CHECK(run({"constants", "--no-such-flag"}) == kExitUsage);
  const auto dir = scratch("usage");
  std::ofstream(dir / "bad.cfg") << "delta = 0.3\n";
  CHECK(run({"--config", (dir / "bad.cfg").string(), "constants", "--out", dir.string()}) == kExitUsage);
}

TEST_CASE("cli: constants") {
  const auto dir = scratch("constants");
  std::string text;
  CHECK(run({"constants", "--n", "1", "--nk", "1", "--A", "1", "--d", "2", "--out", dir.string()}, &text) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "constants.json"));
  CHECK(validate_report(j).empty());
  CHECK(j["results"]["c1"] == 9.5);
  CHECK(j["results"]["c2"] == 3.5);
  CHECK(text.find("9.5") != std::string::npos);
}

TEST_CASE("cli: config overrides are echoed and propagate to eta") {
  const auto dir = scratch("echo");
  std::ofstream(dir / "run.cfg") << "c = 0.2\n";
  CHECK(run({"--config", (dir / "run.cfg").string(), "constants", "--q", "5", "--T", "10", "--out", dir.string()}) ==
        kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "constants.json"));
  CHECK(j["config"]["overrides"]["c"] == "0.2");
  CHECK(j["results"]["eta"].get<double>() == doctest::Approx(0.2 / 6 / std::log(50.0)));
}

TEST_CASE("cli: verify-identities and determinism") {
  const auto a = scratch("ident_a"), b = scratch("ident_b");
  CHECK(run({"verify-identities", "--modulus", "7", "--r-max", "40", "--n-max", "500", "--out", a.string()}) == kExitOk);
  CHECK(run({"verify-identities", "--modulus", "7", "--r-max", "40", "--n-max", "500", "--out", b.string()}) == kExitOk);
  CHECK(slurp(a / "identities.csv") == slurp(b / "identities.csv"));
  const auto csv = slurp(a / "identities.csv");
  CHECK(csv.rfind("character,r,t,n_max,status,first_counterexample", 0) == 0);
  CHECK(csv.find(",fail,") == std::string::npos);
  CHECK(csv.find(",pass,") != std::string::npos);
}

TEST_CASE("cli: sieve is deterministic for a seed") {
  const auto a = scratch("sieve_a"), b = scratch("sieve_b");
  CHECK(run({"--seed", "5", "sieve", "--breakdown", "--out", a.string()}) == kExitOk);
  CHECK(run({"sieve", "--seed", "5", "--breakdown", "--out", b.string()}) == kExitOk);
  auto ja = nlohmann::json::parse(slurp(a / "sieve.json"));
  auto jb = nlohmann::json::parse(slurp(b / "sieve.json"));
  ja["config"].erase("out");
  jb["config"].erase("out");
  ja["config"]["overrides"].erase("out");
  jb["config"]["overrides"].erase("out");
  CHECK(ja == jb);
  CHECK(fs::exists(a / "sieve_breakdown.csv"));
}

TEST_CASE("cli: paper mode enforces the support contract, desk mode stamps the report") {
  const auto dir = scratch("modes");
  CHECK(run({"sieve", "--N", "1000", "--trials", "2", "--out", dir.string()}) == kExitFailure);
  CHECK(run({"--mode", "desk", "sieve", "--N", "1000", "--trials", "2", "--out", dir.string()}) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "sieve.json"));
  CHECK(j["results"]["zero_sieve"]["stamp"] == "desk");
}

TEST_CASE("cli: zeros, fields, chebotarev, torsion, detector") {
  const auto dir = scratch("pipeline");
  const auto o = dir.string();
  CHECK(run({"zeros", "--modulus", "1", "--T", "30", "--out", o}) == kExitOk);
  CHECK(std::count(std::istreambuf_iterator<char>(std::ifstream(dir / "zeros.csv").rdbuf()), {}, '\n') == 7);
  CHECK(run({"fields-enumerate", "--degree", "3", "--X", "1e4", "--out", o}) == kExitOk);
  CHECK(nlohmann::json::parse(slurp(dir / "fields.json"))["results"]["count"] == 16);
  CHECK(run({"chebotarev", "--max-conductor", "100", "--x", "1e5", "--out", o}) == kExitOk);
  CHECK(run({"torsion", "--X", "1e6", "--out", o}) == kExitOk);
  CHECK(run({"torsion", "--X", "1e6", "--delta", "0.2", "--out", o}) == kExitUsage);
  CHECK(run({"detector", "--out", o}) == kExitOk);
  for (const char* f : {"zeros.json", "fields.json", "chebotarev.json", "torsion.json", "detector.json"})
    CHECK(validate_report(nlohmann::json::parse(slurp(dir / f))).empty());
}
