#include "psv/torsion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

#include "psv/errors.hpp"
#include "psv/report_io.hpp"

namespace psv {

u64 split_prime_count(const CyclicField& K, double delta, const PrimeList& primes) {
  if (!(delta > 0)) throw DomainError("split_prime_count: delta must be positive");
  const double bound = std::pow(static_cast<double>(K.discriminant), delta);
  const auto table = frobenius_table(K);
  u64 M = 0;
  for (u64 p : primes.primes()) {
    if (static_cast<double>(p) > bound) return M;
    if (table[p % K.conductor] == 0) ++M;
  }
  if (bound >= static_cast<double>(primes.limit()) + 1)
    throw DomainError("split_prime_count: prime list too short for D^delta");
  return M;
}

u64 split_prime_count(const CyclicField& K, double delta) {
  if (!(delta > 0)) throw DomainError("split_prime_count: delta must be positive");
  const double bound = std::pow(static_cast<double>(K.discriminant), delta);
  if (bound > 1e9) throw DomainError("split_prime_count: D^delta above 1e9");
  return split_prime_count(K, delta, PrimeList(std::max<u64>(2, static_cast<u64>(bound))));
}

EvBound ev_bound(double D, unsigned ell, unsigned n, u64 M, double eps) {
  if (!(D >= 1) || ell < 1 || n < 2) throw DomainError("ev_bound: need D >= 1, ell >= 1, n >= 2");
  EvBound b;
  b.trivial_bound = std::pow(D, 0.5 + eps);
  b.degenerate = M == 0;
  b.bound = b.trivial_bound / static_cast<double>(std::max<u64>(M, 1));
  b.target = std::pow(D, 0.5 - 1.0 / (2.0 * ell * (n - 1)) + eps);
  return b;
}

TorsionReport torsion_report(const CyclicField& K, unsigned ell, double delta, double eps, const PrimeList& primes) {
  if (ell < 1) throw RangeError("torsion_report: ell must be >= 1");
  const double cap = 1.0 / (2.0 * ell * (K.degree - 1));
  if (!(delta > 0 && delta < cap)) throw RangeError("torsion_report: delta must lie in (0, 1/(2 ell (n-1)))");
  TorsionReport r;
  r.field_label = K.label;
  r.degree = K.degree;
  r.conductor = K.conductor;
  r.discriminant = static_cast<double>(K.discriminant);
  r.ell = ell;
  r.delta = delta;
  r.eps = eps;
  r.M = split_prime_count(K, delta, primes);
  r.ev = ev_bound(r.discriminant, ell, K.degree, r.M, eps);
  return r;
}

u64 ClassTableRow::torsion(unsigned ell) const {
  u64 t = 1;
  for (u64 d : class_group) t *= std::gcd(d, static_cast<u64>(ell));
  return t;
}

namespace {

u64 parse_u64(const std::string& s, std::size_t row, const char* what) {
  u64 v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty())
    throw IngestionError(std::string("class table: bad ") + what + " '" + s + "'", row);
  return v;
}

std::vector<u64> parse_group(const std::string& s, std::size_t row) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw IngestionError("class table: class_group must be a bracketed list", row);
  std::vector<u64> out;
  const std::string inner = s.substr(1, s.size() - 2);
  if (inner.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = inner.find(',', start);
    std::string tok = inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    tok.erase(0, tok.find_first_not_of(' '));
    tok.erase(tok.find_last_not_of(' ') + 1);
    const u64 d = parse_u64(tok, row, "elementary divisor");
    if (d < 2) throw IngestionError("class table: elementary divisors must exceed 1", row);
    out.push_back(d);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<ClassTableRow> read_class_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> expected = {"label", "degree", "conductor", "discriminant", "class_number",
                                             "class_group"};
  if (split_csv_line(line) != expected) throw IngestionError("class table: unexpected header", 0);
  std::vector<ClassTableRow> rows;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    try {
      cells = split_csv_line(line);
    } catch (const ParseError& e) {
      throw IngestionError(std::string("class table: ") + e.what(), row);
    }
    if (cells.size() != 6) throw IngestionError("class table: expected 6 columns", row);
    ClassTableRow r;
    r.label = cells[0];
    r.degree = static_cast<unsigned>(parse_u64(cells[1], row, "degree"));
    r.conductor = parse_u64(cells[2], row, "conductor");
    r.discriminant = parse_u64(cells[3], row, "discriminant");
    r.class_number = parse_u64(cells[4], row, "class_number");
    r.class_group = parse_group(cells[5], row);
    u64 prod = 1;
    for (u64 d : r.class_group) prod *= d;
    if (prod != r.class_number) throw IngestionError("class table: class_group does not multiply to class_number", row);
    if (r.class_number == 0) throw IngestionError("class table: class_number must be positive", row);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ClassTableRow> read_class_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("class table: cannot open " + path, 0);
  return read_class_table(in);
}

TableComparison compare_with_table(std::vector<TorsionReport>& reports, const std::vector<ClassTableRow>& table) {
  std::map<std::string, const ClassTableRow*> by_label;
  std::map<std::pair<unsigned, u64>, std::vector<const ClassTableRow*>> by_conductor;
  for (const auto& r : table) {
    by_label[r.label] = &r;
    by_conductor[{r.degree, r.conductor}].push_back(&r);
  }
  std::map<std::pair<unsigned, u64>, std::size_t> corpus;
  for (const auto& rep : reports) ++corpus[{rep.degree, rep.conductor}];
  TableComparison out;
  for (auto& rep : reports) {
    const ClassTableRow* hit = nullptr;
    if (auto it = by_label.find(rep.field_label); it != by_label.end() && it->second->degree == rep.degree &&
                                                   it->second->conductor == rep.conductor)
      hit = it->second;
    else if (auto jt = by_conductor.find({rep.degree, rep.conductor}); jt != by_conductor.end() && jt->second.size() == 1 &&
             corpus[{rep.degree, rep.conductor}] == 1)
      hit = jt->second.front();
    if (!hit) {
      ++out.unmatched;
      continue;
    }
    ++out.joined;
    const u64 t = hit->torsion(rep.ell);
    rep.table_value = t;
    rep.exponent_ratio = rep.discriminant > 1 ? std::log(static_cast<double>(t)) / std::log(rep.discriminant) : 0.0;
    if (!out.max_exponent_ratio || *rep.exponent_ratio > *out.max_exponent_ratio) {
      out.max_exponent_ratio = rep.exponent_ratio;
      out.max_label = rep.field_label;
    }
    if (static_cast<double>(t) > rep.ev.bound) out.exceeds_bound.push_back(rep.field_label);
  }
  return out;
}

}  // namespace psv
