#pragma once

// Split-prime supply below D^delta, the l-torsion bound it feeds, and the
// join against an ingested class group table.

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "psv/chebotarev.hpp"
#include "psv/fields.hpp"

namespace psv {

/// #{p <= D_K^delta : p unramified and split completely}. DomainError unless delta > 0.
u64 split_prime_count(const CyclicField& K, double delta);
u64 split_prime_count(const CyclicField& K, double delta, const PrimeList& primes);

struct EvBound {
  double bound = 0;          // D^{1/2+eps} / max(M, 1)
  double trivial_bound = 0;  // D^{1/2+eps}
  double target = 0;         // D^{1/2 - 1/(2 l (n-1)) + eps}
  bool degenerate = false;   // M = 0
};

/// Implied constant taken as 1.
EvBound ev_bound(double D, unsigned ell, unsigned n, u64 M, double eps);

struct TorsionReport {
  std::string field_label;
  unsigned degree = 3;
  u64 conductor = 0;
  double discriminant = 0;
  unsigned ell = 2;
  double delta = 0;
  double eps = 0;
  u64 M = 0;
  EvBound ev;
  std::optional<u64> table_value;  // |Cl_K[ell]|
  std::optional<double> exponent_ratio;  // log|Cl_K[ell]| / log D_K
};

/// RangeError unless 0 < delta < 1/(2 ell (n-1)).
TorsionReport torsion_report(const CyclicField& K, unsigned ell, double delta, double eps, const PrimeList& primes);

struct ClassTableRow {
  std::string label;
  unsigned degree = 0;
  u64 conductor = 0;
  u64 discriminant = 0;
  u64 class_number = 0;
  std::vector<u64> class_group;  // elementary divisors

  /// prod gcd(d_i, ell).
  u64 torsion(unsigned ell) const;
};

/// CSV with header label,degree,conductor,discriminant,class_number,class_group.
/// IngestionError with the 1-based data row number on malformed rows,
/// including a class group whose product differs from class_number.
std::vector<ClassTableRow> read_class_table(std::istream& in);
std::vector<ClassTableRow> read_class_table_file(const std::string& path);

struct TableComparison {
  std::size_t joined = 0;
  std::size_t unmatched = 0;
  std::optional<double> max_exponent_ratio;
  std::string max_label;
  std::vector<std::string> exceeds_bound;  // informational
};

/// Joins by label, then by (degree, conductor) when that pair is unique in
/// both the table and the corpus. Fills table_value and exponent_ratio in place.
TableComparison compare_with_table(std::vector<TorsionReport>& reports, const std::vector<ClassTableRow>& table);

}  // namespace psv
