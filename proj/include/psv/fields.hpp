#pragma once

// Cyclic fields of prime degree n over Q, enumerated through their
// order-n primitive Dirichlet characters.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace psv {

using u64 = std::uint64_t;

/// One local factor of the conductor: p^k = p for p = 1 mod n, or n^2.
struct ConductorFactor {
  u64 p = 0;
  unsigned k = 1;
  u64 modulus = 0;    // p^k
  u64 generator = 0;  // primitive root mod p^k
  u64 phi = 0;        // phi(p^k), divisible by n
};

struct CyclicField {
  unsigned degree = 3;
  u64 conductor = 0;
  u64 discriminant = 0;  // conductor^(degree-1)
  std::vector<ConductorFactor> factors;  // ascending p
  // chi(g_i) = exp(2 pi i c_i / n) on factor i; c_1 = 1 for the stored representative
  std::vector<unsigned> exponents;
  unsigned index = 1;  // 1-based rank among the fields of this conductor
  std::string label;   // "n.f.index"

  /// Number of Dirichlet characters attached to K (its Galois orbit), n - 1.
  std::size_t character_count() const { return degree - 1; }
};

/// Every cyclic degree-n field with f^{n-1} <= X, sorted by (D, label).
/// DomainError unless n in {3, 5, 7} and 0 < X <= 1e12.
std::vector<CyclicField> enumerate_cyclic(unsigned n, double X);

/// Same family as enumerate_cyclic, counted without building the fields.
u64 count_cyclic(unsigned n, double X);

/// Frobenius class of p: the exponent j in {0, ..., n-1} with
/// chi(p) = exp(2 pi i j / n), 0 meaning p splits completely. nullopt if p | f.
std::optional<unsigned> frobenius_class(const CyclicField& K, u64 p);

/// Class of every residue mod f (-1 for residues sharing a factor with f).
std::vector<std::int8_t> frobenius_table(const CyclicField& K);

/// [G:H] - #orbits of g on the cosets of the trivial subgroup of C_n;
/// g is an exponent mod n. DomainError unless n is prime and g generates.
unsigned discriminant_exponent(unsigned n, u64 g);

struct SlopeFit {
  std::vector<double> X;
  std::vector<u64> counts;
  double slope = 0, intercept = 0;
  std::vector<double> residuals;  // log count - fit
  bool degenerate = false;        // a zero count or a constant count
};

/// Least-squares slope of log count against log X. DomainError unless the
/// grid has at least 4 points spanning 3 decades.
SlopeFit count_slope(unsigned n, const std::vector<double>& X_grid);

}  // namespace psv
