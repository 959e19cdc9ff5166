#pragma once

// Dirichlet characters mod q. The unit group (Z/qZ)^x is split by CRT into
// cyclic factors with fixed generators; a character is a vector of
// exponents, one per generator, and its values are exact roots of unity
// indexed by k in Z/ord(chi).

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace psv {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using cplx = std::complex<double>;

/// One cyclic factor of (Z/qZ)^x.
struct CyclicFactor {
  u64 prime;       // p
  unsigned power;  // k, the factor lives in (Z/p^k)^x
  u64 modulus;     // p^k
  u64 order;       // size of this cyclic factor
  u64 generator;   // residue mod p^k; for p = 2, k >= 3: -1 then 5
  // Distinguishes the two factors of (Z/2^k)^x when k >= 3.
  enum class Kind { odd, two_minus_one, two_five } kind = Kind::odd;
};

class UnitGroup {
 public:
  /// Builds the generator basis; discrete-log tables only if requested.
  explicit UnitGroup(u64 q, bool with_tables = true);

  u64 modulus() const noexcept { return q_; }
  u64 size() const noexcept { return size_; }
  std::span<const CyclicFactor> factors() const noexcept { return factors_; }
  bool has_tables() const noexcept { return !dlog_.empty() || factors_.empty(); }

  /// Discrete logarithms of n on every generator; nullopt iff gcd(n, q) > 1.
  bool log(u64 n, std::span<u64> out) const;
  std::optional<std::vector<u64>> log(u64 n) const;

 private:
  u64 q_;
  u64 size_ = 1;
  std::vector<CyclicFactor> factors_;
  // One table per factor, indexed by residue mod p^k; UINT32_MAX marks
  // residues not represented by that factor.
  std::vector<std::vector<std::uint32_t>> dlog_;
};

class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<u64> exponents);

  u64 modulus() const noexcept { return group_->modulus(); }
  u64 order() const noexcept { return order_; }
  u64 conductor() const noexcept { return conductor_; }
  bool is_primitive() const noexcept { return conductor_ == modulus(); }
  bool is_principal() const noexcept { return order_ == 1; }
  bool is_real() const noexcept { return order_ <= 2; }
  std::span<const u64> exponents() const noexcept { return exponents_; }
  const UnitGroup& group() const noexcept { return *group_; }
  std::shared_ptr<const UnitGroup> group_ptr() const noexcept { return group_; }

  /// k such that chi(n) = exp(2 pi i k / order); nullopt iff gcd(n, q) > 1.
  std::optional<u64> index(i64 n) const;
  cplx operator()(i64 n) const;
  cplx root(u64 k) const { return roots_[k % order_]; }

  DirichletCharacter conj() const;
  DirichletCharacter pow(u64 k) const;
  /// Product character; both factors must share a modulus.
  DirichletCharacter operator*(const DirichletCharacter& other) const;

  /// "q.e1.e2..." with exponents on the fixed generator basis.
  std::string label() const;

  bool operator==(const DirichletCharacter& o) const {
    return modulus() == o.modulus() && exponents_ == o.exponents_;
  }

 private:
  std::shared_ptr<const UnitGroup> group_;
  std::vector<u64> exponents_;
  std::vector<u64> weights_;  // exponent_i * order / factor_order_i (mod order)
  u64 order_ = 1;
  u64 conductor_ = 1;
  std::vector<cplx> roots_;
};

/// All phi(q) characters mod q, lexicographic in exponent order.
/// Throws RangeError unless 1 <= q <= 10^4.
std::vector<DirichletCharacter> character_group(u64 q);
std::vector<DirichletCharacter> primitive_characters(u64 q);
DirichletCharacter principal_character(u64 q);

cplx evaluate(const DirichletCharacter& chi, i64 n);
u64 conductor(const DirichletCharacter& chi);

/// Gauss sum sum_{a mod q} chi(a) e(a/q).
cplx gauss_sum(const DirichletCharacter& chi);

/// Conductor exponent of a cyclic-factor character with exponent e.
unsigned factor_conductor_power(const CyclicFactor& f, u64 e);

/// The family S(q) in degree 1: all primitive characters mod q.
struct CharacterFamily {
  u64 q = 1;
  std::vector<DirichletCharacter> members;
  double A = 1.0;  // Cond(f) <= q^A
  double d = 1.0;  // |S(q)| <= q^d

  static CharacterFamily primitive(u64 q);
  bool satisfies_invariants() const;
};

}  // namespace psv
