#pragma once

// Integer backbone: sieving, factorization, multiplicative functions.
// All quantities are 64-bit; arithmetic that could wrap is checked and
// raises OverflowError instead.

#include <cstdint>
#include <span>
#include <vector>

namespace psv::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr u64 kMaxSieveLimit = u64{1} << 31;

struct PrimePower {
  u64 prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing

  u64 recompose() const;
  bool squarefree() const;
  bool operator==(const Factorization&) const = default;
};

/// Primes <= limit in ascending order. Throws RangeError unless
/// 2 <= limit <= 2^31.
std::vector<u64> sieve_primes(u64 limit);

/// Immutable prime table shared by everything that scans primes.
class PrimeTable {
 public:
  explicit PrimeTable(u64 limit);

  u64 limit() const noexcept { return limit_; }
  std::span<const u64> primes() const noexcept { return primes_; }
  bool is_prime(u64 n) const;
  /// Number of primes <= x (x clamped to limit).
  std::size_t count_upto(u64 x) const;

 private:
  u64 limit_;
  std::vector<u64> primes_;
};

u64 mul_checked(u64 a, u64 b);
u64 add_checked(u64 a, u64 b);
u64 pow_checked(u64 base, unsigned exp);
u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);
u64 lcm_checked(u64 a, u64 b);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

/// Trial division over sieved primes, continuing with a 6k+-1 wheel when the
/// cofactor is composite and exceeds the sieve bound. Requires n >= 1.
Factorization factorize(u64 n);

int moebius(u64 n);
bool is_squarefree(u64 n);
u64 euler_phi(u64 n);
u64 radical(u64 n);

/// All positive divisors of n, ascending.
std::vector<u64> divisors(u64 n);
/// Squarefree divisors of n, ascending.
std::vector<u64> squarefree_divisors(u64 n);
std::vector<u64> prime_divisors(u64 n);

/// Smallest g generating (Z/p^k Z)^x for an odd prime p.
u64 primitive_root_prime_power(u64 p, unsigned k);

/// Product of the primes strictly below z (checked).
u64 primorial_below(double z);

/// Table of mu(n) for 0 <= n <= limit (entry 0 unused).
std::vector<std::int8_t> moebius_table(u64 limit);

}  // namespace psv::arith
