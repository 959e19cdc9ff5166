#include <doctest.h>

#include <numeric>

#include "psv/arith.hpp"
#include "psv/errors.hpp"
#include "psv/rational.hpp"

using namespace psv;
using namespace psv::arith;

namespace {

bool trial_division_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 phi_by_count(u64 n) {
  u64 c = 0;
  for (u64 a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
  return c;
}

}  // namespace

TEST_CASE("sieve agrees with trial division") {
  const auto ps = sieve_primes(5000);
  std::size_t k = 0;
  for (u64 n = 2; n <= 5000; ++n) {
    if (trial_division_prime(n)) {
      REQUIRE(k < ps.size());
      CHECK(ps[k++] == n);
    }
  }
  CHECK(k == ps.size());
  CHECK_THROWS_AS(sieve_primes(1), RangeError);
}

TEST_CASE("miller-rabin on known primes and pseudoprimes") {
  for (u64 n = 0; n < 3000; ++n) CHECK(is_prime(n) == trial_division_prime(n));
  CHECK(is_prime(18446744073709551557ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK_FALSE(is_prime(561));
}

TEST_CASE("factorization recomposes and multiplicative functions match brute force") {
  for (u64 n = 1; n <= 2000; ++n) {
    const auto f = factorize(n);
    CHECK(f.recompose() == n);
    CHECK(euler_phi(n) == phi_by_count(n));
    int mu = 1;
    for (const auto& pp : f.factors) mu = pp.exponent > 1 ? 0 : -mu;
    CHECK(moebius(n) == mu);
    CHECK(is_squarefree(n) == (mu != 0));
  }
  const auto mt = moebius_table(2000);
  for (u64 n = 1; n <= 2000; ++n) CHECK(mt[n] == moebius(n));
}

TEST_CASE("divisor sums") {
  for (u64 n = 1; n <= 500; ++n) {
    int s = 0;
    for (u64 d : divisors(n)) s += moebius(d);
    CHECK(s == (n == 1 ? 1 : 0));
    u64 c = 0;
    for (u64 d = 1; d <= n; ++d) c += n % d == 0 && is_squarefree(d);
    CHECK(squarefree_divisors(n).size() == c);
  }
}

TEST_CASE("checked arithmetic raises instead of wrapping") {
  CHECK(mul_checked(1ULL << 31, 1ULL << 31) == 1ULL << 62);
  CHECK_THROWS_AS(mul_checked(1ULL << 32, 1ULL << 32), OverflowError);
  CHECK_THROWS_AS(pow_checked(10, 20), OverflowError);
  CHECK(pow_mod(3, 1000000, 1000000007ULL) == 64935414ULL);
}

TEST_CASE("primitive roots have full order") {
  for (u64 p : {3ULL, 5ULL, 7ULL, 13ULL, 97ULL}) {
    for (unsigned k = 1; k <= 2; ++k) {
      const u64 m = pow_checked(p, k);
      const u64 g = primitive_root_prime_power(p, k);
      u64 x = 1, ord = 0;
      do {
        x = x * g % m;
        ++ord;
      } while (x != 1);
      CHECK(ord == euler_phi(m));
    }
  }
}

TEST_CASE("primorial below z") {
  CHECK(primorial_below(4) == 6);
  CHECK(primorial_below(2) == 1);
  CHECK(primorial_below(2.5) == 2);
  CHECK(primorial_below(12) == 2310);
}

TEST_CASE("rational arithmetic") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a * b == Rational(1, 18));
  CHECK((a - a).is_zero());
  CHECK(Rational(-4, -8) == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
}
