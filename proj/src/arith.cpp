#include "psv/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "psv/errors.hpp"

namespace psv::arith {

namespace {

constexpr u64 kTrialBound = 1'000'000;

const PrimeTable& trial_primes() {
  static const PrimeTable table(kTrialBound);
  return table;
}

}  // namespace

u64 Factorization::recompose() const {
  u64 out = 1;
  for (const auto& pp : factors) out = mul_checked(out, pow_checked(pp.prime, pp.exponent));
  return out;
}

bool Factorization::squarefree() const {
  return std::all_of(factors.begin(), factors.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

std::vector<u64> sieve_primes(u64 limit) {
  if (limit < 2 || limit > kMaxSieveLimit)
    throw RangeError("sieve_primes: limit " + std::to_string(limit) + " outside [2, 2^31]");
  // odd-only sieve: index i represents 2i+1
  const u64 half = limit / 2 + 1;
  std::vector<bool> composite(half, false);
  for (u64 i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
    if (composite[i]) continue;
    const u64 p = 2 * i + 1;
    for (u64 j = p * p / 2; j < half; j += p) composite[j] = true;
  }
  std::vector<u64> primes{2};
  for (u64 i = 1; i < half; ++i) {
    const u64 v = 2 * i + 1;
    if (v > limit) break;
    if (!composite[i]) primes.push_back(v);
  }
  return primes;
}

PrimeTable::PrimeTable(u64 limit) : limit_(limit), primes_(sieve_primes(limit)) {}

bool PrimeTable::is_prime(u64 n) const {
  if (n > limit_) return arith::is_prime(n);
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::size_t PrimeTable::count_upto(u64 x) const {
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

u64 mul_checked(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("64-bit multiplication overflow");
  return r;
}

u64 add_checked(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("64-bit addition overflow");
  return r;
}

u64 pow_checked(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) r = mul_checked(r, base);
  return r;
}

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

u64 lcm_checked(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  return mul_checked(a / std::gcd(a, b), b);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Factorization factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  Factorization f;
  f.n = n;
  u64 m = n;
  auto take = [&](u64 p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) f.factors.push_back({p, e});
  };
  for (u64 p : trial_primes().primes()) {
    if (p * p > m) break;
    take(p);
  }
  if (m > 1) {
    const u64 bound = trial_primes().limit();
    if (m <= bound * bound || is_prime(m)) {
      f.factors.push_back({m, 1});
    } else {
      // composite cofactor with all prime factors above the sieve bound
      u64 p = bound + 1;
      while (p % 6 != 5) ++p;
      for (; p <= m / p; p += 6) {
        take(p);
        take(p + 2);
        if (m > 1 && is_prime(m)) break;
      }
      if (m > 1) f.factors.push_back({m, 1});
    }
  }
  std::sort(f.factors.begin(), f.factors.end(), [](auto& a, auto& b) { return a.prime < b.prime; });
  return f;
}

int moebius(u64 n) {
  if (n == 0) throw DomainError("moebius: n must be positive");
  const auto f = factorize(n);
  if (!f.squarefree()) return 0;
  return (f.factors.size() % 2 == 0) ? 1 : -1;
}

bool is_squarefree(u64 n) { return moebius(n) != 0; }

u64 euler_phi(u64 n) {
  u64 phi = n;
  for (const auto& pp : factorize(n).factors) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

u64 radical(u64 n) {
  u64 r = 1;
  for (const auto& pp : factorize(n).factors) r *= pp.prime;
  return r;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out{1};
  for (const auto& pp : factorize(n).factors) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> squarefree_divisors(u64 n) {
  std::vector<u64> out{1};
  for (const auto& pp : factorize(n).factors) {
    const std::size_t base = out.size();
    for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pp.prime);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (const auto& pp : factorize(n).factors) out.push_back(pp.prime);
  return out;
}

u64 primitive_root_prime_power(u64 p, unsigned k) {
  if (p < 3 || !is_prime(p)) throw DomainError("primitive_root_prime_power: odd prime required");
  const u64 pk = pow_checked(p, k);
  const u64 order = pk / p * (p - 1);
  const auto pf = prime_divisors(order);
  for (u64 g = 2; g < pk; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (u64 r : pf) {
      if (pow_mod(g, order / r, pk) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw DomainError("primitive_root_prime_power: none found");
}

u64 primorial_below(double z) {
  u64 P = 1;
  for (u64 p = 2; static_cast<double>(p) < z; ++p) {
    if (is_prime(p)) P = mul_checked(P, p);
  }
  return P;
}

std::vector<std::int8_t> moebius_table(u64 limit) {
  std::vector<std::int8_t> mu(limit + 1, 1);
  if (limit == 0) return mu;
  std::vector<bool> composite(limit + 1, false);
  for (u64 p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    for (u64 j = p; j <= limit; j += p) {
      if (j > p) composite[j] = true;
      mu[j] = static_cast<std::int8_t>(-mu[j]);
    }
    if (p <= limit / p) {
      for (u64 j = p * p; j <= limit; j += p * p) mu[j] = 0;
    }
  }
  mu[0] = 0;
  return mu;
}

}  // namespace psv::arith
