#include <doctest.h>

#include <map>
#include <numeric>
#include <set>

#include "psv/arith.hpp"
#include "psv/characters.hpp"
#include "psv/errors.hpp"
#include "psv/fields.hpp"

using namespace psv;

namespace {

// Brute-force oracle: primitive characters of order exactly n mod f for
// every f <= fmax, grouped into orbits under chi -> chi^k, (k, n) = 1.
std::map<u64, std::size_t> fields_by_conductor_brute(unsigned n, u64 fmax) {
  std::map<u64, std::size_t> out;
  for (u64 f = 2; f <= fmax; ++f) {
    std::set<std::string> seen;
    std::size_t orbits = 0;
    for (const auto& chi : primitive_characters(f)) {
      if (chi.order() != n || seen.count(chi.label())) continue;
      ++orbits;
      for (unsigned k = 1; k < n; ++k) seen.insert(chi.pow(k).label());
    }
    if (orbits) out[f] = orbits;
  }
  return out;
}

}  // namespace

TEST_CASE("cubic fields up to 1e4") {
  const auto fs = enumerate_cyclic(3, 1e4);
  std::vector<u64> conductors;
  for (const auto& K : fs) conductors.push_back(K.conductor);
  const std::vector<u64> expect = {7, 9, 13, 19, 31, 37, 43, 61, 63, 63, 67, 73, 79, 91, 91, 97};
  CHECK(conductors == expect);
  CHECK(enumerate_cyclic(3, 48).empty());
  CHECK(enumerate_cyclic(3, 49).size() == 1);
  for (const auto& K : fs) {
    CHECK(K.discriminant == K.conductor * K.conductor);
    CHECK(K.discriminant <= 10000);
    CHECK(K.exponents.front() == 1);
    for (u64 p : arith::prime_divisors(K.conductor)) CHECK((p % 3 == 1 || K.conductor % 9 == 0));
  }
  CHECK(fs[8].label == "3.63.1");
  CHECK(fs[9].label == "3.63.2");
}

TEST_CASE("enumeration matches the character-group oracle") {
  for (unsigned n : {3u, 5u, 7u}) {
    const u64 fmax = n == 3 ? 700 : n == 5 ? 400 : 100;
    const double X = std::pow(static_cast<double>(fmax), n - 1.0);
    const auto brute = fields_by_conductor_brute(n, fmax);
    std::map<u64, std::size_t> got;
    for (const auto& K : enumerate_cyclic(n, X)) ++got[K.conductor];
    CHECK(got == brute);
    std::size_t total = 0;
    for (const auto& [f, c] : brute) total += c;
    CHECK(count_cyclic(n, X) == total);
  }
}

TEST_CASE("frobenius classes") {
  const auto K = enumerate_cyclic(3, 49).at(0);
  CHECK(frobenius_class(K, 13) == 0u);
  CHECK(frobenius_class(K, 2).value() != 0u);
  CHECK_FALSE(frobenius_class(K, 7).has_value());
  // cubes mod 7 are +-1
  for (u64 p : arith::sieve_primes(2000)) {
    if (p == 7) continue;
    CHECK((frobenius_class(K, p) == 0u) == (p % 7 == 1 || p % 7 == 6));
  }
  for (const auto& F : enumerate_cyclic(3, 4e6)) {
    const auto table = frobenius_table(F);
    for (u64 p : {2ULL, 3ULL, 5ULL, 101ULL, 997ULL, 1009ULL}) {
      const auto c = frobenius_class(F, p);
      CHECK(table[p % F.conductor] == (c ? static_cast<int>(*c) : -1));
    }
  }
}

TEST_CASE("splitting equidistribution for conductor 7") {
  const auto K = enumerate_cyclic(3, 49).at(0);
  std::size_t counts[3] = {0, 0, 0}, total = 0;
  for (u64 p : arith::sieve_primes(100000)) {
    if (auto c = frobenius_class(K, p)) {
      ++counts[*c];
      ++total;
    }
  }
  for (auto c : counts) {
    const double share = static_cast<double>(c) / static_cast<double>(total);
    CHECK(share >= 0.30);
    CHECK(share <= 0.366);
  }
}

TEST_CASE("discriminant exponent") {
  CHECK(discriminant_exponent(3, 1) == 2);
  CHECK(discriminant_exponent(3, 2) == 2);
  CHECK(discriminant_exponent(5, 3) == 4);
  CHECK_THROWS_AS(discriminant_exponent(3, 3), DomainError);
  // tame conductors: prod p^(n-1) = D
  for (const auto& K : enumerate_cyclic(5, 1e9)) {
    if (K.conductor % 25 == 0) continue;
    u64 D = 1;
    for (u64 p : arith::prime_divisors(K.conductor)) D *= arith::pow_checked(p, discriminant_exponent(5, 1));
    CHECK(D == K.discriminant);
  }
}

TEST_CASE("count slope") {
  const auto fit = count_slope(3, {1e4, 1e5, 1e6, 1e7, 1e8});
  CHECK_FALSE(fit.degenerate);
  CHECK(fit.slope >= 0.45);
  CHECK(fit.slope <= 0.55);
  const auto fit5 = count_slope(5, {1e6, 1e8, 1e10, 1e12});
  CHECK(fit5.slope >= 0.20);
  CHECK(fit5.slope <= 0.30);
  CHECK(count_slope(3, {1, 2, 10, 1000}).degenerate);
  CHECK_THROWS_AS(count_slope(3, {1e4, 1e5, 1e6}), DomainError);
  CHECK_THROWS_AS(count_slope(3, {1e4, 2e4, 3e4, 4e4}), DomainError);
  CHECK_THROWS_AS(enumerate_cyclic(4, 1e4), DomainError);
}
