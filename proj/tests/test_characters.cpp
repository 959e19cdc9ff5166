#include <doctest.h>

#include <cmath>
#include <numeric>

#include "psv/arith.hpp"
#include "psv/characters.hpp"
#include "psv/errors.hpp"

using namespace psv;

namespace {

// Smallest d | q with chi(a) = 1 for every unit a = 1 mod d.
u64 conductor_brute(const DirichletCharacter& chi) {
  const u64 q = chi.modulus();
  for (u64 d = 1; d <= q; ++d) {
    if (q % d) continue;
    bool ok = true;
    for (u64 a = 1; a < q + 1 && ok; a += d)
      if (std::gcd(a, q) == 1 && std::abs(chi(static_cast<i64>(a)) - 1.0) > 1e-12) ok = false;
    if (ok) return d;
  }
  return q;
}

}  // namespace

TEST_CASE("group size and orthogonality of rows") {
  for (u64 q : {1ULL, 2ULL, 3ULL, 4ULL, 8ULL, 9ULL, 12ULL, 15ULL, 16ULL, 24ULL, 45ULL}) {
    const auto G = character_group(q);
    CHECK(G.size() == arith::euler_phi(q));
    for (std::size_t i = 0; i < G.size(); ++i)
      for (std::size_t j = 0; j < G.size(); ++j) {
        cplx s = 0;
        for (u64 a = 0; a < q; ++a) s += G[i](static_cast<i64>(a)) * std::conj(G[j](static_cast<i64>(a)));
        const double expect = i == j ? static_cast<double>(G.size()) : 0.0;
        INFO("q = ", q, " i = ", i, " j = ", j);
        CHECK(std::abs(s - expect) < 1e-9);
      }
  }
}

TEST_CASE("complete multiplicativity and periodicity") {
  for (const auto& chi : character_group(40)) {
    for (i64 m = -45; m < 45; ++m)
      for (i64 n = 1; n < 45; ++n) CHECK(std::abs(chi(m * n) - chi(m) * chi(n)) < 1e-12);
    for (i64 n = 0; n < 40; ++n) CHECK(chi(n) == chi(n + 40));
  }
}

TEST_CASE("conductors match the periodicity definition") {
  for (u64 q : {8ULL, 12ULL, 16ULL, 20ULL, 36ULL, 63ULL, 64ULL, 100ULL}) {
    for (const auto& chi : character_group(q)) CHECK(chi.conductor() == conductor_brute(chi));
  }
}

TEST_CASE("primitive counts") {
  // number of primitive characters mod q is sum_{d|q} mu(q/d) phi(d)
  for (u64 q = 1; q <= 120; ++q) {
    i64 expect = 0;
    for (u64 d : arith::divisors(q)) expect += arith::moebius(q / d) * static_cast<i64>(arith::euler_phi(d));
    CHECK(static_cast<i64>(primitive_characters(q).size()) == expect);
  }
}

TEST_CASE("gauss sums of primitive characters have modulus sqrt q") {
  for (u64 q : {5ULL, 8ULL, 12ULL, 13ULL, 27ULL}) {
    for (const auto& chi : primitive_characters(q))
      CHECK(std::abs(std::abs(gauss_sum(chi)) - std::sqrt(static_cast<double>(q))) < 1e-9);
  }
}

TEST_CASE("roots are exact at orders 1, 2, 4") {
  const auto G = character_group(5);
  for (const auto& chi : G) {
    if (chi.order() > 4) continue;
    for (i64 n = 0; n < 5; ++n) {
      const cplx v = chi(n);
      CHECK((v.real() == std::round(v.real()) && v.imag() == std::round(v.imag())));
    }
  }
}

TEST_CASE("labels, conj and pow") {
  const auto G = character_group(8);
  CHECK(G[0].label() == "8.0.0");
  CHECK(G[0].is_principal());
  for (const auto& chi : character_group(13)) {
    CHECK((chi * chi.conj()).is_principal());
    CHECK(chi.pow(chi.order()).is_principal());
  }
  CHECK_THROWS_AS(character_group(0), RangeError);
  CHECK_THROWS_AS(character_group(10001), RangeError);
}

TEST_CASE("family invariants") {
  const auto fam = CharacterFamily::primitive(7);
  CHECK(fam.members.size() == 5);
  CHECK(fam.satisfies_invariants());
}

TEST_CASE("moduli with 2 || q vanish on even n") {
  for (u64 q : {2ULL, 6ULL, 10ULL, 30ULL, 42ULL, 66ULL}) {
    for (const auto& chi : character_group(q))
      for (i64 n = -8; n <= 2 * static_cast<i64>(q); n += 2) CHECK(chi(n) == cplx(0, 0));
  }
}
