#include <doctest.h>

#include <cmath>

#include "psv/arith.hpp"
#include "psv/chebotarev.hpp"
#include "psv/errors.hpp"
#include "psv/fields.hpp"
#include "psv/numerics.hpp"

using namespace psv;

TEST_CASE("prime counts for conductor 7") {
  const auto K = enumerate_cyclic(3, 49).at(0);
  const auto reps = pi_counts(K, 100, 0.01, 1.0);
  REQUIRE(reps.size() == 3);
  CHECK(reps[0].pi_C == 7);
  CHECK(reps[0].pi_x == 25);
  CHECK(reps[0].ramified == 1);
  CHECK(partition_identity(reps));
  for (const auto& r : pi_counts(K, 1.5, 0.01, 1.0)) {
    CHECK(r.pi_C == 0);
    CHECK(r.pi_x == 0);
  }
}

TEST_CASE("partition identity on random fields at 1e6") {
  const auto fields = enumerate_cyclic(3, 1e8);
  const PrimeList primes(1000000);
  SplitMix64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const auto& K = fields[static_cast<std::size_t>(rng.uniform() * fields.size())];
    const auto reps = pi_counts(K, 1e6, primes, 0.01, 1.0);
    CHECK(partition_identity(reps));
    // recount directly
    u64 c0 = 0;
    for (u64 p : primes.primes())
      if (frobenius_class(K, p) == 0u) ++c0;
    CHECK(reps[0].pi_C == c0);
  }
}

TEST_CASE("kappa chain") {
  const double eps = 0.3;
  const auto k = kappa(3, 1, 3, eps);
  CHECK(k.A == 1.5);
  CHECK(k.d == 10);
  CHECK(k.c_j1 == doctest::Approx(39.75 + eps));
  CHECK(k.c_j2 == doctest::Approx(4.5 + eps));
  CHECK(k.kappa == doctest::Approx(eps / (744 + 40 * eps)).epsilon(1e-14));
  CHECK(k.alpha_j >= 0.75);
  CHECK(kappa(3, 1, 3, 1e-9).kappa * 744 / 1e-9 == doctest::Approx(1).epsilon(1e-7));
  CHECK(kappa(3, 1, 3, 0.2).kappa == doctest::Approx(2 * kappa(3, 1, 3, 0.1).kappa).epsilon(1e-2));
  for (double e = 0.05; e < 1; e += 0.05) CHECK(kappa(3, 1, 3, e).alpha_j >= 0.75);
  CHECK_THROWS_AS(kappa(3, 1, 3, 1.0), DomainError);
}

TEST_CASE("effective chebotarev bound") {
  const double x = std::exp(160.0);
  const auto b = effective_chebotarev_bound(1e6, 3, 0.5, 10, x, 1.0);
  CHECK(b.terms[0] == doctest::Approx(std::pow(x, -1.0 / 16)));
  CHECK(effective_chebotarev_bound(1e6, 3, 0.5, 100, x, 1.0).value < b.value);
  // independent evaluation
  SplitMix64 rng(9);
  for (int i = 0; i < 10; ++i) {
    const double D = std::exp(2 + 20 * rng.uniform()), nL = 1 + std::floor(6 * rng.uniform());
    const double delta = 0.01 + 0.5 * rng.uniform(), T = 1 + 100 * rng.uniform();
    const double xx = std::exp(5 + 100 * rng.uniform()), c4 = 0.1 + rng.uniform();
    const double L = std::log(xx);
    const double expect = xx / L *
                          (std::pow(xx, -delta / 8) + std::pow(T, -1.0 / 24) * std::exp(-std::sqrt(c4 * L / nL) / 24) +
                           std::pow(T, -1.0 / 24) * std::exp(-c4 * L / std::log(D) / 24));
    const auto got = effective_chebotarev_bound(D, nL, delta, T, xx, c4);
    CHECK(std::abs(got.value - expect) <= 1e-12 * expect);
    CHECK(got.valid == (L >= 16 / delta * std::log(std::log(D))));
  }
}
