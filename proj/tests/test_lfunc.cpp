#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "psv/arith.hpp"
#include "psv/errors.hpp"
#include "psv/lfunc.hpp"

using namespace psv;

namespace {

constexpr double pi = std::numbers::pi;

// Direct sum of mu^2(n) chi(n) n^{-s} over n <= N coprime to P; use Re s >= 3.
cplx squarefree_series(const DirichletCharacter& chi, cplx s, u64 P, u64 N) {
  cplx acc = 0;
  for (u64 n = N; n >= 1; --n)
    if (std::gcd(n, P) == 1 && arith::is_squarefree(n))
      acc += chi(static_cast<i64>(n)) * std::exp(-s * std::log(static_cast<double>(n)));
  return acc;
}

cplx dirichlet_series(const DirichletCharacter& chi, cplx s, u64 N) {
  cplx acc = 0;
  for (u64 n = N; n >= 1; --n) acc += chi(static_cast<i64>(n)) * std::exp(-s * std::log(static_cast<double>(n)));
  return acc;
}

}  // namespace

TEST_CASE("hurwitz zeta special values") {
  CHECK(std::abs(hurwitz_zeta({2, 0}, 1) - pi * pi / 6) < 1e-12);
  CHECK(std::abs(hurwitz_zeta({2, 0}, 0.5) - pi * pi / 2) < 1e-12);
  CHECK(std::abs(hurwitz_zeta({4, 0}, 1) - std::pow(pi, 4) / 90) < 1e-12);
  for (double a : {0.1, 0.3, 0.5, 1.0}) CHECK(std::abs(hurwitz_zeta({0, 0}, a) - (0.5 - a)) < 1e-11);
  CHECK(std::abs(hurwitz_zeta({0.5, 0}, 1) - (-1.4603545088095868)) < 1e-11);
  CHECK(std::abs(hurwitz_zeta_regularized({1, 0}, 1) - 0.57721566490153286) < 1e-11);
  CHECK_THROWS_AS(hurwitz_zeta({1, 0}, 0.5), PoleError);
}

TEST_CASE("hurwitz zeta duplication") {
  const cplx s(0.7, 12.5);
  // zeta(s, 1/2) + zeta(s, 1) = 2^s zeta(s)
  const cplx z = hurwitz_zeta(s, 1);
  CHECK(std::abs(hurwitz_zeta(s, 0.5) + z - std::exp(s * std::log(2.0)) * z) < 1e-10);
}

TEST_CASE("periodic zeta against hurwitz sums") {
  // constant weights mod q give zeta(s) back
  const std::vector<cplx> ones(6, 1.0);
  for (cplx s : {cplx(2, 0), cplx(0.5, 14.134725141734693), cplx(0.3, 29.5)})
    CHECK(std::abs(periodic_zeta(ones, s, 1e-11) - hurwitz_zeta(s, 1, 1e-11)) < 1e-10);
  const std::vector<cplx> w = {0.0, 1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  const cplx s(0.5, 27.0);
  cplx direct = 0;
  for (int a = 1; a <= 5; ++a) direct += w[a % 5] * hurwitz_zeta_regularized(s, a / 5.0, 1e-12);
  direct *= std::exp(-s * std::log(5.0));
  CHECK(std::abs(periodic_zeta(w, s, 1e-11, true) - direct) < 1e-10);
  CHECK(std::abs(periodic_zeta(std::vector<cplx>(3, 0.0), s)) == 0.0);
  CHECK_THROWS_AS(periodic_zeta(ones, {1, 0}), PoleError);
}

TEST_CASE("dirichlet L-values") {
  const auto G4 = character_group(4);
  const auto& chi4 = G4[1];
  CHECK(std::abs(l_value(chi4, {1, 0}) - pi / 4) < 1e-12);
  CHECK(std::abs(l_value(chi4, {0.5, 0}) - 0.66769145718960917) < 1e-11);
  CHECK(std::abs(l_value(chi4, {3, 0}) - std::pow(pi, 3) / 32) < 1e-12);
  for (const auto& chi : primitive_characters(7)) {
    const cplx s(3.0, 1.5);
    CHECK(std::abs(l_value(chi, s) - dirichlet_series(chi, s, 200000)) < 1e-9);
  }
}

TEST_CASE("L_ur of an induced character is L of the primitive one") {
  for (const auto& chi : character_group(15)) {
    if (chi.conductor() != 5) continue;
    const auto prim = primitive_inducing(chi);
    CHECK(prim.modulus() == 5);
    for (i64 n = 1; n < 60; ++n)
      if (std::gcd<i64>(n, 15) == 1) CHECK(std::abs(prim(n) - chi(n)) < 1e-12);
    const cplx s(0.8, 3.0);
    CHECK(std::abs(l_ur_value(chi, s) - l_value(prim, s)) < 1e-11);
  }
}

TEST_CASE("L_flat is the squarefree series coprime to P") {
  for (const auto& chi : primitive_characters(7)) {
    const cplx s(3.0, 2.0);
    const cplx direct = squarefree_series(chi, s, 6, 100000);
    CHECK(std::abs(l_flat_value(chi, s, 4) - direct) < 1e-9);
  }
  CHECK_THROWS_AS(l_flat_value(primitive_characters(5)[0], {0.5, 0}, 4), DomainError);
}

TEST_CASE("rankin-selberg residue") {
  for (u64 q : {5ULL, 7ULL, 12ULL}) {
    const auto r = rankin_selberg_residue(primitive_characters(q)[0]);
    CHECK(r.exact == Rational(static_cast<std::int64_t>(arith::euler_phi(q)), static_cast<std::int64_t>(q)));
    CHECK(std::abs(rankin_selberg_numeric(q) - r.value) < 1e-3);
  }
}

TEST_CASE("convexity ratio is finite and the exponent formula") {
  const auto chi = primitive_characters(11)[1];
  const double r = convexity_ratio(chi, {0.5, 10}, 0.01);
  CHECK(std::isfinite(r));
  CHECK(r > 0);
  CHECK(convexity_exponent(0.5, 0.01) == doctest::Approx(0.26));
}
