#include <doctest.h>

#include <cmath>
#include <numeric>

#include "psv/arith.hpp"
#include "psv/errors.hpp"
#include "psv/lfunc.hpp"
#include "psv/sievekit.hpp"

using namespace psv;

namespace {

PseudoCharacterContext ctx_for(u64 q, std::size_t i, u64 R_cap = 200) {
  return PseudoCharacterContext::make(primitive_characters(q).at(i), 0.1, 4.0, R_cap);
}

}  // namespace

TEST_CASE("context validation") {
  const auto chi = primitive_characters(5)[0];
  CHECK_THROWS_AS(PseudoCharacterContext::make(chi, 0.25), RangeError);
  CHECK_THROWS_AS(PseudoCharacterContext::make(chi, 0.0), RangeError);
  CHECK(PseudoCharacterContext::make(chi).P == 6);
}

TEST_CASE("admissible r and psi_f in degree one") {
  const auto ctx = ctx_for(5, 1, 30);
  const std::vector<u64> expect = {1, 7, 11, 13, 17, 19, 23, 29};
  CHECK(admissible_r_set(ctx) == expect);
  for (u64 r : expect) CHECK(psi_f(ctx, r) == Rational(arith::moebius(r) * static_cast<std::int64_t>(r)));
  CHECK(psi_fr(ctx, 77, 14) == Rational(-7));
  CHECK(psi_fr(ctx, 77, 12) == Rational(0));
  CHECK_THROWS_AS(psi_f(ctx, 10), DomainError);
}

TEST_CASE("h(d) agrees with Moebius inversion of the product psi_{f,r} psi_{g,t}") {
  const auto f = ctx_for(7, 2);
  const auto g = PseudoCharacterContext::make(f.chi.conj(), 0.1, 4.0, 200);
  for (u64 r : {1ULL, 11ULL, 13ULL, 143ULL}) {
    for (u64 t : {1ULL, 13ULL, 17ULL}) {
      const auto h = h_coeffs(f, g, r, t);
      const u64 L = std::lcm(r, t);
      for (u64 d : arith::squarefree_divisors(L)) {
        Rational inv = 0;
        for (u64 e : arith::divisors(d)) inv += Rational(arith::moebius(d / e)) * psi_fr(f, r, e) * psi_fr(g, t, e);
        const auto it = h.find(d);
        CHECK((it == h.end() ? Rational(0) : it->second) == inv);
      }
    }
  }
}

TEST_CASE("orthogonality check: both identities exact") {
  const auto f = ctx_for(11, 3);
  const auto g = PseudoCharacterContext::make(f.chi.conj(), 0.1, 4.0, 200);
  for (u64 r : {1ULL, 7ULL, 13ULL, 91ULL}) {
    for (u64 t : {1ULL, 7ULL, 19ULL}) {
      const auto rep = orthogonality_check(f, g, r, t, 3000);
      CHECK(rep.pass());
      CHECK(rep.checked_sum);
      CHECK(rep.sum_value == rep.sum_expected);
      if (r != t) CHECK(rep.sum_expected.is_zero());
    }
  }
}

TEST_CASE("identity sweep on a small range") {
  for (const auto& rep : identity_sweep(5, 60, 2000)) CHECK(rep.pass());
}

TEST_CASE("selberg weights") {
  SelbergWeightScheme s{3, 40, 500, 50};
  CHECK(s.m(2) == 1);
  CHECK(s.m(40) == doctest::Approx(0));
  CHECK(s.m(41) == 0);
  const auto table = selberg_delta_table(s, 400);
  for (u64 n = 1; n <= 400; ++n) {
    double brute = 0;
    for (u64 d : arith::divisors(n)) brute += arith::moebius(d) * s.m(static_cast<double>(d));
    CHECK(table[n] == doctest::Approx(brute).epsilon(1e-12));
    CHECK(selberg_delta(s, n) == doctest::Approx(brute).epsilon(1e-12));
  }
  CHECK(selberg_delta(s, 1) == 1);
  CHECK(selberg_delta(s, 2) == 0);
  CHECK(selberg_delta(s, 3) == 0);
  CHECK_THROWS_AS((SelbergWeightScheme{5, 4, 100, 10}.validate()), DomainError);
}

TEST_CASE("L_flat M_r has coefficients Delta(n) psi_{f,r}(n) lambda_f(n) on squarefree n coprime to P") {
  const auto ctx = ctx_for(5, 2);
  SelbergWeightScheme s{2, 12, 100, 50};
  const cplx z(3.0, 1.0);
  for (u64 r : {1ULL, 7ULL, 77ULL}) {
    const cplx lhs = l_flat_value(ctx.chi, z, ctx.z) * mollifier_series(ctx, r, z, s);
    cplx rhs = 0;
    const auto delta = selberg_delta_table(s, 200000);
    for (u64 n = 200000; n >= 1; --n) {
      if (std::gcd(n, ctx.P) != 1 || !arith::is_squarefree(n) || delta[n] == 0) continue;
      rhs += delta[n] * psi_fr(ctx, r, n).to_double() * ctx.lambda(n) * std::exp(-z * std::log(static_cast<double>(n)));
    }
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("mollifier range and auxiliary bound") {
  const auto ctx = ctx_for(7, 1);
  SelbergWeightScheme s{2, 30, 300, 50};
  CHECK_THROWS_AS(mollifier_value(ctx, 1, {0.4, 0}, s), DomainError);
  CHECK(std::isfinite(std::abs(mollifier_value(ctx, 11, {0.75, 3}, s))));
  CHECK(psilam_check(ctx, 11, 1000, 0.1));
  CHECK(mollifier_envelope(11, {0.75, 0}, 30, 0.1, 0.1) > 0);
}

TEST_CASE("detector Mellin identity at one point") {
  const auto ctx = ctx_for(7, 0, 11);
  SelbergWeightScheme s{2, 10, 50 * std::pow(std::log(50.0), 2), 50};
  const auto rep = detector_identity_check(ctx, 11, {0.8, 2.0}, s, 40, 1e-6);
  CHECK(rep.X == doctest::Approx(50));
  CHECK(rep.residual < 1e-6);
  CHECK(rep.tail_bound < 1e-6);
}

TEST_CASE("detector excludes n = 1 and n below w") {
  const auto ctx = ctx_for(5, 0);
  SelbergWeightScheme s{5, 20, 21, 10};
  // only squarefree n in [5, 21] coprime to 6 enter: 5, 7, 11, 13, 17, 19
  cplx brute = 0;
  const cplx rho(0.9, 1.0);
  for (u64 n : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL})
    brute += selberg_delta(s, n) * psi_fr(ctx, 1, n).to_double() * std::exp(-static_cast<double>(n) / s.X()) *
             ctx.lambda(n) * std::exp(-rho * std::log(static_cast<double>(n)));
  CHECK(std::abs(detector_value(ctx, 1, rho, s) - brute) < 1e-13);
}

TEST_CASE("psi mass and graham ratios are positive and finite") {
  const auto ctx = ctx_for(7, 0, 1000);
  const double r = psi_mass_ratio(ctx, 1000);
  CHECK(r > 0.1);
  CHECK(r < 1.0);
  const double g = graham_ratio({2, 10, 1e5, 50}, 0.75);
  CHECK(g > 0);
  CHECK(std::isfinite(g));
}
