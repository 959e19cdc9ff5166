#include <doctest.h>

#include <cmath>

#include "psv/errors.hpp"
#include "psv/lfunc.hpp"
#include "psv/zeros.hpp"

using namespace psv;

TEST_CASE("winding number of a polynomial") {
  auto F = [](cplx s) { return (s - cplx(0.3, 0.2)) * (s - cplx(-0.4, 0.1)) * (s - cplx(2, 2)); };
  CHECK(winding_number(F, {-1, 1, -1, 1}, 1e-12) == 2);
  CHECK(winding_number(F, {1.5, 2.5, 1.5, 2.5}, 1e-12) == 1);
  CHECK(winding_number(F, {-1, 0, -1, 0}, 1e-12) == 0);
  CHECK_THROWS_AS(winding_number(F, {0.3, 1, 0, 1}, 1e-6), ContourError);
}

TEST_CASE("riemann zeta zeros to height 30") {
  const auto zeta = principal_character(1);
  CHECK(count_zeros_rectangle(zeta, {0.5, 30}) == 6);
  const auto zs = locate_zeros(zeta, {0.5, 30});
  REQUIRE(zs.size() == 6);
  const double known[3] = {14.134725141734693, 21.022039638771555, 25.010857580145689};
  for (int i = 0; i < 3; ++i) {
    CHECK(zs[3 + i].gamma == doctest::Approx(known[i]).epsilon(1e-10));
    CHECK(zs[2 - i].gamma == doctest::Approx(-known[i]).epsilon(1e-10));
  }
  for (const auto& z : zs) {
    CHECK(std::abs(z.beta - 0.5) < 1e-8);
    CHECK(std::abs(l_value(zeta, {z.beta, z.gamma})) < 1e-6);
  }
  CHECK(count_zeros_rectangle(zeta, {0.6, 30}) == 0);
  CHECK(count_zeros_rectangle(zeta, {0.5, 14}) == 0);
}

TEST_CASE("first zero of L(s, chi_4)") {
  const auto chi = character_group(4)[1];
  const auto zs = locate_zeros(chi, {0.5, 7});
  REQUIRE(zs.size() == 2);
  CHECK(zs[1].gamma == doctest::Approx(6.020948904697597).epsilon(1e-9));
}

TEST_CASE("T is nudged off a zero") {
  const auto zeta = principal_character(1);
  const auto c = count_zeros_detailed(zeta, {0.5, 14.134725141734693});
  CHECK(c.nudges > 0);
  CHECK(c.count == 2);
}

TEST_CASE("complex characters: zeros are not symmetric but counts agree with the conjugate") {
  const auto prim = primitive_characters(5);
  for (const auto& chi : prim) {
    if (chi.is_real()) continue;
    const auto a = locate_zeros(chi, {0.5, 15});
    const auto b = locate_zeros(chi.conj(), {0.5, 15});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].gamma == doctest::Approx(-b[a.size() - 1 - i].gamma));
  }
}
