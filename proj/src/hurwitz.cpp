#include <array>
#include <cmath>
#include <algorithm>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "psv/errors.hpp"
#include "psv/lfunc.hpp"

namespace psv {

namespace {

constexpr int kTerms = 8;
constexpr std::size_t kMaxShift = 1u << 22;

// B_{2j} / (2j)!, j = 1..8
constexpr std::array<double, kTerms> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
};

// |(s)_{2M}| 4 / (2 pi)^{2M} * (N+a)^{1-sigma-2M} / (sigma + 2M - 1)
double remainder_bound(cplx s, double a, double shift, double poch_abs) {
  const double sigma = s.real();
  const double m2 = 2.0 * kTerms;
  const double lead = 4.0 * poch_abs / std::pow(2.0 * std::numbers::pi, m2);
  return lead * std::pow(shift + a, 1.0 - sigma - m2) / (sigma + m2 - 1.0);
}

// (e^w - 1) / w, accurate near w = 0
cplx expm1_over(cplx w) {
  if (std::abs(w) < 1e-2) return 1.0 + w / 2.0 * (1.0 + w / 3.0 * (1.0 + w / 4.0 * (1.0 + w / 5.0)));
  return (std::exp(w) - 1.0) / w;
}

void check_domain(cplx s, double tol) {
  if (!(s.real() > -2.0) || std::abs(s.imag()) > 1e3) throw DomainError("hurwitz_zeta: s outside Re s > -2, |Im s| <= 1e3");
  if (!(tol >= 1e-14)) throw PrecisionError("hurwitz_zeta: tolerance below 1e-14");
}

double pochhammer_abs(cplx s) {
  double p = 1.0;
  for (int k = 0; k < 2 * kTerms; ++k) p *= std::abs(s + static_cast<double>(k));
  return p;
}

// Smallest shift N with remainder bound at a + N below target.
std::size_t choose_shift(cplx s, double a, double target, double poch_abs) {
  if (remainder_bound(s, a, 0.0, poch_abs) <= target) return 0;
  std::size_t lo = 0, hi = 1;
  while (remainder_bound(s, a, static_cast<double>(hi), poch_abs) > target) {
    lo = hi;
    hi *= 2;
    if (hi > kMaxShift) throw PrecisionError("hurwitz_zeta: tolerance unreachable at this height");
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (remainder_bound(s, a, static_cast<double>(mid), poch_abs) > target ? lo : hi) = mid;
  }
  return hi;
}

// Euler-Maclaurin tail at v = a + N: v^{1-s}/(s-1) + v^{-s}/2 + Bernoulli
// terms, or with the polar part 1/(s-1) removed.
cplx em_tail(cplx s, double v, bool regularized) {
  const double logv = std::log(v);
  const cplx vs = std::exp(-s * logv);  // v^{-s}
  cplx tail = regularized ? -logv * expm1_over((1.0 - s) * logv) : v * vs / (s - 1.0);
  tail += 0.5 * vs;
  cplx poch = s;  // (s)_{2j-1}
  double vpow = 1.0 / v;
  for (int j = 0; j < kTerms; ++j) {
    tail += kBernoulliOverFactorial[j] * poch * vs * vpow;
    poch *= (s + static_cast<double>(2 * j + 1)) * (s + static_cast<double>(2 * j + 2));
    vpow /= v * v;
  }
  return tail;
}

cplx hurwitz_core(cplx s, double a, double tol, bool regularized) {
  if (!regularized && s == cplx(1.0, 0.0)) throw PoleError("hurwitz_zeta: pole at s = 1");
  check_domain(s, tol);
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("hurwitz_zeta: a must lie in (0, 1]");

  const std::size_t n = choose_shift(s, a, tol / 2, pochhammer_abs(s));
  cplx head = 0;
  double magnitude = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx term = std::exp(-s * std::log(a + static_cast<double>(k)));
    head += term;
    magnitude += std::abs(term);
  }
  const cplx tail = em_tail(s, a + static_cast<double>(n), regularized);
  magnitude += std::abs(tail);
  if (magnitude * 4e-16 * (1.0 + std::sqrt(static_cast<double>(n))) > tol)
    throw PrecisionError("hurwitz_zeta: rounding error exceeds tolerance");
  return head + tail;
}

}  // namespace

cplx hurwitz_zeta(cplx s, double a, double tol) { return hurwitz_core(s, a, tol, false); }

cplx hurwitz_zeta_regularized(cplx s, double a, double tol) { return hurwitz_core(s, a, tol, true); }

cplx periodic_zeta(std::span<const cplx> w, cplx s, double tol, bool regularized) {
  const std::size_t q = w.size();
  if (q == 0) throw DomainError("periodic_zeta: empty coefficient table");
  if (!regularized && s == cplx(1.0, 0.0)) throw PoleError("periodic_zeta: pole at s = 1");
  check_domain(s, tol);
  const double qd = static_cast<double>(q);
  std::size_t support = 0;
  for (const cplx& c : w) support += c != cplx(0, 0);
  if (support == 0) return 0;
  // the remainder of each Hurwitz tail is largest at a = 1/q
  const double target = std::max(5e-15, tol / 2 * std::pow(qd, s.real()) / static_cast<double>(support));
  const std::size_t n = choose_shift(s, 1.0 / qd, target, pochhammer_abs(s));
  const std::size_t N = n * q;

  // m^{-s} for m <= N is completely multiplicative: one exp per prime
  std::vector<std::uint32_t> spf(N + 1, 0);
  std::vector<cplx> pw(N + 1);
  cplx head = 0;
  double magnitude = 0;
  if (N >= 1) pw[1] = 1.0;
  for (std::size_t m = 2; m <= N; ++m) {
    if (spf[m] == 0) {
      for (std::size_t j = m; j <= N; j += m)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(m);
      pw[m] = std::exp(-s * std::log(static_cast<double>(m)));
    } else {
      pw[m] = pw[spf[m]] * pw[m / spf[m]];
    }
  }
  for (std::size_t m = 1; m <= N; ++m) {
    const cplx c = w[m % q];
    if (c == cplx(0, 0)) continue;
    head += c * pw[m];
    magnitude += std::abs(pw[m]);
  }
  cplx tails = 0;
  double tail_magnitude = 0;
  for (std::size_t a = 1; a <= q; ++a) {
    const cplx c = w[a % q];
    if (c == cplx(0, 0)) continue;
    const cplx t = em_tail(s, static_cast<double>(a) / qd + static_cast<double>(n), regularized);
    tails += c * t;
    tail_magnitude += std::abs(t);
  }
  const cplx qs = std::exp(-s * std::log(qd));
  magnitude += std::abs(qs) * tail_magnitude;
  if (magnitude * 4e-16 * (1.0 + std::sqrt(static_cast<double>(N))) > tol)
    throw PrecisionError("periodic_zeta: rounding error exceeds tolerance");
  return head + qs * tails;
}

}  // namespace psv
