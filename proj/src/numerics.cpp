#include "psv/numerics.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "psv/errors.hpp"

namespace psv {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  return rule;
}

std::complex<double> log_gamma(std::complex<double> z) {
  if (!(z.real() > 0)) throw DomainError("log_gamma: requires Re z > 0");
  // B_{2k} / (2k (2k-1))
  static constexpr std::array<double, 8> c = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
                                              1.0 / 1188, -691.0 / 360360, 1.0 / 156, -3617.0 / 122400};
  std::complex<double> shift = 0;
  while (std::abs(z) < 20) {
    shift += std::log(z);
    z += 1.0;
  }
  std::complex<double> r = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * std::numbers::pi);
  const std::complex<double> z2 = z * z;
  std::complex<double> zp = z;
  for (double ck : c) {
    r += ck / zp;
    zp *= z2;
  }
  return r - shift;
}

namespace {

template <class T>
T pairwise(std::span<const T> v) {
  if (v.size() <= 8) {
    T acc{};
    for (const T& x : v) acc += x;
    return acc;
  }
  const std::size_t h = v.size() / 2;
  return pairwise(v.first(h)) + pairwise(v.subspan(h));
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise(v); }
std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) { return pairwise(v); }

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  double u1 = uniform();
  while (u1 == 0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
}

}  // namespace psv
