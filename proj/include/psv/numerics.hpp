#pragma once

// Small numeric helpers: Gauss-Legendre rules, complex log-gamma and
// pairwise summation in a fixed order.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace psv {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton on P_n, n >= 1).
QuadratureRule gauss_legendre(int n);

/// log Gamma(z) for Re z > 0 (Stirling after an upward shift); the branch
/// is whatever the shift produces, so only exp() of it is meaningful.
std::complex<double> log_gamma(std::complex<double> z);

/// Sum in a fixed binary-tree order; deterministic for a given input order.
double pairwise_sum(std::span<const double> v);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> v);

/// SplitMix64 stream: state += 0x9e3779b97f4a7c15, then the standard
/// xor-shift-multiply finalizer.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform();
  /// Standard normal by Box-Muller (one draw per two uniforms).
  double normal();

 private:
  std::uint64_t state_;
};

}  // namespace psv
