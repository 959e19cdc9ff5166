#pragma once

// Prime counts by Frobenius class in cyclic fields, the error-term shapes
// they are compared against, and the kappa constant chain.

#include <vector>

#include "psv/fields.hpp"

namespace psv {

struct ChebotarevReport {
  std::string field_label;
  double x = 0;
  unsigned class_index = 0;
  u64 pi_x = 0;
  u64 pi_C = 0;
  u64 ramified = 0;  // primes p <= x dividing the conductor
  double expected = 0;          // pi(x) / n
  double normalized_error = 0;  // |pi_C - expected| / expected, 0 when expected = 0
  bool large_regime = false;    // x >= D^{1/(24 kappa)}
  double paper_bound_small = 0;  // (1/n) x^{1-kappa}
  double paper_bound_large = 0;  // x / exp(c3 sqrt(log x / n))
};

/// Primes <= x sorted ascending, shareable across fields.
class PrimeList {
 public:
  explicit PrimeList(u64 limit);
  u64 limit() const { return limit_; }
  const std::vector<u64>& primes() const { return primes_; }
  /// pi(x) for x <= limit.
  u64 pi(double x) const;

 private:
  u64 limit_;
  std::vector<u64> primes_;
};

/// One report per class 0..n-1. DomainError if x > 1e9 or x exceeds the
/// prime list.
std::vector<ChebotarevReport> pi_counts(const CyclicField& K, double x, const PrimeList& primes, double kappa,
                                        double c3);
std::vector<ChebotarevReport> pi_counts(const CyclicField& K, double x, double kappa, double c3);

/// sum_C pi_C + ramified == pi(x) for the reports of one field and one x.
bool partition_identity(const std::vector<ChebotarevReport>& reports);

struct KappaChain {
  double A = 0, d = 0;
  double c_j1 = 0, c_j2 = 0;
  double alpha_j = 0;
  double delta = 0;
  double kappa = 0;
};

/// A = |G|/2, d = n|G| + 1, c_j1 = 2d + 4nA + A/2 + 1 + eps, c_j2 = n n_k/2 + 3 + eps,
/// delta = eps / (2 (c_j1 + |G|/2 c_j2)), 1 - alpha_j = delta, kappa = delta / 8.
/// DomainError unless 0 < eps < 1.
KappaChain kappa(double n, double n_k, double G_order, double eps);

struct EffectiveChebotarevBound {
  double value = 0;
  double terms[3] = {0, 0, 0};
  bool valid = false;  // x >= (log D_L)^{16/delta}
};

/// (|C|/|G|) x/log x times
/// x^{-delta/8} + T^{-1/24} exp(-sqrt(c4 log x / n_L)/24) + T^{-1/24} exp(-c4 log x / (24 log D_L)).
EffectiveChebotarevBound effective_chebotarev_bound(double D_L, double n_L, double delta, double T, double x, double c4, double C_order = 1,
                       double G_order = 1);

}  // namespace psv
