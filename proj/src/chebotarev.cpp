#include "psv/chebotarev.hpp"

#include <algorithm>
#include <cmath>

#include "psv/arith.hpp"
#include "psv/errors.hpp"

namespace psv {

PrimeList::PrimeList(u64 limit) : limit_(limit), primes_(arith::sieve_primes(limit)) {}

u64 PrimeList::pi(double x) const {
  if (x < 2) return 0;
  if (x > static_cast<double>(limit_)) throw DomainError("PrimeList::pi: x beyond the sieve limit");
  const u64 xi = static_cast<u64>(std::floor(x));
  return static_cast<u64>(std::upper_bound(primes_.begin(), primes_.end(), xi) - primes_.begin());
}

std::vector<ChebotarevReport> pi_counts(const CyclicField& K, double x, const PrimeList& primes, double kappa_value,
                                        double c3) {
  if (x > 1e9) throw DomainError("pi_counts: x must not exceed 1e9");
  const unsigned n = K.degree;
  std::vector<u64> counts(n, 0);
  u64 ramified = 0;
  const u64 total = primes.pi(x);
  const auto table = frobenius_table(K);
  for (u64 i = 0; i < total; ++i) {
    const std::int8_t c = table[primes.primes()[i] % K.conductor];
    if (c < 0)
      ++ramified;
    else
      ++counts[static_cast<unsigned>(c)];
  }
  const bool large = x > 1 && std::log(x) >= std::log(static_cast<double>(K.discriminant)) / (24 * kappa_value);
  std::vector<ChebotarevReport> out;
  for (unsigned j = 0; j < n; ++j) {
    ChebotarevReport r;
    r.field_label = K.label;
    r.x = x;
    r.class_index = j;
    r.pi_x = total;
    r.pi_C = counts[j];
    r.ramified = ramified;
    r.expected = static_cast<double>(total) / n;
    r.normalized_error =
        r.expected > 0 ? std::abs(static_cast<double>(r.pi_C) - r.expected) / r.expected : 0;
    r.large_regime = large;
    if (x > 1) {
      r.paper_bound_small = std::pow(x, 1 - kappa_value) / n;
      r.paper_bound_large = x / std::exp(c3 * std::sqrt(std::log(x) / n));
    }
    out.push_back(r);
  }
  return out;
}

std::vector<ChebotarevReport> pi_counts(const CyclicField& K, double x, double kappa_value, double c3) {
  if (x > 1e9) throw DomainError("pi_counts: x must not exceed 1e9");
  const PrimeList primes(x < 2 ? 2 : static_cast<u64>(x));
  return pi_counts(K, x, primes, kappa_value, c3);
}

bool partition_identity(const std::vector<ChebotarevReport>& reports) {
  if (reports.empty()) return true;
  u64 sum = reports.front().ramified;
  for (const auto& r : reports) {
    if (r.pi_x != reports.front().pi_x || r.ramified != reports.front().ramified) return false;
    sum += r.pi_C;
  }
  return sum == reports.front().pi_x;
}

KappaChain kappa(double n, double n_k, double G_order, double eps) {
  if (!(eps > 0 && eps < 1)) throw DomainError("kappa: eps must lie in (0, 1)");
  if (!(n > 0 && n_k > 0 && G_order > 0)) throw DomainError("kappa: n, n_k, |G| must be positive");
  KappaChain k;
  k.A = G_order / 2;
  k.d = n * G_order + 1;
  k.c_j1 = 2 * k.d + 4 * n * k.A + k.A / 2 + 1 + eps;
  k.c_j2 = n * n_k / 2 + 3 + eps;
  const double weight = k.c_j1 + G_order / 2 * k.c_j2;
  k.alpha_j = 1 - eps / (2 * weight);
  k.delta = eps / (2 * weight);
  k.kappa = k.delta / 8;
  return k;
}

EffectiveChebotarevBound effective_chebotarev_bound(double D_L, double n_L, double delta, double T, double x, double c4, double C_order,
                       double G_order) {
  if (!(D_L > 1 && n_L > 0 && delta > 0 && T > 0 && x > 1 && c4 > 0 && G_order > 0))
    throw DomainError("effective_chebotarev_bound: parameters out of range");
  EffectiveChebotarevBound b;
  const double lx = std::log(x), lD = std::log(D_L);
  const double t24 = std::pow(T, -1.0 / 24);
  b.terms[0] = std::exp(-delta / 8 * lx);
  b.terms[1] = t24 * std::exp(-std::sqrt(c4 * lx / n_L) / 24);
  b.terms[2] = t24 * std::exp(-c4 * lx / lD / 24);
  b.value = C_order / G_order * x / lx * (b.terms[0] + b.terms[1] + b.terms[2]);
  b.valid = lx >= 16 / delta * std::log(lD);
  return b;
}

}  // namespace psv
