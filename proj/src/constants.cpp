#include "psv/constants.hpp"

#include <cmath>

#include "psv/errors.hpp"

namespace psv {

double c1_formula(double n, double A, double d) { return 2 * d + 4 * n * A + A / 2 + 1; }
double c2_formula(double n, double n_k) { return n * n_k / 2 + 3; }
double c1_balanced_formula(double n, double A) { return 8 * n * A + A / 2 + 1; }
double z_formula(double n, double n_k) { return 4 * std::pow(n, 4) * std::pow(n_k, 4); }

double log10_M(double q, double T, double R, double n, double A, double d, double delta, double eps0) {
  if (!(R > 1)) throw DomainError("M: R must exceed 1");
  const double inner = (d + n * A / 2) * std::log10(q) + std::log10(T) + (1 + 3 * delta) * std::log10(R) +
                       std::log10(std::log(R));
  return std::log10(2.0) + inner / (0.5 - eps0);
}

double log10_M_prime(double q, double tau, double R, double n, double A, double d, double delta, double eps0) {
  if (!(tau > 1 && tau <= 2)) throw DomainError("M': tau must lie in (1, 2]");
  if (!(R > 1)) throw DomainError("M': R must exceed 1");
  const double inner = (d + n * A / 2) * std::log10(q) - std::log10(tau - 1) + (1 + 3 * delta) * std::log10(R) +
                       std::log10(std::log(R));
  return inner / (0.5 - eps0);
}

BigValue big_from_log10(double l10) { return {std::pow(10.0, l10), l10}; }

ConstantsRecord constants(const ConstantsInput& in) {
  for (double v : {in.n, in.n_k, in.A, in.d})
    if (!(v > 0)) throw DomainError("constants: n, n_k, A, d must be positive");
  if (!(in.eps0 > 0 && in.eps0 < 0.5)) throw DomainError("constants: eps0 must lie in (0, 1/2)");
  ConstantsRecord out;
  out.c1 = c1_formula(in.n, in.A, in.d);
  out.c2 = c2_formula(in.n, in.n_k);
  out.c1_balanced = c1_balanced_formula(in.n, in.A);
  out.z = z_formula(in.n, in.n_k);
  if (in.tau && in.q && in.R)
    out.M_prime = big_from_log10(log10_M_prime(*in.q, *in.tau, *in.R, in.n, in.A, in.d, in.delta, in.eps0));
  if (!in.q || !in.T) return out;

  const double q = *in.q, T = *in.T;
  if (!(q >= 1 && T > 0 && q * T > 1)) throw DomainError("constants: need q >= 1, T > 0, qT > 1");
  const double lqT = std::log10(q * T);
  out.eta = (in.c / 6) / std::log(q * T);
  const double lR = in.R ? std::log10(*in.R) : in.n * in.A * std::log10(q) + in.eps2 * lqT;
  const double R = std::pow(10.0, lR);
  out.R = BigValue{R, lR};
  const double lM = log10_M(q, T, R, in.n, in.A, in.d, in.delta, in.eps0);
  out.M = big_from_log10(lM);
  out.w = out.M;
  const double ly = lM + in.eps3 * lqT;
  out.y = big_from_log10(ly);
  if (in.alpha) {
    const double a = *in.alpha;
    if (!(a >= 0.75 && a < 1)) throw DomainError("constants: alpha must lie in [3/4, 1)");
    const double base = ly + in.A / 2 * std::log10(q) + in.n * in.n_k / 2 * std::log10(T) + (1 + 4 * in.delta) * lR;
    out.x = big_from_log10(base * (1 / (2 * a - 1) + in.eps4));
  }
  if (in.tau) out.M_prime = big_from_log10(log10_M_prime(q, *in.tau, R, in.n, in.A, in.d, in.delta, in.eps0));
  return out;
}

}  // namespace psv
