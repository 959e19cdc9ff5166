#pragma once

// Closed-form constants and parameter choices of the zero-density argument.
// Parameters that overflow a double at honest sizes are also returned as
// base-10 logarithms.

#include <optional>

namespace psv {

struct ConstantsInput {
  double n = 1, n_k = 1, A = 1, d = 1;
  // optional family/height data; derived parameters need q and T
  std::optional<double> q, T, R;
  std::optional<double> alpha;  // needed for x, 3/4 <= alpha < 1
  std::optional<double> tau;    // needed for M'
  double c = 0.1;               // zero-free region constant, eta = (c/6)/log qT
  double delta = 0.1;  // also the eps_1 of the parameter choice delta = eps_1
  double eps0 = 0.2, eps2 = 0.1, eps3 = 0.1, eps4 = 0.1;
};

/// A positive quantity with its base-10 logarithm (value may be +inf).
struct BigValue {
  double value = 0;
  double log10 = 0;
};

struct ConstantsRecord {
  double c1 = 0, c2 = 0;
  double c1_balanced = 0;  // c1 evaluated at d = 2nA: 8nA + A/2 + 1
  double z = 0;
  std::optional<double> eta;
  std::optional<BigValue> R, M, M_prime, w, y, x;
};

double c1_formula(double n, double A, double d);
double c2_formula(double n, double n_k);
double c1_balanced_formula(double n, double A);
double z_formula(double n, double n_k);

/// log10 of M = 2 (q^{d+nA/2} T R^{1+3 delta} log R)^{1/(1/2 - eps0)}.
double log10_M(double q, double T, double R, double n, double A, double d, double delta, double eps0);
/// log10 of M' = (q^{d+nA/2} (tau-1)^{-1} R^{1+3 delta} log R)^{1/(1/2 - eps0)}.
double log10_M_prime(double q, double tau, double R, double n, double A, double d, double delta, double eps0);

BigValue big_from_log10(double l10);

/// Evaluates every formula the inputs allow. DomainError on nonpositive
/// inputs, eps0 outside (0, 1/2), tau outside (1, 2] or alpha outside
/// [3/4, 1). The exponent 1/(1/2 - eps0) stays finite up to 1/2.
ConstantsRecord constants(const ConstantsInput& in);

}  // namespace psv
