#pragma once

// Left/right sides of the large sieve inequalities over the family of
// primitive characters mod q, the well-spaced zero selection, and the
// primal/dual operator norm comparison.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "psv/characters.hpp"
#include "psv/zeros.hpp"

namespace psv {

/// eta = (c/6) / log(qT); DomainError unless qT > 1 and c > 0.
double eta(double q, double T, double c);

struct WellSpacedSelection {
  double eta = 0;
  long j_min = 0, j_max = 0;      // range of rectangle indices that held zeros
  std::size_t representatives = 0;
  bool even = true;               // parity class kept
  std::vector<Zero> chosen;       // sorted by gamma
};

/// One zero per occupied R_j = [alpha, 1] x [j eta, (j+1) eta) (lowest
/// gamma, then lowest beta), then the larger parity class (ties: even).
WellSpacedSelection well_spaced_zeros(const std::vector<Zero>& zeros, const Rectangle& rect, double eta);

/// Per-rectangle zero counts against ceil(k1 (1-alpha) log(q(|t_j|+3)) + k2),
/// t_j = (2j+1) eta / 2.
struct RectangleEnvelopeCheck {
  bool ok = true;
  int max_count = 0;
  long worst_j = 0;
  double worst_margin = 0;  // min over occupied j of envelope - count
};
RectangleEnvelopeCheck rectangle_envelope_check(const std::vector<Zero>& zeros, const Rectangle& rect, double eta,
                                                double q, double kappa1, double kappa2);

/// Degree-1 family data shared by the harnesses.
struct SieveParams {
  u64 q = 5;
  double T = 10;
  u64 R = 15;
  double delta = 0.1;
  double z = 4;
  double eps0 = 0.2;
  double alpha = 0.75;
  // family exponents; the degree-1 family has n = A = d = 1
  double n = 1, A = 1, d = 1;
};

struct FamilyZeros {
  DirichletCharacter chi;
  WellSpacedSelection selection;
};

/// sum_f 1/s(f) sum_{rho} sum_{r <= R admissible} 1/|psi_f(r)| |sum_{n<=N} a_n psi_{f,r}(n) lambda_f(n) n^{-rho}|^2
/// with a[n] for 0 <= n <= N (a[0] ignored). Unless allow_small_support is
/// set, ContractError if some a_n != 0 with n < M.
double zero_sieve_lhs(const std::vector<FamilyZeros>& family, std::span<const cplx> a, const SieveParams& p,
                     bool allow_small_support = false);

/// log(qTN)(1 + log(log N / log qTR)) sum_{n<=N} |a_n|^2 n^{1-2 alpha}; N = a.size() - 1.
/// DomainError unless N > max(qTR, e) and qTR > 1.
double zero_sieve_rhs(std::span<const cplx> a, double q, double T, double R, double alpha);

struct SieveContribution {
  std::string character;
  u64 r = 0;
  double value = 0;  // weighted |sum|^2 of this (f, r)
};

struct SieveReport {
  double lhs = 0, rhs = 0, ratio = 0;
  double N_prime = 0, tau = 0;
  double M_prime = 0, log10_M_prime = 0;
  bool above_threshold = false;  // N' > M'
  SieveParams params;
  std::vector<SieveContribution> contributions;
};

/// Dyadic form: a[i] is the coefficient of n = N' + i, for N' <= n <= tau N'.
/// LHS = sum_f 1/s(f) sum_r 1/|psi_f(r)| |sum_n a_n psi_{f,r}(n) lambda_f(n)|^2,
/// RHS = (tau - 1) N' sum |a_n|^2. DomainError unless 1 < tau <= 2.
SieveReport dyadic_harness(const std::vector<DirichletCharacter>& family, u64 N_prime, double tau,
                           std::span<const cplx> a, const SieveParams& p);

struct DualityReport {
  std::size_t rows = 0, cols = 0;  // (f, r) pairs, n values
  double primal_norm = 0, dual_norm = 0;
  double relative_gap = 0;
  int primal_iterations = 0, dual_iterations = 0;
  double random_primal_max = 0, random_dual_max = 0;  // over unit random vectors, squared norms
};

/// Builds c_{n,(f,r)} = psi_{f,r}(n) lambda_f(n) / sqrt(s(f)|psi_f(r)|) for
/// N' <= n <= tau N' and compares ||A|| with ||A^T|| by power iteration.
DualityReport duality_check(const std::vector<DirichletCharacter>& family, u64 N_prime, double tau,
                            const SieveParams& p, std::uint64_t seed, int random_trials = 20, double tol = 1e-6);

}  // namespace psv
