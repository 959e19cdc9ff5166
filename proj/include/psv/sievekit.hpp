#pragma once

// Pseudo-characters psi_{f,r}, the coefficients h(d) and rho_f(d), the
// Selberg weights Delta(n), the mollifier M_r and the zero detector z_r,
// all for a primitive Dirichlet character f.
//
// In degree 1 |lambda_f(n)|^2 is 0 or 1, so psi_f(r) = mu(r) r and every
// object here except the analytic ones is an integer or a rational.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psv/characters.hpp"
#include "psv/rational.hpp"

namespace psv {

struct PseudoCharacterContext {
  DirichletCharacter chi;  // primitive; lambda_f(n) = chi(n)
  double delta = 0.1;      // 0 < delta < 1/4
  double z = 4.0;          // sieve level, P = prod_{p < z} p
  u64 P = 6;
  u64 R_cap = 1;

  /// Validates delta and z and computes P; chi is replaced by the
  /// primitive character inducing it.
  static PseudoCharacterContext make(const DirichletCharacter& chi, double delta = 0.1, double z = 4.0,
                                     u64 R_cap = 1);

  u64 conductor() const { return chi.modulus(); }
  cplx lambda(u64 n) const { return chi(static_cast<i64>(n)); }
  /// |lambda_f(n)|^2, exactly.
  Rational lambda_abs2(u64 n) const;
};

/// Squarefree r <= R_cap coprime to Cond(f) P with |lambda_f(p)| > p^{-delta} for p | r.
std::vector<u64> admissible_r_set(const PseudoCharacterContext& ctx);
bool is_admissible(const PseudoCharacterContext& ctx, u64 r);

/// mu(r) r |lambda_f(r)|^{-2}; DomainError when lambda_f(r) = 0.
Rational psi_f(const PseudoCharacterContext& ctx, u64 r);
/// mu(n)^2 psi_f(gcd(n, r)).
Rational psi_fr(const PseudoCharacterContext& ctx, u64 r, u64 n);

/// h(d) for squarefree d | rt from the product formula. Requires r
/// admissible for f and t admissible for g.
std::map<u64, Rational> h_coeffs(const PseudoCharacterContext& f, const PseudoCharacterContext& g, u64 r, u64 t);

/// prod_{p | d} (1 + |lambda_f(p)|^2 / p)^{-1}.
Rational rho_f(const PseudoCharacterContext& ctx, u64 d);

struct OrthogonalityReport {
  std::string character;  // label of f
  u64 r = 0, t = 0, n_max = 0;
  bool product_identity = true;             // psi_{f,r} psi_{g,t} = mu^2 sum_{d|n} h(d)
  std::optional<u64> first_counterexample;  // smallest failing n
  bool checked_sum = false;                 // only when g = conj(f)
  bool sum_identity = true;                 // sum_d h(d)|lambda(d)|^2 rho(d)/d = delta(r,t)|psi_f(r)|
  Rational sum_value, sum_expected;
  bool h_bound = true;                      // |h(d)| <= prod 2|psi_f(p)| prod 2|psi_g(p)|
  bool pass() const { return product_identity && sum_identity && h_bound; }
};

/// Checks both identities exactly for one pair (r, t) and all n <= n_max.
OrthogonalityReport orthogonality_check(const PseudoCharacterContext& f, const PseudoCharacterContext& g, u64 r, u64 t,
                                        u64 n_max);

/// Every primitive f mod q with g = conj(f), all admissible r, t <= r_max.
std::vector<OrthogonalityReport> identity_sweep(u64 q, u64 r_max, u64 n_max, double delta = 0.1, double z = 4.0);

struct SelbergWeightScheme {
  double w = 1, y = 2, x = 3;
  double qT = 10;  // enters only through X = x / (log qT)^2

  void validate() const;
  double X() const;
  /// m(d): 1 up to w, log(y/d)/log(y/w) up to y, 0 beyond.
  double m(double d) const;
};

/// Delta(n) = sum_{d | n} mu(d) m(d). The d <= w part is summed in
/// integers, so Delta(n) is exactly 0 for 1 < n <= w.
double selberg_delta(const SelbergWeightScheme& s, u64 n);

/// Delta(n) for all n <= N at once (divisor sieve over d <= y).
std::vector<double> selberg_delta_table(const SelbergWeightScheme& s, u64 N);

/// The finite sum M_r(f, s) over squarefree d <= y coprime to P. Requires
/// 1/2 <= Re s <= 1 and z >= 4.
cplx mollifier_value(const PseudoCharacterContext& ctx, u64 r, cplx s, const SelbergWeightScheme& scheme);
/// Same sum without the range checks (used on Re s = 3 + Re rho).
cplx mollifier_series(const PseudoCharacterContext& ctx, u64 r, cplx s, const SelbergWeightScheme& scheme);
/// r^{1+2 delta-sigma+eps} y^{1-sigma+eps}.
double mollifier_envelope(u64 r, cplx s, double y, double delta, double eps);
/// |psi_{f,r}(d) lambda_f(d)| <= r^delta (r,d) d^{eps/2} for all squarefree d <= y coprime to P.
bool psilam_check(const PseudoCharacterContext& ctx, u64 r, double y, double eps);

/// z_r(f, rho): sum over squarefree n with (n, P) = 1, max(w, 2) <= n <= x,
/// of Delta(n) psi_{f,r}(n) exp(-n/X) lambda_f(n) n^{-rho}.
cplx detector_value(const PseudoCharacterContext& ctx, u64 r, cplx rho, const SelbergWeightScheme& scheme);

struct DetectorIdentityReport {
  cplx lhs, rhs;
  cplx head, detector, tail;  // exp(-1/X), z_r, sum over n > x
  double residual = 0;
  double tail_bound = 0;      // certified bound on the |Im s| > H part of the integral
  double X = 0, height = 0;
  std::size_t nodes = 0;
};

/// exp(-1/X) + z_r + (n > x tail) against
/// (1/2 pi i) int_{(3)} L_flat(s+rho) M_r(s+rho) Gamma(s) X^s ds, the
/// integral truncated at |Im s| <= height. PrecisionError if the
/// truncation bound exceeds tol.
DetectorIdentityReport detector_identity_check(const PseudoCharacterContext& ctx, u64 r, cplx rho,
                                               const SelbergWeightScheme& scheme, double height, double tol = 1e-6);

/// sum_{n<=x} Delta(n)^2 n^{1-2 alpha} / (log(x/w)/log(y/w) x^{2-2 alpha}).
double graham_ratio(const SelbergWeightScheme& scheme, double alpha);

/// sum_{r <= R, r admissible} 1/|psi_f(r)| / (s(f) log R).
double psi_mass_ratio(const PseudoCharacterContext& ctx, u64 R);

}  // namespace psv
