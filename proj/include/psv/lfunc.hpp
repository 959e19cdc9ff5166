#pragma once

// Dirichlet L-functions through the Hurwitz zeta function, plus the
// squarefree/non-squarefree split L = L_flat * L_sharp and the
// Rankin-Selberg residue of chi x conj(chi).

#include <complex>
#include <span>

#include "psv/characters.hpp"
#include "psv/rational.hpp"

namespace psv {

inline constexpr double kDefaultLTolerance = 1e-12;

/// zeta(s, a) for 0 < a <= 1 by Euler-Maclaurin (8 Bernoulli terms). The
/// shift N is chosen so the truncation remainder bound is at most tol/2.
/// Throws PoleError at s = 1, DomainError outside Re s > -2, |Im s| <= 1e3,
/// and PrecisionError if tol < 1e-14 or rounding would swamp tol.
cplx hurwitz_zeta(cplx s, double a, double tol = kDefaultLTolerance);
/// zeta(s, a) - 1/(s - 1): entire, so usable at s = 1 (equals -digamma(a)).
cplx hurwitz_zeta_regularized(cplx s, double a, double tol = kDefaultLTolerance);

/// q^{-s} sum_{a=1}^{q} w[a mod q] zeta(s, a/q) for a q-periodic table w,
/// computed as the head sum_{m <= Nq} w[m] m^{-s} (built multiplicatively)
/// plus one Euler-Maclaurin tail per residue; absolute error ~ tol. With
/// regularized set the polar parts are dropped, which is exact when the
/// w[a] sum to zero.
cplx periodic_zeta(std::span<const cplx> w, cplx s, double tol = kDefaultLTolerance, bool regularized = false);

/// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q), absolute error ~ tol.
cplx l_value(const DirichletCharacter& chi, cplx s, double tol = kDefaultLTolerance);

/// The primitive character inducing chi (modulus = conductor of chi).
DirichletCharacter primitive_inducing(const DirichletCharacter& chi);

/// Sum over n coprime to the conductor of chi(n) n^{-s}, i.e. L of the
/// primitive character inducing chi.
cplx l_ur_value(const DirichletCharacter& chi, cplx s, double tol = kDefaultLTolerance);

/// Part of L_ur carried by non-squarefree n and primes below z:
/// L(2s, chi^2) * prod_{p < z} (1 + chi(p) p^{-s}).
cplx l_sharp_value(const DirichletCharacter& chi, cplx s, double z, double tol = kDefaultLTolerance);

/// Squarefree series over n coprime to P = prod_{p<z} p: L_ur / L_sharp.
/// Requires Re s > 0.55 and z >= 2 (DomainError otherwise).
cplx l_flat_value(const DirichletCharacter& chi, cplx s, double z, double tol = kDefaultLTolerance);

struct RankinSelbergResidue {
  Rational exact;  // phi(q)/q
  double value;
};

/// Residue at s = 1 of sum_{(n,q)=1} |chi(n)|^2 n^{-s}; chi must be primitive.
RankinSelbergResidue rankin_selberg_residue(const DirichletCharacter& chi);

/// (s - 1) q^{-s} sum_{(a,q)=1} zeta(s, a/q) at s = 1 + h: a numeric
/// approximation of the residue above.
double rankin_selberg_numeric(u64 q, double h = 1e-4);

/// |L(s, chi)| / (Cond (|t|+2))^{(1-sigma)/2 + eps}; requires 0 <= Re s <= 1.
double convexity_ratio(const DirichletCharacter& chi, cplx s, double eps);
/// Pair version: L(s, chi psi) against (Cond chi * Cond psi (|t|+2))^{...}.
double convexity_ratio(const DirichletCharacter& chi, const DirichletCharacter& psi, cplx s, double eps);

/// Exponent (1 - sigma)/2 + eps of the convexity envelope.
inline double convexity_exponent(double sigma, double eps) { return (1.0 - sigma) / 2.0 + eps; }

}  // namespace psv
