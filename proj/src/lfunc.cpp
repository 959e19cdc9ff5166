#include "psv/lfunc.hpp"

#include <algorithm>
#include <cmath>

#include "psv/arith.hpp"
#include "psv/errors.hpp"

namespace psv {

namespace {

u64 inverse_mod(u64 a, u64 m) {
  i64 t = 0, nt = 1;
  i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
  while (nr != 0) {
    const i64 qt = r / nr;
    t -= qt * nt;
    std::swap(t, nt);
    r -= qt * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw DomainError("inverse_mod: not invertible");
  return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

}  // namespace

cplx l_value(const DirichletCharacter& chi, cplx s, double tol) {
  const u64 q = chi.modulus();
  if (chi.is_principal() && s == cplx(1.0, 0.0)) throw PoleError("l_value: principal character at s = 1");
  if (q == 1) return hurwitz_zeta(s, 1.0, tol);
  std::vector<cplx> w(q, cplx(0, 0));
  for (u64 a = 1; a <= q; ++a)
    if (const auto k = chi.index(static_cast<i64>(a))) w[a % q] = chi.root(*k);
  // for non-principal chi the polar parts cancel, so the regularized
  // tails can be summed; this keeps s = 1 available
  return periodic_zeta(w, s, tol, !chi.is_principal());
}

DirichletCharacter primitive_inducing(const DirichletCharacter& chi) {
  if (chi.is_primitive()) return chi;
  const u64 f = chi.conductor();
  const u64 q = chi.modulus();
  auto group = std::make_shared<const UnitGroup>(f);
  const auto factors = group->factors();
  std::vector<u64> e(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& fac = factors[i];
    // n = generator mod p^k and 1 mod f/p^k, then lifted to a unit mod q
    const u64 rest = f / fac.modulus;
    const u64 g = fac.generator % fac.modulus;
    const u64 t = arith::mul_mod((g + fac.modulus - 1) % fac.modulus, inverse_mod(rest % fac.modulus, fac.modulus),
                                 fac.modulus);
    u64 n = 1 + rest * t;
    while (std::gcd(n, q) != 1) n += f;
    const u64 k = *chi.index(static_cast<i64>(n));
    e[i] = k * fac.order / chi.order();
  }
  return DirichletCharacter(group, std::move(e));
}

cplx l_ur_value(const DirichletCharacter& chi, cplx s, double tol) {
  return l_value(primitive_inducing(chi), s, tol);
}

cplx l_sharp_value(const DirichletCharacter& chi, cplx s, double z, double tol) {
  const auto prim = primitive_inducing(chi);
  cplx prod = l_value(prim.pow(2), 2.0 * s, tol);
  for (u64 p = 2; static_cast<double>(p) < z; ++p) {
    if (!arith::is_prime(p)) continue;
    prod *= 1.0 + prim(static_cast<i64>(p)) * std::exp(-s * std::log(static_cast<double>(p)));
  }
  return prod;
}

cplx l_flat_value(const DirichletCharacter& chi, cplx s, double z, double tol) {
  if (!(s.real() > 0.55)) throw DomainError("l_flat_value: requires Re s > 0.55");
  if (!(z >= 2.0)) throw DomainError("l_flat_value: requires z >= 2");
  const auto prim = primitive_inducing(chi);
  return l_value(prim, s, tol) / l_sharp_value(prim, s, z, tol);
}

RankinSelbergResidue rankin_selberg_residue(const DirichletCharacter& chi) {
  if (!chi.is_primitive()) throw DomainError("rankin_selberg_residue: character must be primitive");
  const u64 q = chi.modulus();
  const Rational r(static_cast<i64>(arith::euler_phi(q)), static_cast<i64>(q));
  return {r, r.to_double()};
}

double rankin_selberg_numeric(u64 q, double h) {
  if (q == 0) throw RangeError("rankin_selberg_numeric: q must be positive");
  const cplx s(1.0 + h, 0.0);
  const double qd = static_cast<double>(q);
  double acc = 0;
  for (u64 a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    acc += hurwitz_zeta(s, static_cast<double>(a) / qd, 1e-10).real();
  }
  return h * std::pow(qd, -s.real()) * acc;
}

double convexity_ratio(const DirichletCharacter& chi, cplx s, double eps) {
  if (s.real() < 0.0 || s.real() > 1.0) throw DomainError("convexity_ratio: requires 0 <= Re s <= 1");
  const double env = std::pow(static_cast<double>(chi.conductor()) * (std::abs(s.imag()) + 2.0),
                              convexity_exponent(s.real(), eps));
  return std::abs(l_value(chi, s)) / env;
}

double convexity_ratio(const DirichletCharacter& chi, const DirichletCharacter& psi, cplx s, double eps) {
  if (s.real() < 0.0 || s.real() > 1.0) throw DomainError("convexity_ratio: requires 0 <= Re s <= 1");
  if (chi.modulus() != psi.modulus()) throw DomainError("convexity_ratio: pair needs a common modulus");
  const double cond = static_cast<double>(chi.conductor()) * static_cast<double>(psi.conductor());
  const double env = std::pow(cond * (std::abs(s.imag()) + 2.0), convexity_exponent(s.real(), eps));
  return std::abs(l_value(chi * psi, s)) / env;
}

}  // namespace psv
