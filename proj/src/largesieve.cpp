#include "psv/largesieve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "psv/constants.hpp"
#include "psv/errors.hpp"
#include "psv/lfunc.hpp"
#include "psv/numerics.hpp"
#include "psv/sievekit.hpp"

namespace psv {

double eta(double q, double T, double c) {
  if (!(q * T > 1)) throw DomainError("eta: need qT > 1");
  if (!(c > 0)) throw DomainError("eta: need c > 0");
  return (c / 6) / std::log(q * T);
}

namespace {

long rect_index(double gamma, double eta) { return static_cast<long>(std::floor(gamma / eta)); }
bool is_even(long j) { return ((j % 2) + 2) % 2 == 0; }

bool inside(const Zero& z, const Rectangle& rect) {
  return z.beta >= rect.alpha && z.beta <= 1 && std::abs(z.gamma) <= rect.T;
}

// Rows of the (f, r) operator: weights and psi_{f,r}(n) lambda_f(n) on the n range.
struct FamilyRow {
  std::string character;
  u64 r;
  double weight;  // 1 / (s(f) |psi_f(r)|)
  std::vector<cplx> coef;
};

std::vector<FamilyRow> build_rows(const std::vector<DirichletCharacter>& family, u64 n_lo, u64 n_hi,
                                  const SieveParams& p) {
  std::vector<FamilyRow> rows;
  for (const auto& chi : family) {
    const auto ctx = PseudoCharacterContext::make(chi, p.delta, p.z, p.R);
    const double sf = rankin_selberg_residue(ctx.chi).value;
    for (u64 r : admissible_r_set(ctx)) {
      FamilyRow row;
      row.character = ctx.chi.label();
      row.r = r;
      row.weight = 1 / (sf * psi_f(ctx, r).abs().to_double());
      row.coef.resize(n_hi - n_lo + 1);
      for (u64 n = n_lo; n <= n_hi; ++n) row.coef[n - n_lo] = psi_fr(ctx, r, n).to_double() * ctx.lambda(n);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

double norm2(const std::vector<cplx>& v) {
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = std::norm(v[i]);
  return pairwise_sum(sq);
}

std::vector<cplx> random_unit(SplitMix64& rng, std::size_t n) {
  std::vector<cplx> v(n);
  for (auto& x : v) {
    const double re = rng.normal();
    x = {re, rng.normal()};
  }
  const double s = std::sqrt(norm2(v));
  for (auto& x : v) x /= s;
  return v;
}

using Matrix = std::vector<std::vector<cplx>>;  // row-major

std::vector<cplx> matvec(const Matrix& A, const std::vector<cplx>& x) {
  std::vector<cplx> y(A.size());
  std::vector<cplx> t(x.size());
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) t[j] = A[i][j] * x[j];
    y[i] = pairwise_sum(t);
  }
  return y;
}

Matrix transpose(const Matrix& A, bool conjugate) {
  Matrix B(A.empty() ? 0 : A[0].size(), std::vector<cplx>(A.size()));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A[i].size(); ++j) B[j][i] = conjugate ? std::conj(A[i][j]) : A[i][j];
  return B;
}

// Largest singular value of A by power iteration on A^H A.
double spectral_norm(const Matrix& A, SplitMix64& rng, double tol, int& iterations) {
  const Matrix AH = transpose(A, true);
  auto x = random_unit(rng, AH.size());
  double prev = 0;
  for (iterations = 1; iterations <= 100000; ++iterations) {
    auto y = matvec(AH, matvec(A, x));
    const double lam = std::sqrt(norm2(y));  // ||A^H A x|| with ||x|| = 1
    if (lam == 0) return 0;
    for (auto& v : y) v /= lam;
    x = std::move(y);
    if (std::abs(lam - prev) <= tol * lam) return std::sqrt(lam);
    prev = lam;
  }
  throw PrecisionError("spectral_norm: power iteration did not converge");
}

}  // namespace

WellSpacedSelection well_spaced_zeros(const std::vector<Zero>& zeros, const Rectangle& rect, double eta) {
  if (!(eta > 0)) throw DomainError("well_spaced_zeros: eta must be positive");
  WellSpacedSelection out;
  out.eta = eta;
  std::map<long, Zero> rep;
  for (const auto& z : zeros) {
    if (!inside(z, rect)) throw DomainError("well_spaced_zeros: zero outside the rectangle");
    const long j = rect_index(z.gamma, eta);
    auto it = rep.find(j);
    if (it == rep.end())
      rep.emplace(j, z);
    else if (z.gamma < it->second.gamma || (z.gamma == it->second.gamma && z.beta < it->second.beta))
      it->second = z;
  }
  out.representatives = rep.size();
  if (rep.empty()) return out;
  out.j_min = rep.begin()->first;
  out.j_max = rep.rbegin()->first;
  std::size_t n_even = 0;
  for (const auto& [j, z] : rep) n_even += is_even(j);
  out.even = 2 * n_even >= rep.size();
  for (const auto& [j, z] : rep)
    if (is_even(j) == out.even) out.chosen.push_back(z);
  return out;
}

RectangleEnvelopeCheck rectangle_envelope_check(const std::vector<Zero>& zeros, const Rectangle& rect, double eta,
                                                double q, double kappa1, double kappa2) {
  if (!(eta > 0)) throw DomainError("rectangle_envelope_check: eta must be positive");
  std::map<long, int> counts;
  for (const auto& z : zeros)
    if (inside(z, rect)) ++counts[rect_index(z.gamma, eta)];
  RectangleEnvelopeCheck out;
  out.worst_margin = INFINITY;
  for (const auto& [j, c] : counts) {
    const double tj = (2.0 * j + 1) * eta / 2;
    const double env = std::ceil(kappa1 * (1 - rect.alpha) * std::log(q * (std::abs(tj) + 3)) + kappa2);
    out.max_count = std::max(out.max_count, c);
    if (env - c < out.worst_margin) {
      out.worst_margin = env - c;
      out.worst_j = j;
    }
    if (c > env) out.ok = false;
  }
  return out;
}

double zero_sieve_lhs(const std::vector<FamilyZeros>& family, std::span<const cplx> a, const SieveParams& p,
                     bool allow_small_support) {
  if (!allow_small_support) {
    // M = 0 when R = 1 (log R = 0), so the constraint is vacuous there.
    double M = 0;
    if (p.R > 1)
      M = std::pow(10.0, log10_M(static_cast<double>(p.q), p.T, static_cast<double>(p.R), p.n, p.A, p.d, p.delta,
                                 p.eps0));
    for (std::size_t n = 1; n < a.size(); ++n)
      if (a[n] != cplx(0) && static_cast<double>(n) < M)
        throw ContractError("zero_sieve_lhs: coefficient support must satisfy n >= M");
  }
  std::vector<double> terms;
  for (const auto& fz : family) {
    if (fz.selection.chosen.empty()) continue;
    const auto ctx = PseudoCharacterContext::make(fz.chi, p.delta, p.z, p.R);
    const double sf = rankin_selberg_residue(ctx.chi).value;
    for (u64 r : admissible_r_set(ctx)) {
      const double w = 1 / (sf * psi_f(ctx, r).abs().to_double());
      std::vector<cplx> base(a.size());
      for (std::size_t n = 1; n < a.size(); ++n)
        if (a[n] != cplx(0)) base[n] = a[n] * psi_fr(ctx, r, n).to_double() * ctx.lambda(n);
      for (const auto& z : fz.selection.chosen) {
        const cplx rho(z.beta, z.gamma);
        std::vector<cplx> t(a.size());
        for (std::size_t n = 1; n < a.size(); ++n)
          if (base[n] != cplx(0)) t[n] = base[n] * std::exp(-rho * std::log(static_cast<double>(n)));
        terms.push_back(w * std::norm(pairwise_sum(t)));
      }
    }
  }
  return pairwise_sum(terms);
}

double zero_sieve_rhs(std::span<const cplx> a, double q, double T, double R, double alpha) {
  if (a.size() < 2) throw DomainError("zero_sieve_rhs: need N >= 1");
  const double N = static_cast<double>(a.size() - 1);
  const double qTR = q * T * R;
  if (!(qTR > 1) || !(N > std::max(qTR, std::numbers::e)))
    throw DomainError("zero_sieve_rhs: need N > max(qTR, e) and qTR > 1");
  std::vector<double> t(a.size());
  for (std::size_t n = 1; n < a.size(); ++n) t[n] = std::norm(a[n]) * std::pow(static_cast<double>(n), 1 - 2 * alpha);
  return std::log(q * T * N) * (1 + std::log(std::log(N) / std::log(qTR))) * pairwise_sum(t);
}

SieveReport dyadic_harness(const std::vector<DirichletCharacter>& family, u64 N_prime, double tau,
                           std::span<const cplx> a, const SieveParams& p) {
  if (!(tau > 1 && tau <= 2)) throw DomainError("dyadic_harness: tau must lie in (1, 2]");
  if (N_prime < 1) throw DomainError("dyadic_harness: N' must be positive");
  const u64 n_hi = static_cast<u64>(std::floor(tau * static_cast<double>(N_prime)));
  if (a.size() != n_hi - N_prime + 1) throw DomainError("dyadic_harness: coefficient count must match [N', tau N']");
  SieveReport rep;
  rep.params = p;
  rep.N_prime = static_cast<double>(N_prime);
  rep.tau = tau;
  if (p.R > 1) {
    rep.log10_M_prime = log10_M_prime(static_cast<double>(p.q), tau, static_cast<double>(p.R), p.n, p.A, p.d, p.delta,
                                      p.eps0);
    rep.M_prime = std::pow(10.0, rep.log10_M_prime);
    rep.above_threshold = std::log10(rep.N_prime) > rep.log10_M_prime;
  }
  std::vector<double> terms;
  for (const auto& row : build_rows(family, N_prime, n_hi, p)) {
    std::vector<cplx> t(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) t[i] = a[i] * row.coef[i];
    terms.push_back(row.weight * std::norm(pairwise_sum(t)));
    rep.contributions.push_back({row.character, row.r, terms.back()});
  }
  rep.lhs = pairwise_sum(terms);
  std::vector<double> sq(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) sq[i] = std::norm(a[i]);
  rep.rhs = (tau - 1) * rep.N_prime * pairwise_sum(sq);
  rep.ratio = rep.rhs > 0 ? rep.lhs / rep.rhs : 0;
  return rep;
}

DualityReport duality_check(const std::vector<DirichletCharacter>& family, u64 N_prime, double tau,
                            const SieveParams& p, std::uint64_t seed, int random_trials, double tol) {
  if (!(tau > 1 && tau <= 2)) throw DomainError("duality_check: tau must lie in (1, 2]");
  const u64 n_hi = static_cast<u64>(std::floor(tau * static_cast<double>(N_prime)));
  Matrix A;
  for (const auto& row : build_rows(family, N_prime, n_hi, p)) {
    const double s = std::sqrt(row.weight);
    std::vector<cplx> r(row.coef.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = s * row.coef[i];
    A.push_back(std::move(r));
  }
  DualityReport out;
  out.rows = A.size();
  out.cols = n_hi - N_prime + 1;
  if (A.empty()) return out;
  SplitMix64 rng(seed);
  const Matrix AT = transpose(A, false);
  out.primal_norm = spectral_norm(A, rng, tol, out.primal_iterations);
  out.dual_norm = spectral_norm(AT, rng, tol, out.dual_iterations);
  out.relative_gap = std::abs(out.primal_norm - out.dual_norm) / std::max(out.primal_norm, out.dual_norm);
  for (int k = 0; k < random_trials; ++k) {
    out.random_primal_max = std::max(out.random_primal_max, norm2(matvec(A, random_unit(rng, out.cols))));
    out.random_dual_max = std::max(out.random_dual_max, norm2(matvec(AT, random_unit(rng, out.rows))));
  }
  return out;
}

}  // namespace psv
