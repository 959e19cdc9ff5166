#include "psv/sievekit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "psv/arith.hpp"
#include "psv/errors.hpp"
#include "psv/lfunc.hpp"
#include "psv/numerics.hpp"

namespace psv {

namespace {

i64 to_i64(u64 v) {
  if (v > static_cast<u64>(INT64_MAX)) throw OverflowError("value exceeds int64");
  return static_cast<i64>(v);
}

// prod_{p | d} over the primes of a squarefree d
template <class F>
void for_each_prime(u64 d, F&& fn) {
  for (const auto& pp : arith::factorize(d).factors) fn(pp.prime);
}

OrthogonalityReport check_pair(const PseudoCharacterContext& f, const PseudoCharacterContext& g, u64 r, u64 t,
                               u64 n_max, const std::vector<std::int8_t>& mu) {
  OrthogonalityReport rep;
  rep.r = r;
  rep.t = t;
  rep.n_max = n_max;
  const auto h = h_coeffs(f, g, r, t);
  const u64 L = std::lcm(r, t);

  // Everything depends on n only through gcd(n, L), a divisor of L.
  std::vector<std::size_t> slot(L + 1, SIZE_MAX);
  std::vector<u64> divs;
  for (const auto& [d, _] : h) divs.push_back(d);
  for (std::size_t i = 0; i < divs.size(); ++i) slot[divs[i]] = i;
  std::vector<Rational> lhs(divs.size()), rhs(divs.size());
  for (std::size_t i = 0; i < divs.size(); ++i) {
    const u64 gd = divs[i];
    lhs[i] = psi_f(f, std::gcd(gd, r)) * psi_f(g, std::gcd(gd, t));
    Rational acc = 0;
    for (const auto& [d, hd] : h)
      if (gd % d == 0) acc += hd;
    rhs[i] = acc;
  }
  const auto L_primes = arith::prime_divisors(L);
  for (u64 n = 1; n <= n_max; ++n) {
    if (mu[n] == 0) continue;  // both sides carry mu(n)^2
    u64 g = 1;  // gcd(n, L), L squarefree
    for (u64 p : L_primes)
      if (n % p == 0) g *= p;
    const std::size_t i = slot[g];
    if (lhs[i] != rhs[i]) {
      rep.product_identity = false;
      rep.first_counterexample = n;
      break;
    }
  }

  Rational bound = 1;
  for_each_prime(r, [&](u64 p) { bound *= Rational(2) * psi_f(f, p).abs(); });
  for_each_prime(t, [&](u64 p) { bound *= Rational(2) * psi_f(g, p).abs(); });
  for (const auto& [d, hd] : h)
    if (hd.abs() > bound) rep.h_bound = false;

  if (g.chi == f.chi.conj()) {
    rep.checked_sum = true;
    Rational acc = 0;
    for (const auto& [d, hd] : h) acc += hd * f.lambda_abs2(d) * rho_f(f, d) / Rational(to_i64(d));
    rep.sum_value = acc;
    rep.sum_expected = r == t ? psi_f(f, r).abs() : Rational(0);
    rep.sum_identity = acc == rep.sum_expected;
  }
  return rep;
}

struct PrimeFactor {
  double log_p;
  cplx coef;  // numerator: psi_f(p) lambda_f(p); denominator: lambda_f(p)
};

struct MollifierTerm {
  double log_d;
  cplx coef;                       // lambda_d psi_{f,r}(d) lambda_f(d)
  std::vector<PrimeFactor> num;    // p | r/(r,d): 1 + psi_f(p) lambda_f(p) p^{-s}
  std::vector<PrimeFactor> den;    // p | rd: (1 + lambda_f(p) p^{-s})^{-1}
  double abs_coef;
  std::vector<double> num_p, den_p;
};

// The d-sum of M_r with everything independent of s precomputed.
struct Mollifier {
  const PseudoCharacterContext& ctx;
  u64 r;
  std::vector<MollifierTerm> terms;
  std::vector<u64> r_primes;

  Mollifier(const PseudoCharacterContext& c, u64 r_, const SelbergWeightScheme& scheme) : ctx(c), r(r_) {
    if (!is_admissible(ctx, r)) throw DomainError("mollifier: r is not admissible");
    r_primes = arith::prime_divisors(r);
    const u64 ymax = static_cast<u64>(std::floor(scheme.y));
    for (u64 d = 1; d <= ymax; ++d) {
      if (std::gcd(d, ctx.P) != 1) continue;
      const int mu = arith::moebius(d);
      if (mu == 0) continue;
      const cplx lam = ctx.lambda(d);
      if (lam == cplx(0, 0)) continue;
      const double weight = mu * scheme.m(static_cast<double>(d));
      if (weight == 0) continue;
      const double c0 = weight * psi_fr(ctx, r, d).to_double();
      MollifierTerm term{std::log(static_cast<double>(d)), c0 * lam, {}, {}, std::abs(c0), {}, {}};
      const u64 g = std::gcd(r, d);
      for (u64 p : r_primes) {
        if ((r / g) % p != 0) continue;
        const double pd = static_cast<double>(p);
        term.num.push_back({std::log(pd), psi_f(ctx, p).to_double() * ctx.lambda(p)});
        term.num_p.push_back(pd);
      }
      auto add_den = [&](u64 p) {
        const double pd = static_cast<double>(p);
        term.den.push_back({std::log(pd), ctx.lambda(p)});
        term.den_p.push_back(pd);
      };
      for (u64 p : r_primes) add_den(p);
      for (u64 p : arith::prime_divisors(d))
        if (r % p != 0) add_den(p);
      terms.push_back(std::move(term));
    }
  }

  cplx operator()(cplx s) const {
    cplx acc = 0;
    for (const auto& t : terms) {
      cplx v = t.coef * std::exp(-s * t.log_d);
      for (const auto& f : t.num) v *= 1.0 + f.coef * std::exp(-s * f.log_p);
      for (const auto& f : t.den) v /= 1.0 + f.coef * std::exp(-s * f.log_p);
      acc += v;
    }
    return acc;
  }

  // Upper bound for |M_r(s)| on Re s = sigma >= 1.
  double abs_bound(double sigma) const {
    double acc = 0;
    for (const auto& t : terms) {
      double v = t.abs_coef * std::exp(-sigma * t.log_d);
      for (double p : t.num_p) v *= 1.0 + std::pow(p, 1.0 - sigma);
      for (double p : t.den_p) v /= 1.0 - std::pow(p, -sigma);
      acc += v;
    }
    return acc;
  }
};

// int_H^infty |Gamma(3 + it)| dt
double gamma3_tail(double H) {
  auto g = [](double t) {
    // |Gamma(3+it)|^2 = (4+t^2)(1+t^2) pi t / sinh(pi t)
    const double e = std::exp(-std::numbers::pi * t);
    const double ratio = t == 0 ? 1.0 : 2 * std::numbers::pi * t * e / (1 - e * e);
    return std::sqrt((4 + t * t) * (1 + t * t) * ratio);
  };
  const auto rule = gauss_legendre(16);
  double acc = 0;
  const double span = 40, width = 0.5;
  for (double a = H; a < H + span; a += width) {
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * width / 2 * g(a + width / 2 * (1 + rule.nodes[i]));
  }
  // beyond H + 40 the integrand decays faster than e^{-t}
  return acc + g(H + span);
}

}  // namespace

PseudoCharacterContext PseudoCharacterContext::make(const DirichletCharacter& chi, double delta, double z, u64 R_cap) {
  if (!(delta > 0 && delta < 0.25)) throw RangeError("PseudoCharacterContext: delta must lie in (0, 1/4)");
  if (!(z >= 1)) throw RangeError("PseudoCharacterContext: z must be >= 1");
  if (R_cap < 1) throw RangeError("PseudoCharacterContext: R_cap must be >= 1");
  return PseudoCharacterContext{primitive_inducing(chi), delta, z, arith::primorial_below(z), R_cap};
}

Rational PseudoCharacterContext::lambda_abs2(u64 n) const {
  return chi.index(static_cast<i64>(n)) ? Rational(1) : Rational(0);
}

bool is_admissible(const PseudoCharacterContext& ctx, u64 r) {
  if (r == 0 || !arith::is_squarefree(r)) return false;
  if (std::gcd(r, ctx.P) != 1 || std::gcd(r, ctx.conductor()) != 1) return false;
  bool ok = true;
  for_each_prime(r, [&](u64 p) {
    if (!(ctx.lambda_abs2(p).to_double() > std::pow(static_cast<double>(p), -2 * ctx.delta))) ok = false;
  });
  return ok;
}

std::vector<u64> admissible_r_set(const PseudoCharacterContext& ctx) {
  std::vector<u64> out;
  for (u64 r = 1; r <= ctx.R_cap; ++r)
    if (is_admissible(ctx, r)) out.push_back(r);
  return out;
}

Rational psi_f(const PseudoCharacterContext& ctx, u64 r) {
  if (r == 0) throw DomainError("psi_f: r must be positive");
  const Rational l2 = ctx.lambda_abs2(r);
  if (l2.is_zero()) throw DomainError("psi_f: lambda_f(r) = 0");
  return Rational(arith::moebius(r)) * Rational(to_i64(r)) / l2;
}

Rational psi_fr(const PseudoCharacterContext& ctx, u64 r, u64 n) {
  if (n == 0) throw DomainError("psi_fr: n must be positive");
  if (!arith::is_squarefree(n)) return 0;
  return psi_f(ctx, std::gcd(n, r));
}

std::map<u64, Rational> h_coeffs(const PseudoCharacterContext& f, const PseudoCharacterContext& g, u64 r, u64 t) {
  if (!is_admissible(f, r)) throw DomainError("h_coeffs: r not admissible for f");
  if (!is_admissible(g, t)) throw DomainError("h_coeffs: t not admissible for g");
  std::map<u64, Rational> h;
  for (u64 d : arith::squarefree_divisors(std::lcm(r, t))) {
    Rational v = 1;
    for_each_prime(d, [&](u64 p) {
      const bool in_r = r % p == 0, in_t = t % p == 0;
      if (in_r && in_t) {
        v *= psi_f(f, p) * psi_f(g, p) - Rational(1);
      } else if (in_r) {
        v *= psi_f(f, p) - Rational(1);
      } else {
        v *= psi_f(g, p) - Rational(1);
      }
    });
    h.emplace(d, v);
  }
  return h;
}

Rational rho_f(const PseudoCharacterContext& ctx, u64 d) {
  if (d == 0 || !arith::is_squarefree(d)) throw DomainError("rho_f: d must be squarefree");
  Rational v = 1;
  for_each_prime(d, [&](u64 p) { v /= Rational(1) + ctx.lambda_abs2(p) / Rational(to_i64(p)); });
  return v;
}

OrthogonalityReport orthogonality_check(const PseudoCharacterContext& f, const PseudoCharacterContext& g, u64 r, u64 t,
                                        u64 n_max) {
  return check_pair(f, g, r, t, n_max, arith::moebius_table(n_max));
}

std::vector<OrthogonalityReport> identity_sweep(u64 q, u64 r_max, u64 n_max, double delta, double z) {
  const auto mu = arith::moebius_table(n_max);
  std::vector<OrthogonalityReport> out;
  for (const auto& chi : primitive_characters(q)) {
    const auto f = PseudoCharacterContext::make(chi, delta, z, r_max);
    const auto g = PseudoCharacterContext::make(chi.conj(), delta, z, r_max);
    const auto rs = admissible_r_set(f);
    const auto ts = admissible_r_set(g);
    for (u64 r : rs)
      for (u64 t : ts) {
        out.push_back(check_pair(f, g, r, t, n_max, mu));
        out.back().character = chi.label();
      }
  }
  return out;
}

void SelbergWeightScheme::validate() const {
  if (!(w >= 1)) throw DomainError("SelbergWeightScheme: w must be >= 1");
  if (!(y > w)) throw DomainError("SelbergWeightScheme: y must exceed w");
  if (!(x > y)) throw DomainError("SelbergWeightScheme: x must exceed y");
  if (!(qT > 1)) throw DomainError("SelbergWeightScheme: qT must exceed 1");
}

double SelbergWeightScheme::X() const {
  const double l = std::log(qT);
  return x / (l * l);
}

double SelbergWeightScheme::m(double d) const {
  if (d <= w) return 1.0;
  if (d <= y) return std::log(y / d) / std::log(y / w);
  return 0.0;
}

double selberg_delta(const SelbergWeightScheme& s, u64 n) {
  if (n == 0) throw DomainError("selberg_delta: n must be positive");
  i64 exact = 0;
  double partial = 0;
  for (u64 d : arith::squarefree_divisors(n)) {
    const double dd = static_cast<double>(d);
    if (dd > s.y) break;
    const int mu = arith::moebius(d);
    if (dd <= s.w) {
      exact += mu;
    } else {
      partial += mu * s.m(dd);
    }
  }
  return static_cast<double>(exact) + partial;
}

std::vector<double> selberg_delta_table(const SelbergWeightScheme& s, u64 N) {
  const u64 dmax = std::min<u64>(N, static_cast<u64>(std::floor(s.y)));
  const auto mu = arith::moebius_table(std::max<u64>(dmax, 1));
  std::vector<i64> exact(N + 1, 0);
  std::vector<double> partial(N + 1, 0.0);
  for (u64 d = 1; d <= dmax; ++d) {
    if (mu[d] == 0) continue;
    const double dd = static_cast<double>(d);
    if (dd <= s.w) {
      for (u64 k = d; k <= N; k += d) exact[k] += mu[d];
    } else {
      const double v = mu[d] * s.m(dd);
      for (u64 k = d; k <= N; k += d) partial[k] += v;
    }
  }
  std::vector<double> out(N + 1, 0.0);
  for (u64 n = 1; n <= N; ++n) out[n] = static_cast<double>(exact[n]) + partial[n];
  return out;
}

cplx mollifier_series(const PseudoCharacterContext& ctx, u64 r, cplx s, const SelbergWeightScheme& scheme) {
  return Mollifier(ctx, r, scheme)(s);
}

cplx mollifier_value(const PseudoCharacterContext& ctx, u64 r, cplx s, const SelbergWeightScheme& scheme) {
  if (s.real() < 0.5 || s.real() > 1.0) throw DomainError("mollifier_value: requires 1/2 <= Re s <= 1");
  if (ctx.z < 4.0) throw DomainError("mollifier_value: requires z >= 4");
  return mollifier_series(ctx, r, s, scheme);
}

double mollifier_envelope(u64 r, cplx s, double y, double delta, double eps) {
  const double sigma = s.real();
  return std::pow(static_cast<double>(r), 1 + 2 * delta - sigma + eps) * std::pow(y, 1 - sigma + eps);
}

bool psilam_check(const PseudoCharacterContext& ctx, u64 r, double y, double eps) {
  const u64 ymax = static_cast<u64>(std::floor(y));
  for (u64 d = 1; d <= ymax; ++d) {
    if (std::gcd(d, ctx.P) != 1 || !arith::is_squarefree(d)) continue;
    const Rational lhs = ctx.lambda_abs2(d).is_zero() ? Rational(0) : psi_fr(ctx, r, d).abs();
    const double g = static_cast<double>(std::gcd(r, d));
    const double rhs = std::pow(static_cast<double>(r), ctx.delta) * g * std::pow(static_cast<double>(d), eps / 2);
    if (lhs.to_double() > rhs) return false;
  }
  return true;
}

namespace {

// Terms of the full detector series for 1 <= n <= N, zero where the
// coefficient vanishes.
std::vector<cplx> detector_terms(const PseudoCharacterContext& ctx, u64 r, cplx rho, const SelbergWeightScheme& scheme,
                                 u64 N) {
  const auto delta = selberg_delta_table(scheme, N);
  const auto mu = arith::moebius_table(N);
  const double X = scheme.X();
  std::vector<cplx> out(N + 1, 0.0);
  for (u64 n = 1; n <= N; ++n) {
    if (mu[n] == 0 || std::gcd(n, ctx.P) != 1 || delta[n] == 0) continue;
    const cplx lam = ctx.lambda(n);
    if (lam == cplx(0, 0)) continue;
    const double nd = static_cast<double>(n);
    const double psi = psi_f(ctx, std::gcd(n, r)).to_double();
    out[n] = delta[n] * psi * std::exp(-nd / X) * lam * std::exp(-rho * std::log(nd));
  }
  return out;
}

}  // namespace

cplx detector_value(const PseudoCharacterContext& ctx, u64 r, cplx rho, const SelbergWeightScheme& scheme) {
  scheme.validate();
  if (!is_admissible(ctx, r)) throw DomainError("detector_value: r is not admissible");
  const u64 xmax = static_cast<u64>(std::floor(scheme.x));
  const u64 start = std::max<u64>(2, static_cast<u64>(std::ceil(scheme.w)));
  if (xmax < start) return 0;
  const auto terms = detector_terms(ctx, r, rho, scheme, xmax);
  return pairwise_sum(std::span<const cplx>(terms).subspan(start, xmax - start + 1));
}

DetectorIdentityReport detector_identity_check(const PseudoCharacterContext& ctx, u64 r, cplx rho,
                                               const SelbergWeightScheme& scheme, double height, double tol) {
  scheme.validate();
  if (!is_admissible(ctx, r)) throw DomainError("detector_identity_check: r is not admissible");
  if (!(rho.real() >= 0.5)) throw DomainError("detector_identity_check: requires Re rho >= 1/2");
  if (!(height > 0)) throw DomainError("detector_identity_check: height must be positive");
  DetectorIdentityReport rep;
  rep.X = scheme.X();
  rep.height = height;
  const double logX = std::log(rep.X);

  const Mollifier mol(ctx, r, scheme);
  const double sigma0 = 3.0 + rho.real();
  const double fbound = hurwitz_zeta(cplx(sigma0, 0), 1.0).real() * mol.abs_bound(sigma0);
  rep.tail_bound = fbound * std::exp(3 * logX) * 2 * gamma3_tail(height) / (2 * std::numbers::pi);
  if (rep.tail_bound > tol) throw PrecisionError("detector_identity_check: contour truncation bound exceeds tolerance");

  // LHS: the series, cut where exp(-n/X) is below 1e-26
  const u64 xmax = static_cast<u64>(std::floor(scheme.x));
  const u64 N = xmax + static_cast<u64>(std::ceil(60 * rep.X));
  const auto terms = detector_terms(ctx, r, rho, scheme, N);
  const u64 start = std::max<u64>(2, static_cast<u64>(std::ceil(scheme.w)));
  const std::span<const cplx> all(terms);
  rep.head = terms[1];
  const cplx below = start > 2 ? pairwise_sum(all.subspan(2, start - 2)) : cplx(0);
  rep.detector = xmax >= start ? pairwise_sum(all.subspan(start, xmax - start + 1)) : cplx(0);
  rep.tail = pairwise_sum(all.subspan(std::max(xmax, start - 1) + 1));
  rep.lhs = rep.head + below + rep.detector + rep.tail;

  // RHS: composite Gauss-Legendre on Re s = 3, |Im s| <= height
  const auto rule = gauss_legendre(16);
  const double width = 0.25;
  const int panels = static_cast<int>(std::ceil(2 * height / width));
  const double step = 2 * height / panels;
  std::vector<cplx> samples;
  samples.reserve(static_cast<std::size_t>(panels) * rule.nodes.size());
  for (int k = 0; k < panels; ++k) {
    const double a = -height + k * step;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double t = a + step / 2 * (1 + rule.nodes[i]);
      const cplx s(3.0, t);
      const cplx w = s + rho;
      const cplx f = l_flat_value(ctx.chi, w, ctx.z, 1e-13) * mol(w);
      samples.push_back(rule.weights[i] * step / 2 * f * std::exp(log_gamma(s) + s * logX));
    }
  }
  rep.nodes = samples.size();
  rep.rhs = pairwise_sum(samples) / (2 * std::numbers::pi);
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

double graham_ratio(const SelbergWeightScheme& scheme, double alpha) {
  scheme.validate();
  const u64 N = static_cast<u64>(std::floor(scheme.x));
  const auto delta = selberg_delta_table(scheme, N);
  std::vector<double> terms(N);
  for (u64 n = 1; n <= N; ++n)
    terms[n - 1] = delta[n] * delta[n] * std::pow(static_cast<double>(n), 1 - 2 * alpha);
  const double denom = std::log(scheme.x / scheme.w) / std::log(scheme.y / scheme.w) * std::pow(scheme.x, 2 - 2 * alpha);
  return pairwise_sum(terms) / denom;
}

double psi_mass_ratio(const PseudoCharacterContext& ctx, u64 R) {
  if (R < 2) throw DomainError("psi_mass_ratio: R must be >= 2");
  std::vector<double> terms;
  for (u64 r = 1; r <= R; ++r)
    if (is_admissible(ctx, r)) terms.push_back(1.0 / psi_f(ctx, r).abs().to_double());
  return pairwise_sum(terms) / (rankin_selberg_residue(ctx.chi).value * std::log(static_cast<double>(R)));
}

}  // namespace psv
