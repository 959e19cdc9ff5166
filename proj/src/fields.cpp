#include "psv/fields.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "psv/arith.hpp"
#include "psv/errors.hpp"

namespace psv {

namespace {

void check_degree(unsigned n) {
  if (n != 3 && n != 5 && n != 7) throw DomainError("cyclic fields: degree must be 3, 5 or 7");
}

// Largest f with f^{n-1} <= X, in integers.
u64 max_conductor(unsigned n, double X) {
  if (!(X > 0 && X <= 1e12)) throw DomainError("cyclic fields: X must lie in (0, 1e12]");
  const u64 lim = static_cast<u64>(X);
  u64 f = static_cast<u64>(std::pow(X, 1.0 / (n - 1)));
  auto fits = [&](u64 c) {
    u64 v = 1;
    for (unsigned i = 0; i + 1 < n; ++i) {
      if (v > lim / c) return false;
      v *= c;
    }
    return v <= lim;
  };
  while (f > 0 && !fits(f)) --f;
  while (fits(f + 1)) ++f;
  return f;
}

ConductorFactor make_factor(u64 p, unsigned k) {
  ConductorFactor c;
  c.p = p;
  c.k = k;
  c.modulus = arith::pow_checked(p, k);
  c.generator = arith::primitive_root_prime_power(p, k);
  c.phi = arith::euler_phi(c.modulus);
  return c;
}

// Visits every admissible conductor <= fmax as its ascending factor list.
void for_each_conductor(unsigned n, u64 fmax, const std::function<void(const std::vector<ConductorFactor>&)>& visit) {
  if (fmax < 2) return;
  std::vector<u64> primes;
  for (u64 p : arith::sieve_primes(fmax))
    if (p % n == 1) primes.push_back(p);
  std::vector<ConductorFactor> cur;
  // the n^2 factor sorts first since n is below every p = 1 mod n
  std::function<void(std::size_t, u64)> rec = [&](std::size_t start, u64 f) {
    if (!cur.empty()) visit(cur);
    for (std::size_t i = start; i < primes.size() && primes[i] <= fmax / f; ++i) {
      cur.push_back(make_factor(primes[i], 1));
      rec(i + 1, f * primes[i]);
      cur.pop_back();
    }
  };
  rec(0, 1);
  const u64 n2 = static_cast<u64>(n) * n;
  if (n2 <= fmax) {
    cur.push_back(make_factor(n, 2));
    rec(0, n2);
    cur.pop_back();
  }
}

u64 conductor_of(const std::vector<ConductorFactor>& fs) {
  u64 f = 1;
  for (const auto& c : fs) f *= c.modulus;
  return f;
}

// Exponent mod n of u against the generator of the order-n quotient.
unsigned index_mod_n(const ConductorFactor& c, unsigned n, u64 u) {
  const u64 e = c.phi / n;
  const u64 target = arith::pow_mod(u % c.modulus, e, c.modulus);
  const u64 base = arith::pow_mod(c.generator, e, c.modulus);
  u64 acc = 1;
  for (unsigned j = 0; j < n; ++j) {
    if (acc == target) return j;
    acc = arith::mul_mod(acc, base, c.modulus);
  }
  throw DomainError("frobenius_class: residue not a unit");
}

}  // namespace

std::vector<CyclicField> enumerate_cyclic(unsigned n, double X) {
  check_degree(n);
  const u64 fmax = max_conductor(n, X);
  std::vector<CyclicField> out;
  for_each_conductor(n, fmax, [&](const std::vector<ConductorFactor>& fs) {
    // Primitive order-n characters are the vectors with every c_i in 1..n-1;
    // scaling by (Z/n)^* is the Galois action, so c_1 = 1 picks one per orbit.
    const std::size_t t = fs.size();
    std::vector<unsigned> c(t, 1);
    std::size_t count = 0;
    const u64 f = conductor_of(fs);
    while (true) {
      CyclicField K;
      K.degree = n;
      K.conductor = f;
      K.discriminant = arith::pow_checked(f, n - 1);
      K.factors = fs;
      K.exponents = c;
      K.index = static_cast<unsigned>(++count);
      K.label = std::to_string(n) + "." + std::to_string(f) + "." + std::to_string(K.index);
      out.push_back(std::move(K));
      // lexicographic odometer over positions 2..t
      std::size_t i = t;
      while (i > 1 && c[i - 1] == n - 1) c[--i] = 1;
      if (i <= 1) break;
      ++c[i - 1];
    }
  });
  std::sort(out.begin(), out.end(), [](const CyclicField& a, const CyclicField& b) {
    return a.discriminant != b.discriminant ? a.discriminant < b.discriminant : a.index < b.index;
  });
  return out;
}

u64 count_cyclic(unsigned n, double X) {
  check_degree(n);
  u64 total = 0;
  for_each_conductor(n, max_conductor(n, X), [&](const std::vector<ConductorFactor>& fs) {
    total += arith::pow_checked(n - 1, static_cast<unsigned>(fs.size() - 1));
  });
  return total;
}

std::optional<unsigned> frobenius_class(const CyclicField& K, u64 p) {
  if (K.conductor % p == 0) return std::nullopt;
  unsigned j = 0;
  for (std::size_t i = 0; i < K.factors.size(); ++i)
    j = (j + K.exponents[i] * index_mod_n(K.factors[i], K.degree, p)) % K.degree;
  return j;
}

std::vector<std::int8_t> frobenius_table(const CyclicField& K) {
  const unsigned n = K.degree;
  std::vector<std::int8_t> out(K.conductor, -1);
  // per-factor classes via powers of the generator, then CRT by direct residue lookup
  std::vector<std::vector<std::int8_t>> local;
  for (std::size_t i = 0; i < K.factors.size(); ++i) {
    const auto& c = K.factors[i];
    std::vector<std::int8_t> t(c.modulus, -1);
    u64 g = 1;
    for (u64 e = 0; e < c.phi; ++e) {
      t[g] = static_cast<std::int8_t>((K.exponents[i] * (e % n)) % n);
      g = arith::mul_mod(g, c.generator, c.modulus);
    }
    local.push_back(std::move(t));
  }
  for (u64 a = 1; a < K.conductor; ++a) {
    int j = 0;
    bool unit = true;
    for (std::size_t i = 0; i < local.size() && unit; ++i) {
      const int v = local[i][a % K.factors[i].modulus];
      if (v < 0) unit = false;
      j += v;
    }
    if (unit) out[a] = static_cast<std::int8_t>(j % n);
  }
  return out;
}

unsigned discriminant_exponent(unsigned n, u64 g) {
  if (!arith::is_prime(n)) throw DomainError("discriminant_exponent: n must be prime");
  if (g % n == 0) throw DomainError("discriminant_exponent: g must generate C_n");
  std::vector<bool> seen(n, false);
  unsigned orbits = 0;
  for (unsigned x = 0; x < n; ++x) {
    if (seen[x]) continue;
    ++orbits;
    for (u64 y = x; !seen[y]; y = (y + g) % n) seen[y] = true;
  }
  return n - orbits;
}

SlopeFit count_slope(unsigned n, const std::vector<double>& X_grid) {
  if (X_grid.size() < 4) throw DomainError("count_slope: need at least 4 grid points");
  const auto [lo, hi] = std::minmax_element(X_grid.begin(), X_grid.end());
  if (!(*lo > 0) || std::log10(*hi / *lo) < 3 - 1e-9) throw DomainError("count_slope: grid must span 3 decades");
  SlopeFit fit;
  fit.X = X_grid;
  for (double X : X_grid) fit.counts.push_back(count_cyclic(n, X));
  const bool any_zero = std::find(fit.counts.begin(), fit.counts.end(), u64{0}) != fit.counts.end();
  const bool constant = std::adjacent_find(fit.counts.begin(), fit.counts.end(), std::not_equal_to<>()) == fit.counts.end();
  if (any_zero || constant) {
    fit.degenerate = true;
    return fit;
  }
  const std::size_t m = X_grid.size();
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = std::log(X_grid[i]);
    y[i] = std::log(static_cast<double>(fit.counts[i]));
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < m; ++i) fit.residuals.push_back(y[i] - (fit.intercept + fit.slope * x[i]));
  return fit;
}

}  // namespace psv
