#include "psv/characters.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "psv/arith.hpp"
#include "psv/errors.hpp"

namespace psv {

namespace {

constexpr std::uint32_t kNoLog = UINT32_MAX;
constexpr std::size_t kMaxFactors = 20;

unsigned log2_exact(u64 v) {
  unsigned r = 0;
  while (v > 1) {
    v >>= 1;
    ++r;
  }
  return r;
}

u64 factor_character_order(const CyclicFactor& f, u64 e) { return f.order / std::gcd(e % f.order, f.order); }

}  // namespace

UnitGroup::UnitGroup(u64 q, bool with_tables) : q_(q) {
  if (q == 0) throw RangeError("UnitGroup: modulus must be positive");
  for (const auto& pp : arith::factorize(q).factors) {
    const u64 pk = arith::pow_checked(pp.prime, pp.exponent);
    if (pp.prime == 2) {
      if (pp.exponent == 1) continue;
      factors_.push_back({2, pp.exponent, pk, 2, pk - 1, CyclicFactor::Kind::two_minus_one});
      if (pp.exponent >= 3) factors_.push_back({2, pp.exponent, pk, pk / 4, 5, CyclicFactor::Kind::two_five});
    } else {
      factors_.push_back({pp.prime, pp.exponent, pk, pk / pp.prime * (pp.prime - 1),
                          arith::primitive_root_prime_power(pp.prime, pp.exponent), CyclicFactor::Kind::odd});
    }
  }
  if (factors_.size() > kMaxFactors) throw RangeError("UnitGroup: too many cyclic factors");
  for (const auto& f : factors_) size_ *= f.order;
  if (!with_tables) return;

  dlog_.resize(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    auto& table = dlog_[i];
    table.assign(f.modulus, kNoLog);
    switch (f.kind) {
      case CyclicFactor::Kind::odd: {
        u64 x = 1;
        for (u64 j = 0; j < f.order; ++j) {
          table[x] = static_cast<std::uint32_t>(j);
          x = arith::mul_mod(x, f.generator, f.modulus);
        }
        break;
      }
      case CyclicFactor::Kind::two_minus_one:
      case CyclicFactor::Kind::two_five: {
        // n = (-1)^a 5^b mod 2^k; for k = 2 only the sign part exists.
        const u64 order5 = f.power >= 3 ? f.modulus / 4 : 1;
        u64 x = 1;
        for (u64 b = 0; b < order5; ++b) {
          const bool sign = f.kind == CyclicFactor::Kind::two_minus_one;
          table[x] = sign ? 0 : static_cast<std::uint32_t>(b);
          table[f.modulus - x] = sign ? 1 : static_cast<std::uint32_t>(b);
          x = arith::mul_mod(x, 5, f.modulus);
        }
        break;
      }
    }
  }
}

bool UnitGroup::log(u64 n, std::span<u64> out) const {
  if (!has_tables()) throw DomainError("UnitGroup: built without discrete-log tables");
  if (q_ % 2 == 0 && n % 2 == 0) return false;  // 2 || q leaves no factor to reject even n
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::uint32_t v = dlog_[i][n % factors_[i].modulus];
    if (v == kNoLog) return false;
    out[i] = v;
  }
  return true;
}

std::optional<std::vector<u64>> UnitGroup::log(u64 n) const {
  std::vector<u64> out(factors_.size());
  if (!log(n, out)) return std::nullopt;
  return out;
}

unsigned factor_conductor_power(const CyclicFactor& f, u64 e) {
  const u64 o = factor_character_order(f, e);
  if (o == 1) return 0;
  switch (f.kind) {
    case CyclicFactor::Kind::odd: {
      unsigned a = 0;
      u64 rest = o;
      while (rest % f.prime == 0) {
        rest /= f.prime;
        ++a;
      }
      return a + 1;
    }
    case CyclicFactor::Kind::two_minus_one:
      return 2;
    case CyclicFactor::Kind::two_five:
      return log2_exact(o) + 2;
  }
  return 0;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<u64> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  const auto factors = group_->factors();
  if (exponents_.size() != factors.size()) throw DomainError("DirichletCharacter: exponent vector size mismatch");
  order_ = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    exponents_[i] %= factors[i].order;
    order_ = std::lcm(order_, factor_character_order(factors[i], exponents_[i]));
  }
  weights_.resize(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const u64 g = std::gcd(exponents_[i], factors[i].order);
    const u64 o = factors[i].order / g;
    weights_[i] = (exponents_[i] / g) % o * (order_ / o) % order_;
  }
  // conductor: per prime, the largest conductor power among its factors
  conductor_ = 1;
  for (std::size_t i = 0; i < factors.size();) {
    unsigned c = 0;
    std::size_t j = i;
    for (; j < factors.size() && factors[j].prime == factors[i].prime; ++j)
      c = std::max(c, factor_conductor_power(factors[j], exponents_[j]));
    conductor_ *= arith::pow_checked(factors[i].prime, c);
    i = j;
  }
  roots_.resize(order_);
  for (u64 k = 0; k < order_; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order_);
    roots_[k] = (4 * k == order_)       ? cplx(0, 1)
                : (2 * k == order_)     ? cplx(-1, 0)
                : (4 * k == 3 * order_) ? cplx(0, -1)
                                        : std::polar(1.0, theta);
  }
}

std::optional<u64> DirichletCharacter::index(i64 n) const {
  const u64 q = modulus();
  const i64 qs = static_cast<i64>(q);
  const u64 r = static_cast<u64>(((n % qs) + qs) % qs);
  if (q == 1) return 0;
  std::array<u64, kMaxFactors> logs{};
  const std::size_t m = exponents_.size();
  if (!group_->log(r, std::span<u64>(logs.data(), m))) return std::nullopt;
  u64 k = 0;
  for (std::size_t i = 0; i < m; ++i) k = (k + arith::mul_mod(weights_[i], logs[i], order_)) % order_;
  return k;
}

cplx DirichletCharacter::operator()(i64 n) const {
  const auto k = index(n);
  return k ? roots_[*k] : cplx(0, 0);
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<u64> e(exponents_.size());
  const auto factors = group_->factors();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = (factors[i].order - exponents_[i]) % factors[i].order;
  return DirichletCharacter(group_, std::move(e));
}

DirichletCharacter DirichletCharacter::pow(u64 k) const {
  std::vector<u64> e(exponents_.size());
  const auto factors = group_->factors();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = arith::mul_mod(exponents_[i], k, factors[i].order);
  return DirichletCharacter(group_, std::move(e));
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& other) const {
  if (other.modulus() != modulus()) throw DomainError("DirichletCharacter: product needs a common modulus");
  std::vector<u64> e(exponents_.size());
  const auto factors = group_->factors();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = (exponents_[i] + other.exponents_[i]) % factors[i].order;
  return DirichletCharacter(group_, std::move(e));
}

std::string DirichletCharacter::label() const {
  std::string s = std::to_string(modulus());
  for (u64 e : exponents_) s += "." + std::to_string(e);
  return s;
}

std::vector<DirichletCharacter> character_group(u64 q) {
  if (q == 0 || q > 10'000) throw RangeError("character_group: q must lie in [1, 10^4]");
  auto group = std::make_shared<const UnitGroup>(q);
  const auto factors = group->factors();
  std::vector<DirichletCharacter> out;
  out.reserve(group->size());
  std::vector<u64> e(factors.size(), 0);
  while (true) {
    out.emplace_back(group, e);
    // odometer, last factor fastest: lexicographic order
    std::size_t i = e.size();
    while (i > 0) {
      --i;
      if (++e[i] < factors[i].order) break;
      e[i] = 0;
      if (i == 0) return out;
    }
    if (e.empty()) return out;
  }
}

std::vector<DirichletCharacter> primitive_characters(u64 q) {
  std::vector<DirichletCharacter> out;
  for (auto& chi : character_group(q))
    if (chi.is_primitive()) out.push_back(std::move(chi));
  return out;
}

DirichletCharacter principal_character(u64 q) {
  auto group = std::make_shared<const UnitGroup>(q);
  return DirichletCharacter(group, std::vector<u64>(group->factors().size(), 0));
}

cplx evaluate(const DirichletCharacter& chi, i64 n) { return chi(n); }

u64 conductor(const DirichletCharacter& chi) { return chi.conductor(); }

cplx gauss_sum(const DirichletCharacter& chi) {
  const u64 q = chi.modulus();
  cplx acc = 0;
  for (u64 a = 1; a <= q; ++a) {
    const auto k = chi.index(static_cast<i64>(a));
    if (!k) continue;
    acc += chi.root(*k) * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(q));
  }
  return acc;
}

CharacterFamily CharacterFamily::primitive(u64 q) {
  CharacterFamily fam;
  fam.q = q;
  fam.members = primitive_characters(q);
  return fam;
}

bool CharacterFamily::satisfies_invariants() const {
  const double qd = static_cast<double>(q);
  for (const auto& chi : members)
    if (static_cast<double>(chi.conductor()) > std::pow(qd, A) * (1 + 1e-12)) return false;
  return static_cast<double>(members.size()) <= std::pow(qd, d) * (1 + 1e-12);
}

}  // namespace psv
