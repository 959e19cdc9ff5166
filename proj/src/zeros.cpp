#include "psv/zeros.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

#include "psv/errors.hpp"
#include "psv/lfunc.hpp"

namespace psv {

namespace {

constexpr double kMaxArgStep = std::numbers::pi / 4;
constexpr double kStripStep = 0.05;  // longest contour step with Re s <= 1
constexpr std::array<double, 4> kSplitFractions = {0.5123, 0.4571, 0.5581, 0.4217};

struct Sample {
  double u;
  cplx v;
  double phase;  // accumulated argument from the start of the edge
};

double trace_edge(const std::function<cplx(cplx)>& F, cplx a, cplx b, double min_abs,
                  std::vector<Sample>* samples = nullptr) {
  const double len = std::abs(b - a);
  if (len == 0) return 0;
  double u = 0;
  double h = std::min(1.0, 0.05 / len);
  const double h_min = 1e-13 / len;
  cplx v0 = F(a);
  if (std::abs(v0) < min_abs) throw ContourError("contour passes through a zero");
  double total = 0;
  if (samples) samples->push_back({0.0, v0, 0.0});
  while (u < 1.0) {
    double hh = std::min(h, 1.0 - u);
    // inside the critical strip a long step can pass two zeros near the
    // edge and alias a full turn to nothing, so steps are capped there
    const double sigma = std::min((a + u * (b - a)).real(), (a + (u + hh) * (b - a)).real());
    const double cap = sigma > 1.0 ? std::max(kStripStep, 0.5 * (sigma - 1.0)) : kStripStep;
    hh = std::min(hh, cap / len);
    const cplx vm = F(a + (u + hh / 2) * (b - a));
    const cplx v1 = F(a + (u + hh) * (b - a));
    if (std::abs(vm) < min_abs || std::abs(v1) < min_abs) throw ContourError("contour passes through a zero");
    const double d1 = std::arg(vm / v0);
    const double d2 = std::arg(v1 / vm);
    if (std::abs(d1) < kMaxArgStep && std::abs(d2) < kMaxArgStep) {
      total += d1 + d2;
      u += hh;
      v0 = v1;
      if (samples) samples->push_back({std::min(u, 1.0), v1, total});
      h = hh * 1.6;
    } else {
      h = hh / 2;
      if (h < h_min) throw ContourError("argument step control failed near the contour");
    }
  }
  return total;
}

bool pole_inside(const DirichletCharacter& chi, const Box& b) { return chi.is_principal() && b.contains(cplx(1.0, 0.0)); }

// Number of zeros of L(s, chi) inside b.
int zeros_in_box(const DirichletCharacter& chi, const Box& b, double tol) {
  auto F = [&](cplx s) { return l_value(chi, s, tol); };
  return winding_number(F, b, 100 * tol) + (pole_inside(chi, b) ? 1 : 0);
}

cplx newton(const DirichletCharacter& chi, cplx z, double tol) {
  constexpr double h = 1e-5;
  for (int it = 0; it < 60; ++it) {
    const cplx f = l_value(chi, z, tol);
    const cplx df = (l_value(chi, z + h, tol) - l_value(chi, z - h, tol)) / (2 * h);
    if (df == cplx(0, 0)) break;
    const cplx step = f / df;
    z -= step;
    if (std::abs(step) < 1e-12) break;
  }
  return z;
}

// A vertical line traced once, so that the argument change between any two
// heights on it costs one evaluation per height instead of a new trace.
class TracedLine {
 public:
  TracedLine(std::function<cplx(cplx)> F, double sigma, double t0, double t1, double min_abs)
      : F_(std::move(F)), sigma_(sigma), t0_(t0), t1_(t1), min_abs_(min_abs) {
    trace_edge(F_, {sigma, t0}, {sigma, t1}, min_abs, &samples_);
  }

  double sigma() const { return sigma_; }

  // Argument change from height ta to tb, or nothing when the sample grid
  // cannot place one of the heights reliably.
  std::optional<double> increment(double ta, double tb) {
    const auto pa = phase(ta), pb = phase(tb);
    if (!pa || !pb) return std::nullopt;
    return *pb - *pa;
  }

 private:
  std::optional<double> phase(double t) {
    if (const auto it = cache_.find(t); it != cache_.end()) return it->second;
    const double u = (t - t0_) / (t1_ - t0_);
    if (!(u >= 0.0 && u <= 1.0)) return std::nullopt;
    auto it = std::upper_bound(samples_.begin(), samples_.end(), u, [](double x, const Sample& p) { return x < p.u; });
    const Sample& lo = *std::prev(it);
    std::optional<double> res;
    if (lo.u == u || it == samples_.end()) {
      res = lo.phase;
    } else {
      const cplx v = F_(cplx(sigma_, t));
      const double d1 = std::arg(v / lo.v), d2 = std::arg(it->v / v);
      // the split of the recorded step must reproduce it
      if (std::abs(v) >= min_abs_ && std::abs(d1) < kMaxArgStep && std::abs(d2) < kMaxArgStep &&
          std::abs(d1 + d2 - (it->phase - lo.phase)) < 1e-9)
        res = lo.phase + d1;
    }
    cache_.emplace(t, res);
    return res;
  }

  std::function<cplx(cplx)> F_;
  double sigma_, t0_, t1_, min_abs_;
  std::vector<Sample> samples_;
  std::map<double, std::optional<double>> cache_;
};

struct Locator {
  const DirichletCharacter& chi;
  const ZeroSearchOptions& opt;
  TracedLine left, right;
  std::vector<Zero> out;
  std::map<std::array<double, 4>, double> edges;  // traced segments, by endpoints

  double edge(cplx a, cplx b) {
    if (const auto it = edges.find({a.real(), a.imag(), b.real(), b.imag()}); it != edges.end()) return it->second;
    if (const auto it = edges.find({b.real(), b.imag(), a.real(), a.imag()}); it != edges.end()) return -it->second;
    const double d = trace_edge(eval_fn(), a, b, 100 * opt.tol);
    edges.emplace(std::array<double, 4>{a.real(), a.imag(), b.real(), b.imag()}, d);
    return d;
  }

  double vertical(TracedLine& line, double ta, double tb) {
    if (const auto d = line.increment(ta, tb)) return *d;
    return edge({line.sigma(), ta}, {line.sigma(), tb});
  }

  std::function<cplx(cplx)> eval_fn() const {
    return [this](cplx s) { return l_value(chi, s, opt.tol); };
  }

  // zeros_in_box, with the two long vertical edges read off the traced lines
  int count(const Box& b) {
    const cplx c00(b.s0, b.t0), c10(b.s1, b.t0), c11(b.s1, b.t1), c01(b.s0, b.t1);
    double total = edge(c00, c10) + edge(c11, c01);
    total += b.s1 == right.sigma() ? vertical(right, b.t0, b.t1) : edge(c10, c11);
    total += b.s0 == left.sigma() ? vertical(left, b.t1, b.t0) : edge(c01, c00);
    const double turns = total / (2 * std::numbers::pi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 0.05) throw ContourError("winding number is not close to an integer");
    return static_cast<int>(rounded) + (pole_inside(chi, b) ? 1 : 0);
  }

  bool try_certify(const Box& b) {
    const cplx c((b.s0 + b.s1) / 2, (b.t0 + b.t1) / 2);
    cplx z;
    try {
      z = newton(chi, c, std::min(opt.tol, 1e-11));
    } catch (const Error&) {
      return false;  // Newton left the region where L can be evaluated to tolerance
    }
    const double slack = 1e-6;
    if (!(z.real() > b.s0 - slack && z.real() < b.s1 + slack && z.imag() > b.t0 - slack && z.imag() < b.t1 + slack))
      return false;
    const double w = opt.certify_half_width;
    const Box tiny{z.real() - w, z.real() + w, z.imag() - w, z.imag() + w};
    // tightest L tolerance the modulus and height allow
    int k = -1;
    for (double tol : {1e-13, 1e-12, 1e-11}) {
      try {
        k = zeros_in_box(chi, tiny, tol);
        break;
      } catch (const ContourError&) {
        return false;
      } catch (const PrecisionError&) {
      }
    }
    if (k != 1) return false;
    out.push_back({z.real(), z.imag(), chi.label(), w * std::numbers::sqrt2});
    return true;
  }

  void solve(const Box& b, int k, int depth) {
    if (k == 0) return;
    if (k < 0) throw PrecisionError("locate_zeros: negative zero count in a sub-box");
    if (depth > 90) throw PrecisionError("locate_zeros: subdivision depth exhausted (clustered zeros?)");
    const double w = b.s1 - b.s0, ht = b.t1 - b.t0;
    if (k == 1 && try_certify(b)) return;
    for (double frac : kSplitFractions) {
      Box lo = b, hi = b;
      if (ht >= w) {
        lo.t1 = hi.t0 = b.t0 + frac * ht;
      } else {
        lo.s1 = hi.s0 = b.s0 + frac * w;
      }
      // a split whose counts do not add up (a contour failure on one
      // side) is discarded for the next split line
      int k_lo = 0, k_hi = 0;
      try {
        k_lo = count(lo);
        k_hi = count(hi);
      } catch (const ContourError&) {
        continue;
      }
      if (k_lo < 0 || k_hi < 0 || k_lo + k_hi != k) continue;
      solve(lo, k_lo, depth + 1);
      solve(hi, k_hi, depth + 1);
      return;
    }
    throw ContourError("locate_zeros: no split line gives consistent counts");
  }
};

}  // namespace

int winding_number(const std::function<cplx(cplx)>& F, const Box& b, double min_abs) {
  const cplx c00(b.s0, b.t0), c10(b.s1, b.t0), c11(b.s1, b.t1), c01(b.s0, b.t1);
  const double total = trace_edge(F, c00, c10, min_abs) + trace_edge(F, c10, c11, min_abs) +
                       trace_edge(F, c11, c01, min_abs) + trace_edge(F, c01, c00, min_abs);
  const double turns = total / (2 * std::numbers::pi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 0.05) throw ContourError("winding number is not close to an integer");
  return static_cast<int>(rounded);
}

double contour_left_edge(double alpha) { return alpha <= 0.5 + 1e-12 ? alpha - 1e-3 : alpha; }

ZeroCount count_zeros_detailed(const DirichletCharacter& chi, const Rectangle& rect, const ZeroSearchOptions& opt) {
  if (!(rect.alpha >= 0.5 && rect.alpha < 1.0)) throw DomainError("count_zeros: alpha must lie in [1/2, 1)");
  if (!(rect.T >= 0.0)) throw DomainError("count_zeros: T must be nonnegative");
  ZeroCount res;
  res.T_used = rect.T;
  if (rect.T == 0.0) return res;
  const double s0 = contour_left_edge(rect.alpha), s1 = 2.0;
  const double c = opt.clearance;
  for (;; ++res.nudges) {
    if (res.nudges > opt.max_nudges) throw ContourError("count_zeros: could not clear zeros from Im s = +-T");
    const double T = rect.T + res.nudges * opt.nudge_step;
    bool clear = true;
    for (double sign : {1.0, -1.0}) {
      const Box band{s0, s1, sign * T - c, sign * T + c};
      try {
        if (zeros_in_box(chi, band, opt.tol) != 0) clear = false;
      } catch (const ContourError&) {
        clear = false;
      }
    }
    if (!clear) continue;
    res.T_used = T;
    res.count = zeros_in_box(chi, Box{s0, s1, -T, T}, opt.tol);
    return res;
  }
}

int count_zeros_rectangle(const DirichletCharacter& chi, const Rectangle& rect) {
  return count_zeros_detailed(chi, rect).count;
}

std::vector<Zero> locate_zeros(const DirichletCharacter& chi, const Rectangle& rect, const ZeroSearchOptions& opt) {
  const ZeroCount n = count_zeros_detailed(chi, rect, opt);
  if (n.count == 0) return {};
  const Box root{contour_left_edge(rect.alpha), 2.0, -n.T_used, n.T_used};
  auto F = [&](cplx s) { return l_value(chi, s, opt.tol); };
  Locator loc{chi, opt, {F, root.s0, root.t0, root.t1, 100 * opt.tol}, {F, root.s1, root.t0, root.t1, 100 * opt.tol}, {}};
  loc.solve(root, n.count, 0);
  if (static_cast<int>(loc.out.size()) != n.count) throw PrecisionError("locate_zeros: located zeros disagree with count");
  std::sort(loc.out.begin(), loc.out.end(), [](const Zero& a, const Zero& b) {
    return a.gamma != b.gamma ? a.gamma < b.gamma : a.beta < b.beta;
  });
  return loc.out;
}

}  // namespace psv
