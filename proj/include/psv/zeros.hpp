#pragma once

// Zero counting and location for L(s, chi) by the argument principle.
//
// The counting contour for M(alpha, T) runs along Re s = 2 on the right
// (no zeros for Re s > 1) and along Re s = alpha on the left, moved to
// alpha - 1e-3 when alpha = 1/2 so zeros on the critical line are counted.
// The pole of a principal character at s = 1 is added back.

#include <functional>
#include <string>
#include <vector>

#include "psv/characters.hpp"

namespace psv {

struct Rectangle {
  double alpha = 0.5;
  double T = 0.0;
};

struct Zero {
  double beta = 0;
  double gamma = 0;
  std::string character_label;
  double enclosure = 0;  // the zero lies within this distance of beta + i gamma
};

/// Axis-parallel box [s0, s1] x [t0, t1] in the complex plane.
struct Box {
  double s0, s1, t0, t1;
  bool contains(cplx z) const { return z.real() > s0 && z.real() < s1 && z.imag() > t0 && z.imag() < t1; }
};

struct ZeroSearchOptions {
  double tol = 1e-10;          // L evaluation tolerance on the counting contour
  double nudge_step = 1e-3;    // T is raised by multiples of this
  double clearance = 1e-4;     // required gap between zeros and Im s = +-T
  int max_nudges = 50;
  double certify_half_width = 5e-9;
};

struct ZeroCount {
  int count = 0;
  double T_used = 0;  // after nudging
  int nudges = 0;
};

/// Winding number of F around the boundary of b (counter-clockwise). The
/// arg increment between accepted samples is kept below pi/4 with a
/// midpoint check; |F| < min_abs anywhere on the path raises ContourError.
int winding_number(const std::function<cplx(cplx)>& F, const Box& b, double min_abs);

/// Left edge of the counting contour for a given alpha.
double contour_left_edge(double alpha);

ZeroCount count_zeros_detailed(const DirichletCharacter& chi, const Rectangle& rect,
                               const ZeroSearchOptions& opt = {});
/// N(chi; alpha, T), zeros with alpha <= beta <= 1 and |gamma| <= T, with multiplicity.
int count_zeros_rectangle(const DirichletCharacter& chi, const Rectangle& rect);

/// All zeros in the rectangle, each certified by a winding number of 1 on
/// a box of half-width certify_half_width; sorted by (gamma, beta).
std::vector<Zero> locate_zeros(const DirichletCharacter& chi, const Rectangle& rect,
                               const ZeroSearchOptions& opt = {});

}  // namespace psv
