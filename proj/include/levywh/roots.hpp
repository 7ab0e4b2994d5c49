#pragma once

#include <vector>

#include "levywh/models.hpp"

namespace levywh {

/// A zero xi = -i beta of q + psi on the imaginary axis.
struct ImaginaryZero {
  double beta = 0.0;
  int multiplicity = 1;
  cplx q = 0.0;
};

struct ZeroSet {
  std::vector<ImaginaryZero> zeros;  // sorted by beta
  bool complete = true;              // false for sSL / non-SL models
  bool boundary_warning = false;     // a root sits at a strip end within tolerance
};

/// Zeros of q + psi(-i beta) with -beta inside the strip.
ZeroSet find_strip_zeros(const LevyModel& m, double q);

/// As find_strip_zeros, but for HEJD also returns the zeros lying between poles
/// outside the strip (the full zero set on the imaginary axis).
ZeroSet find_axis_zeros(const LevyModel& m, double q);

/// Zeros beta_q^+ (lower half-plane) and beta_q^- (upper) for small complex q,
/// continued from their q -> 0 limits by Newton's method. A zero that does not
/// exist for the model is returned as NaN.
struct BetaPair {
  cplx beta_plus;
  cplx beta_minus;
};
BetaPair beta_asymptotic(const LevyModel& m, cplx q);

/// First y > 0 with level + psi(i dir y) <= 0 (dir = +1 upper, -1 lower). Returns
/// the end of the region of analyticity (strip end or +inf) if there is none.
double axis_level_crossing(const LevyModel& m, double level, int dir);

}  // namespace levywh
