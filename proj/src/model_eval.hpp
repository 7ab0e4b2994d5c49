#pragma once

#include "levywh/models.hpp"

namespace levywh::detail {

struct PsiPair {
  cplx value;
  cplx deriv;
};

/// Exponent and its derivative. When Re xi == 0 and `bank` is +1/-1 the value is the
/// limit from Re xi = +0 / -0; bank 0 means xi is off the cuts.
PsiPair psi_eval(const LevyModel& m, cplx xi, int bank);

}  // namespace levywh::detail
