#pragma once

#include <string>
#include <vector>

#include "levywh/models.hpp"

namespace levywh {

struct PropertyCheck {
  std::string name;
  bool passed;
  bool skipped;  // property does not apply to this model
  double measure;  // worst residual seen (or NaN when skipped)
  double threshold;
  std::string detail;
};

/// Invariant suite for one model: exponent identities, factorization identity,
/// representation agreement, survival-function shape and the unit integral.
/// Module errors are caught and reported as failures of the property at hand.
std::vector<PropertyCheck> validate_model(const LevyModel& m);

}  // namespace levywh
