#pragma once

#include <vector>

#include "levywh/models.hpp"

namespace levywh {

/// Plus refers to the measure of positive jumps (read off the lower cut),
/// Minus to negative jumps (upper cut).
enum class MeasureSide { Plus, Minus };

struct SLAtom {
  double location;
  double mass;
};

struct SLDensity {
  MeasureSide side;
  double support_start;
  std::vector<SLAtom> atoms;
  bool is_signed;
};

SLDensity sl_info(const LevyModel& m, MeasureSide side);

/// g_+(t) = Im psi(-it - 0) / pi or g_-(t) = Im psi(it + 0) / pi.
double sl_density(const LevyModel& m, MeasureSide side, double t);

/// Lévy density at x != 0 recovered from the measure by a Laplace integral.
double levy_density_reconstruct(const LevyModel& m, double x, double tol = 1e-12);

/// Measure of (u, v]; includes atoms.
double sl_measure_interval(const LevyModel& m, MeasureSide side, double u, double v,
                           double tol = 1e-12);

}  // namespace levywh
