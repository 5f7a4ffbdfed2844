#pragma once

#include <span>
#include <vector>

#include "pslab/chart.hpp"

namespace pslab {

struct TrajectorySample {
  double lambda = 0.0;
  std::vector<double> x;
  std::vector<double> v;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  // Set when integration stopped early at the chart boundary.
  bool hit_boundary = false;
};

// Classical RK4 for x'' + Γ(x', x') = 0 with fixed step lambda_max / steps.
// Throws DomainError for a bad start and std::invalid_argument for steps < 2;
// otherwise returns a (possibly partial) trajectory.
Trajectory geodesic_integrate(const Chart& chart, std::span<const double> start,
                              std::span<const double> velocity, double lambda_max, int steps);

// g(v, v) at a sample, real part.
double speed_squared(const Chart& chart, const TrajectorySample& s);

}  // namespace pslab
