#include "pslab/geodesic.hpp"

#include <optional>
#include <stdexcept>

#include "pslab/curvature.hpp"
#include "pslab/errors.hpp"

namespace pslab {

namespace {

using State = std::vector<double>;  // x then v

std::optional<State> rhs(const Chart& chart, const State& s) {
  const std::size_t n = s.size() / 2;
  std::span<const double> x(s.data(), n);
  if (!chart.contains(x)) return std::nullopt;
  TensorValue gamma;
  try {
    gamma = christoffel(chart, x);
  } catch (const SingularMetricError&) {
    return std::nullopt;
  }
  State out(s.size());
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = s[n + k];
    double a = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a -= gamma(k, i, j).real() * s[n + i] * s[n + j];
    out[n + k] = a;
  }
  return out;
}

State axpy(const State& s, double h, const State& k) {
  State r = s;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += h * k[i];
  return r;
}

}  // namespace

Trajectory geodesic_integrate(const Chart& chart, std::span<const double> start,
                              std::span<const double> velocity, double lambda_max, int steps) {
  if (steps < 2) throw std::invalid_argument("geodesic integration needs at least 2 steps");
  if (velocity.size() != start.size()) throw DimensionError("velocity and start differ in dimension");
  chart.require(start);
  // A singular metric at the start is a domain error too.
  inverse_metric(eval_metric(chart, start));

  const std::size_t n = start.size();
  const double h = lambda_max / steps;
  State s(2 * n);
  std::copy(start.begin(), start.end(), s.begin());
  std::copy(velocity.begin(), velocity.end(), s.begin() + static_cast<std::ptrdiff_t>(n));

  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(steps) + 1);
  auto push = [&](double lam, const State& st) {
    traj.samples.push_back({lam, State(st.begin(), st.begin() + static_cast<std::ptrdiff_t>(n)),
                            State(st.begin() + static_cast<std::ptrdiff_t>(n), st.end())});
  };
  push(0.0, s);
  for (int step = 0; step < steps; ++step) {
    const auto k1 = rhs(chart, s);
    if (!k1) break;
    const auto k2 = rhs(chart, axpy(s, 0.5 * h, *k1));
    if (!k2) break;
    const auto k3 = rhs(chart, axpy(s, 0.5 * h, *k2));
    if (!k3) break;
    const auto k4 = rhs(chart, axpy(s, h, *k3));
    if (!k4) break;
    State next = s;
    for (std::size_t i = 0; i < s.size(); ++i)
      next[i] += h / 6.0 * ((*k1)[i] + 2.0 * (*k2)[i] + 2.0 * (*k3)[i] + (*k4)[i]);
    if (!chart.contains(std::span<const double>(next.data(), n))) break;
    s = std::move(next);
    push(h * (step + 1), s);
  }
  traj.hit_boundary = static_cast<int>(traj.samples.size()) < steps + 1;
  return traj;
}

double speed_squared(const Chart& chart, const TrajectorySample& s) {
  const TensorValue g = eval_metric(chart, s.x);
  double q = 0.0;
  for (int i = 0; i < chart.dim; ++i)
    for (int j = 0; j < chart.dim; ++j) q += g(i, j).real() * s.v[i] * s.v[j];
  return q;
}

}  // namespace pslab
