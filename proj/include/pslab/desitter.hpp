#pragma once

// Robertson-Walker charts, redshift, the steady-state chart of de Sitter
// space and its 2D embedding.

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pslab/chart.hpp"
#include "pslab/jet.hpp"

namespace pslab {

struct ScaleHistory {
  // R(t) on jets so that H = d ln R / dt comes out exactly.
  std::function<Jet(const Jet&)> R;
  int k = 0;
  double t_min = -INFINITY;
  double t_max = INFINITY;
  // Optional user-supplied Hubble rate, checked against the AD value.
  std::function<double(double)> H_user;

  double scale(double t) const;
  double hubble(double t) const;
  bool contains(double t) const { return t >= t_min && t <= t_max; }
};

ScaleHistory exponential_history(double H);
// R(t) = t^p on t > 0.
ScaleHistory power_law_history(double p);

Chart rw_chart(const ScaleHistory& hist);

// Integral of dt / R(t).
double comoving_distance(const ScaleHistory& hist, double t0, double t1);
// nu0 / nu1 = R(t1) / R(t0)
double redshift(const ScaleHistory& hist, double t0, double t1);
// exp of the integral of H dt
double redshift_from_hubble(const ScaleHistory& hist, double t0, double t1);
// Largest |H_AD - H_user| over the sample times; nullopt without H_user.
std::optional<double> hubble_mismatch(const ScaleHistory& hist, std::span<const double> times);

// H^-2 (dtbar^2 - e^{2 tbar} (dxbar^2 + ...)), dim 4 or the 2D reduction.
Chart steady_state_chart(double H, int dim = 4);

// eta + zeta = e^t, xi = x e^t, eta - zeta = x^2 e^t - e^-t
template <class T>
std::array<T, 3> ds2_embed(const T& tbar, const T& xbar) {
  using std::exp;
  const T et = exp(tbar);
  const T em = exp(-1.0 * tbar);
  const T sum = et;
  const T diff = xbar * xbar * et - em;
  return {xbar * et, 0.5 * (sum + diff), 0.5 * (sum - diff)};
}

// eta^2 - xi^2 - zeta^2 + 1
double ds2_residual(const std::array<double, 3>& p);

struct LambdaFit {
  double c = 0.0;
  double residual = 0.0;
};

// Least-squares c in R_mn = c g_mn over the points, and the largest
// componentwise |R_mn - c g_mn|.
LambdaFit verify_einstein_lambda(const Chart& chart, const std::vector<std::vector<double>>& grid);

}  // namespace pslab
