#pragma once

// Extremal Reissner-Nordstrom, its near-horizon limit, the three embeddings
// of the AdS2 factor into xi^2 - eta^2 + zeta^2 = M^2, the Penrose chart and
// the dyonic and Jackiw-Teitelboim dilaton solutions.

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

#include "pslab/chart.hpp"
#include "pslab/errors.hpp"
#include "pslab/jet.hpp"
#include "pslab/tensor.hpp"

namespace pslab {

// (t, r', theta, phi)
Chart rn_extremal_chart(double M);
// (t, r, theta, phi): M^2 (r^2/M^4 dt^2 - dr^2/r^2 - dOmega^2)
Chart near_horizon_chart(double M);
// (t, r, theta, phi): (r^2/M^2 - 1) dt^2 - dr^2/(r^2/M^2 - 1) - M^2 dOmega^2
Chart br_minus_chart(double M);
// (t, r, theta, phi): (1 + r^2/M^2) dt^2 - dr^2/(1 + r^2/M^2) - M^2 dOmega^2
Chart br_plus_chart(double M);
// (t, r) block of one of the above.
Chart horizon_block_chart(std::string_view kind, double M);

enum class EmbeddingKind { BR0, BRplus, BRminus };
std::string_view to_string(EmbeddingKind k);
EmbeddingKind parse_embedding_kind(std::string_view s);

// Empty when (r, t) is admissible, otherwise the violated restriction.
std::string embedding_violation(EmbeddingKind kind, double M, double r, double t);

template <class T>
std::array<T, 3> embed(EmbeddingKind kind, double M, const T& r, const T& t) {
  using std::cos;
  using std::cosh;
  using std::log;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  if constexpr (std::is_same_v<T, double>) {
    const std::string why = embedding_violation(kind, M, r, t);
    if (!why.empty()) throw DomainError(why);
  } else {
    const std::string why = embedding_violation(kind, M, r.real(), t.real());
    if (!why.empty()) throw DomainError(why);
  }
  switch (kind) {
    case EmbeddingKind::BR0: {
      const T rt = r * t / M;
      const T amp = sqrt(rt * rt - M * M);
      const T arg = 0.5 * log(t * t / (M * M) - (M * M) / (r * r));
      return {amp * sinh(arg), amp * cosh(arg), -1.0 * rt};
    }
    case EmbeddingKind::BRplus: {
      const T amp = sqrt(M * M + r * r);
      return {amp * sin(t / M), r, amp * cos(t / M)};
    }
    case EmbeddingKind::BRminus:
      break;
  }
  const T amp = sqrt(r * r - M * M);
  return {amp * sinh(t / M), amp * cosh(t / M), r};
}

// xi^2 - eta^2 + zeta^2 - M^2
double horizon_quadric_residual(const std::array<double, 3>& p, double M);

// (t, r) metric block the embedding reproduces, at (r, t).
TensorValue embedding_block_metric(EmbeddingKind kind, double M, double r, double t);

struct PenrosePoint {
  double u = 0.0;
  double v = 0.0;
};

// x = M tan((u - v)/2), t = M (u + v)/2, with t taken modulo 2 pi M.
PenrosePoint penrose_map(double x, double t, double M);
std::array<double, 2> penrose_inverse(double u, double v, double M);  // (x, t)
// C(u, v) = -(1 + tan^2((u - v)/2))
double conformal_factor(double u, double v);

enum class Region { I, II, III, Boundary };
std::string_view to_string(Region r);
// Region I is the image of the BR- chart, II the rest of the BR0 image, III
// the remainder of BR+. Boundary marks the null lines eta = +-xi.
Region region_classify(double u, double v, double M, double tol = 1e-9);
// Ambient point of (u, v) through the BR+ embedding.
std::array<double, 3> penrose_ambient(double u, double v, double M);

struct DyonicSolution {
  double R_plus = 1.0;
  double R_minus = 0.0;
  double phi0 = 0.0;
  double q = 0.0;  // q^2 = R+ R-
  double M = 0.0;  // 2M = R+ + 3/2 R-

  Chart chart() const;  // (t, r, theta, phi), r > R+
  TensorValue metric(double t, double r, double theta, double phi) const;
  double dilaton(double r) const;  // phi(r), including phi0
  // F_mn = (2q / sqrt3 r^2) e_mnrs u^r v^s with u, v unit along theta, phi.
  TensorValue field(double t, double r, double theta, double phi) const;
  double eta_of_r(double r) const;  // arcsinh sqrt((r - R+)/(R+ - R-))
};
DyonicSolution dyonic_solution(double R_plus, double R_minus, double phi0 = 0.0);
// (t, eta, theta, phi): q^2 (4 sinh^2 eta dt^2 - 4 deta^2 - dOmega^2)
Chart dyonic_extremal_chart(double q);

struct JTSolution {
  double Lambda = 1.0;
  double a2 = 1.0;
  double phi0 = 0.0;

  Chart chart() const;  // (t, r) on Lambda r^2 > a^2, r > 0
  double dilaton(double r) const;
};
JTSolution jt_solution(double Lambda, double a2, double phi0 = 0.0);

}  // namespace pslab
