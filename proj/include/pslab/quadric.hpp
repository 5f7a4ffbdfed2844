#pragma once

// Fundamental quadrics eps_xi xi^2 + eps_eta eta^2 + eps_zeta zeta^2 = eps R^2
// in flat 3-space d(sigma)^2 = eps_xi dxi^2 + eps_eta deta^2 + eps_zeta dzeta^2,
// with their intrinsic charts, the Beltrami disk and the tractrix.

#include <Eigen/Dense>
#include <array>
#include <string>
#include <string_view>

#include "pslab/chart.hpp"
#include "pslab/errors.hpp"
#include "pslab/geodesic.hpp"
#include "pslab/jet.hpp"

namespace pslab {

struct QuadricSpec {
  int eps_xi = 1;
  int eps_eta = 1;
  int eps_zeta = 1;
  int eps = 1;
  double R = 1.0;

  // Parses "--++" style sign strings (ambient signs then eps).
  static QuadricSpec parse(std::string_view signs, double R);
  std::string signs() const;
  std::array<int, 3> ambient() const { return {eps_xi, eps_eta, eps_zeta}; }
  // Throws ForbiddenQuadricError or DomainError.
  void validate() const;
};

enum class Topology { Sphere, OneSheet, TwoSheet };
std::string_view to_string(Topology t);

struct QuadricClass {
  Topology topology = Topology::Sphere;
  std::array<int, 2> induced_signature{1, 1};
  double K = 0.0;
};

QuadricClass classify(const QuadricSpec& q);

// The six sign patterns used for the classification figure, R = 1.
std::array<QuadricSpec, 6> admissible_patterns(double R = 1.0);

// (theta, phi) for spheres, (chi, phi) otherwise.
Chart hyperbolic_chart(const QuadricSpec& q);

namespace detail {

// Axis with the odd sign (or 2 for the sphere) and the majority sign.
struct Axes {
  int odd = 2;
  int a = 0;
  int b = 1;
  int majority = 1;
};
Axes axes_of(const QuadricSpec& q);

}  // namespace detail

// Embedding of the intrinsic chart; two-sheet charts use the sheet with the
// odd coordinate positive.
template <class T>
std::array<T, 3> embed_point(const QuadricSpec& q, const T& c0, const T& c1) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  const auto ax = detail::axes_of(q);
  const QuadricClass cls = classify(q);
  std::array<T, 3> p{};
  const double R = q.R;
  switch (cls.topology) {
    case Topology::Sphere:
      p[ax.a] = R * sin(c0) * cos(c1);
      p[ax.b] = R * sin(c0) * sin(c1);
      p[ax.odd] = R * cos(c0);
      break;
    case Topology::OneSheet:
      p[ax.a] = R * cosh(c0) * cos(c1);
      p[ax.b] = R * cosh(c0) * sin(c1);
      p[ax.odd] = R * sinh(c0);
      break;
    case Topology::TwoSheet:
      p[ax.a] = R * sinh(c0) * cos(c1);
      p[ax.b] = R * sinh(c0) * sin(c1);
      p[ax.odd] = R * cosh(c0);
      break;
  }
  return p;
}

// Inverse of embed_point for points on the quadric.
template <class T>
std::array<T, 2> chart_point(const QuadricSpec& q, const std::array<T, 3>& p) {
  using std::asinh;
  using std::atan2;
  using std::sqrt;
  const auto ax = detail::axes_of(q);
  const QuadricClass cls = classify(q);
  const T rho = sqrt(p[ax.a] * p[ax.a] + p[ax.b] * p[ax.b]);
  const T phi = atan2(p[ax.b], p[ax.a]);
  switch (cls.topology) {
    case Topology::Sphere:
      return {atan2(rho, p[ax.odd]), phi};
    case Topology::OneSheet:
      return {asinh(p[ax.odd] / q.R), phi};
    case Topology::TwoSheet:
      break;
  }
  return {asinh(rho / q.R), phi};
}

// eps_xi xi^2 + eps_eta eta^2 + eps_zeta zeta^2 - eps R^2
double quadric_residual(const QuadricSpec& q, const std::array<double, 3>& p);

// Antipodal identification partner (-xi, -eta, -zeta).
std::array<double, 3> antipode(const std::array<double, 3>& p);

// ds^2 = (eps_xi du^2 + eps_eta dv^2) / (1 + eps (eps_xi u^2 + eps_eta v^2) / 4R^2)^2
Chart conformally_flat_chart(const QuadricSpec& q);

template <class T>
std::array<T, 3> conformal_embed(const QuadricSpec& q, const T& u, const T& v) {
  const T s = double(q.eps_xi) * u * u + double(q.eps_eta) * v * v;
  const T D = 1.0 + (q.eps / (4.0 * q.R * q.R)) * s;
  const T zeta = q.R * (1.0 - (q.eps / (4.0 * q.R * q.R)) * s) / D;
  return {u / D, v / D, zeta};
}

Chart beltrami_metric(double R);
Chart beltrami2_metric(double R);

std::array<double, 2> stereographic_to_beltrami(double chi, double phi, double R);

// Beltrami disk <-> two-sheet hyperboloid with the odd axis zeta:
// (u, v) = R (xi, eta) / zeta.
template <class T>
std::array<T, 3> beltrami_to_ambient(const T& u, const T& v, double R) {
  using std::sqrt;
  const T zeta = R * R / sqrt(R * R - u * u - v * v);
  return {zeta * u / R, zeta * v / R, zeta};
}
template <class T>
std::array<T, 2> ambient_to_beltrami(const std::array<T, 3>& p, double R) {
  return {R * p[0] / p[2], R * p[1] / p[2]};
}

// Requires L^T G L = G within 1e-10 and the point on the quadric within 1e-8.
std::array<double, 3> ambient_isometry_apply(const QuadricSpec& q, const Eigen::Matrix3d& L,
                                             const std::array<double, 3>& p);
bool is_ambient_isometry(const QuadricSpec& q, const Eigen::Matrix3d& L, double tol = 1e-10);

// The map induced on hyperbolic_chart(q) coordinates by L.
JetMap induced_chart_map(const QuadricSpec& q, const Eigen::Matrix3d& L);

struct Triangle {
  std::array<std::array<double, 2>, 3> vertices;
};

struct ExcessResult {
  double excess = 0.0;
  double area = 0.0;
  std::array<double, 3> angles{};
};

// Angle excess of a geodesic triangle and its area. Sides are found by
// shooting; the area is a boundary integral via Green's theorem.
ExcessResult excess_angle(const Chart& chart, const Triangle& tri);

// Geodesic from a to b with lambda in [0, 1]; throws DomainError when the
// shooting does not converge.
Trajectory shoot_geodesic(const Chart& chart, std::span<const double> a, std::span<const double> b,
                          int steps = 200);

std::array<double, 2> tractrix_point(double chi, double R);
Chart minding_chart(double R);

}  // namespace pslab
