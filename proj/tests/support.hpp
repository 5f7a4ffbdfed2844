#pragma once

// Independent oracles and seeded generators shared by the unit tests.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <random>
#include <vector>

#include "pslab/chart.hpp"
#include "pslab/curvature.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

inline Mat metric_values(const pslab::Chart& c, const std::vector<double>& x) {
  const pslab::TensorValue g = pslab::eval_metric(c, x);
  Mat m(c.dim, c.dim);
  for (int i = 0; i < c.dim; ++i)
    for (int j = 0; j < c.dim; ++j) m(i, j) = g(i, j);
  return m;
}

// d_k g_ij by central differences with one Richardson step.
inline std::vector<Mat> metric_gradient_fd(const pslab::Chart& c, const std::vector<double>& x, double h = 1e-4) {
  std::vector<Mat> out;
  for (int k = 0; k < c.dim; ++k) {
    auto central = [&](double step) {
      std::vector<double> a = x, b = x;
      a[k] += step;
      b[k] -= step;
      return Mat((metric_values(c, a) - metric_values(c, b)) / (2.0 * step));
    };
    out.push_back((4.0 * central(h / 2) - central(h)) / 3.0);
  }
  return out;
}

// Gamma^k_ij from finite-difference metric derivatives.
inline std::vector<cplx> christoffel_fd(const pslab::Chart& c, const std::vector<double>& x) {
  const int n = c.dim;
  const Mat ginv = metric_values(c, x).inverse();
  const auto dg = metric_gradient_fd(c, x);
  std::vector<cplx> G(static_cast<std::size_t>(n * n * n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cplx s = 0.0;
        for (int l = 0; l < n; ++l) s += 0.5 * ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        G[static_cast<std::size_t>((k * n + i) * n + j)] = s;
      }
  return G;
}

// Brute-force Levi-Civita symbol.
inline int levi_civita(int a, int b, int c, int d) {
  int p[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  return sign;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long long seed) : gen(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen); }
};

// Hyperbolic distance in the Beltrami (Klein) disk of radius 1.
inline double klein_distance(std::array<double, 2> a, std::array<double, 2> b) {
  const double num = 1.0 - a[0] * b[0] - a[1] * b[1];
  const double den = std::sqrt((1.0 - a[0] * a[0] - a[1] * a[1]) * (1.0 - b[0] * b[0] - b[1] * b[1]));
  return std::acosh(num / den);
}

// Angles of a hyperbolic triangle (K = -1) from its side lengths.
inline std::array<double, 3> hyperbolic_angles(double a, double b, double c) {
  auto angle = [](double opp, double s1, double s2) {
    return std::acos((std::cosh(s1) * std::cosh(s2) - std::cosh(opp)) / (std::sinh(s1) * std::sinh(s2)));
  };
  return {angle(a, b, c), angle(b, c, a), angle(c, a, b)};
}

}  // namespace oracle
