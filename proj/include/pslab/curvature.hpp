#pragma once

#include <span>

#include "pslab/chart.hpp"
#include "pslab/tensor.hpp"

namespace pslab {

// Everything derived from the metric at a single point. Conventions:
//   gamma(k, i, j)      = Γ^k_ij
//   riemann(a, b, c, d) = R_abcd with R_abcd = K (g_ac g_bd - g_ad g_bc)
//                         on constant-curvature surfaces
//   ricci(b, d)         = R^a_bad
//   scalar              = g^bd R_bd
struct Geometry {
  TensorValue metric;
  TensorValue inverse;
  TensorValue gamma;
  TensorValue riemann;
  TensorValue ricci;
  cplx scalar{};
};

TensorValue eval_metric(const Chart& chart, std::span<const double> x);

// Inverse of a real or complex metric; throws SingularMetricError when
// |det g| < 1e-12.
TensorValue inverse_metric(const TensorValue& g);
cplx determinant(const TensorValue& g);

TensorValue christoffel(const Chart& chart, std::span<const double> x);
TensorValue riemann(const Chart& chart, std::span<const double> x);
TensorValue ricci(const Chart& chart, std::span<const double> x);
cplx scalar_curvature(const Chart& chart, std::span<const double> x);
cplx gaussian_curvature(const Chart& chart, std::span<const double> x);

Geometry geometry_at(const Chart& chart, std::span<const double> x);

// Raises the first index of a rank-2 lower tensor: T^a_b = g^{ac} T_cb.
TensorValue mixed(const TensorValue& ginv, const TensorValue& t);

// Tensor-valued field evaluated on seeded coordinate jets.
using TensorField = std::function<JetTensor(std::span<const Jet>)>;

// Covariant derivative with the derivative index appended last.
TensorValue covariant_derivative(const Chart& chart, const TensorField& field, std::span<const double> x);

}  // namespace pslab
