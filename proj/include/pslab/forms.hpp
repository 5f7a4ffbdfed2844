#pragma once

// Exterior calculus and the Hodge dual on 4D (+,-,-,-) charts.

#include <span>

#include "pslab/chart.hpp"
#include "pslab/curvature.hpp"
#include "pslab/tensor.hpp"

namespace pslab {

// Sign of the permutation (0 for repeated entries).
int permutation_sign(std::span<const int> idx);

// *F_mn = 1/2 sqrt(-det g) e_mnrs F^rs, e_0123 = +1 in chart order.
// Throws DimensionError unless dim = 4 and ShapeError unless F is
// antisymmetric within 1e-12.
TensorValue hodge_dual(const TensorValue& g, const TensorValue& F);
TensorValue hodge_dual(const Chart& chart, const TensorValue& F, std::span<const double> x);

// (dw)_{i0..ik} = sum_p (-1)^p d_{ip} w_{i0..^ip..ik}, for k in {0, 1, 2}.
TensorValue exterior_derivative(const TensorField& form, std::span<const double> x);

// d of a form field as a new field. The result carries first derivatives
// only, so evaluate it on seeded coordinates.
TensorField exterior_derivative_field(TensorField form);

// (F, G) = 1/4 F_mn G^mn
cplx bilinear_scalar(const TensorValue& F, const TensorValue& G, const TensorValue& g);

// {F, G}_mk = -1/2 (F_mn G^n_k + *F_mn *G^n_k)
TensorValue bilinear_tensor(const TensorValue& F, const TensorValue& G, const TensorValue& g);

// T^{ab} from T_{ab}.
TensorValue raise_both(const TensorValue& ginv, const TensorValue& t);

// g^{ab} T_ab
cplx trace(const TensorValue& ginv, const TensorValue& t);

// Outer antisymmetric product a_m b_n - a_n b_m of two covectors.
TensorValue wedge_components(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace pslab
