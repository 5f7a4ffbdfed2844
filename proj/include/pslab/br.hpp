#pragma once

// Null tetrads, the self-dual basis, and the Bertotti-Robinson
// Einstein-Maxwell spacetimes BR1 (S2 x AdS2) and BR2 (dS2 x H2).
//
// Two-forms are stored as antisymmetric tensor components with
// a ^ b = (a (x) b - b (x) a) / 2, so for example
//   Z3 = (th1 th2 - th2 th1) - (th0 th3 - th3 th0).

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pslab/chart.hpp"
#include "pslab/curvature.hpp"
#include "pslab/tensor.hpp"

namespace pslab {

// theta[a][mu]: component mu of the one-form theta^a.
using TetradJets = std::array<std::array<Jet, 4>, 4>;

struct NullTetradField {
  std::string name;
  std::function<TetradJets(std::span<const Jet>)> theta;
  DomainFn domain;
  std::string domain_text;

  void require(std::span<const double> x) const;
};

// g = th0 th3 + th3 th0 - th1 th2 - th2 th1
JetTensor metric_from_tetrad(const TetradJets& th);
TensorValue metric_from_tetrad(const NullTetradField& tet, std::span<const double> x);
Chart chart_from_tetrad(const NullTetradField& tet);

// Z^1, Z^2, Z^3 on jets.
std::array<JetTensor, 3> self_dual_basis(const TetradJets& th);

struct SelfDualBasis {
  std::array<TensorValue, 3> upper;  // Z^1, Z^2, Z^3
  // Z_1 = Z^2, Z_2 = Z^1, Z_3 = -Z^3
  TensorValue lower(int a) const;
};
SelfDualBasis self_dual_basis(const NullTetradField& tet, std::span<const double> x);
// Z^a as a field, a in {1, 2, 3}.
TensorField self_dual_field(const NullTetradField& tet, int a);

enum class BRVariant { BR1, BR2 };
std::string_view to_string(BRVariant v);

struct BRSpec {
  BRVariant variant = BRVariant::BR2;
  double R_plus = 1.0;
  double R_minus = 1.0;
  double Lambda = 0.0;
  double rho = 1.0;
  double alpha = 0.0;  // constant duality rotation

  // rho = (K- - K+) / 2. Rejects non-positive radii and specs violating
  // K- > Lambda, K+ < Lambda. Lambda is otherwise free so that
  // inconsistent specs can be checked and seen to fail.
  static BRSpec make(BRVariant variant, double R_plus, double R_minus, double Lambda, double alpha = 0.0);
  // Lambda from the radii.
  static BRSpec consistent(BRVariant variant, double R_plus, double R_minus, double alpha = 0.0);

  double K_plus() const { return -1.0 / (R_plus * R_plus); }
  double K_minus() const { return 1.0 / (R_minus * R_minus); }
  // Lambda = (K+ + K-) / 2
  bool lambda_consistent(double tol = 1e-12) const;
  // +1 for BR2, -1 for BR1: Ricci - Lambda g = sign * rho {Z3, conj Z3}.
  double blade_sign() const { return variant == BRVariant::BR2 ? 1.0 : -1.0; }
};

NullTetradField br_tetrad(const BRSpec& spec);
Chart br_chart(const BRSpec& spec);

// Metric blocks g+ (curvature K+) and g- (curvature K-), each padded to 4x4.
std::array<TensorValue, 2> decomposable_blocks(const BRSpec& spec, std::span<const double> x);

struct EMField {
  BRSpec spec;
  NullTetradField tetrad;
  Chart chart;
  TensorField F;  // (sqrt2 / 2) sqrt(rho) e^{i alpha} Z3

  TensorValue F_at(std::span<const double> x) const;
  // sign * rho {Z3, conj Z3}
  TensorValue tau(std::span<const double> x) const;
};
EMField em_field(const BRSpec& spec);

// Deterministic n^4 lattice inside the chart domain.
std::vector<std::vector<double>> br_grid(const BRSpec& spec, int n);

// max over the grid of |R_mn - tau_mn - Lambda g_mn|
double verify_einstein_maxwell(const BRSpec& spec, const std::vector<std::vector<double>>& grid);

struct RainichResult {
  bool passes = false;
  double AAbar = 0.0;
  double trace = 0.0;          // |tr R^m_n|
  double square_defect = 0.0;  // max |R^m_l R^l_n - a^2 delta|
  std::array<cplx, 4> eigenvalues{};
};

// Algebraic condition on Ricci - Lambda g: traceless with mixed square
// proportional to the identity.
RainichResult rainich_algebraic_check(const Chart& chart, std::span<const double> x, double Lambda = 0.0,
                                      double tol = 1e-9);

struct KahlerStructures {
  TensorValue J;      // J^m_n
  TensorValue Omega;  // Omega_mn = g_ml J^l_n = i Z3
  TensorValue P;      // P^m_n = (J conj J)^m_n
};
KahlerStructures kahler_structures(const NullTetradField& tet, std::span<const double> x);

// J from a 2D Lorentzian metric with Omega = i sqrt|det g| e_mn.
TensorValue hermitian_structure_2d(const TensorValue& g);

// Matrix product of mixed tensors.
TensorValue compose(const TensorValue& a, const TensorValue& b);
TensorValue identity_mixed(int n);

}  // namespace pslab
