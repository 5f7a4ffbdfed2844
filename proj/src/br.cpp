#include "pslab/br.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <sstream>

#include "pslab/errors.hpp"
#include "pslab/forms.hpp"

namespace pslab {

namespace {

const cplx I(0.0, 1.0);

std::vector<double> pt(std::span<const double> x) { return {x.begin(), x.end()}; }

// Antisymmetric product a b - b a of two jet covectors.
JetTensor jet_wedge(const std::array<Jet, 4>& a, const std::array<Jet, 4>& b) {
  JetTensor w = JetTensor::lower(4, 2);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) w(m, n) = a[m] * b[n] - a[n] * b[m];
  return w;
}

// Tetrad of a product of a Lorentzian (t, x) block f dt^2 - dx^2 / f and a
// definite (y, z) block -(h dy^2 + dz^2 / h).
TetradJets product_tetrad(const Jet& f, const Jet& h) {
  const double c = 1.0 / std::sqrt(2.0);
  const Jet sf = sqrt(f);
  const Jet sh = sqrt(h);
  TetradJets th{};
  th[0] = {c * sf, c / sf, Jet(), Jet()};
  th[3] = {c * sf, -c / sf, Jet(), Jet()};
  th[1] = {Jet(), Jet(), (c * I) * sh, c / sh};
  th[2] = {Jet(), Jet(), (-c * I) * sh, c / sh};
  return th;
}

}  // namespace

void NullTetradField::require(std::span<const double> x) const {
  if (x.size() != 4) throw DimensionError("null tetrads live on 4D charts");
  if (domain && !domain(x)) throw DomainError("point outside tetrad domain of " + name + " (requires " + domain_text + ")");
}

JetTensor metric_from_tetrad(const TetradJets& th) {
  JetTensor g = JetTensor::lower(4, 2);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      g(m, n) = th[0][m] * th[3][n] + th[3][m] * th[0][n] - th[1][m] * th[2][n] - th[2][m] * th[1][n];
  return g;
}

TensorValue metric_from_tetrad(const NullTetradField& tet, std::span<const double> x) {
  tet.require(x);
  JetTensor g = metric_from_tetrad(tet.theta(constants(x)));
  g.set_point(pt(x));
  return values_of(g);
}

Chart chart_from_tetrad(const NullTetradField& tet) {
  Chart c;
  c.name = tet.name;
  c.dim = 4;
  c.metric = [theta = tet.theta](std::span<const Jet> x) { return metric_from_tetrad(theta(x)); };
  c.domain = tet.domain;
  c.domain_text = tet.domain_text;
  c.signature = {1, -1, -1, -1};
  return c;
}

std::array<JetTensor, 3> self_dual_basis(const TetradJets& th) {
  const double r2 = std::sqrt(2.0);
  JetTensor z1 = jet_wedge(th[0], th[1]);
  JetTensor z2 = jet_wedge(th[2], th[3]);
  JetTensor z3 = jet_wedge(th[1], th[2]);
  const JetTensor w03 = jet_wedge(th[0], th[3]);
  for (std::size_t i = 0; i < z1.components().size(); ++i) {
    z1.components()[i] *= r2;
    z2.components()[i] *= r2;
    z3.components()[i] -= w03.components()[i];
  }
  return {std::move(z1), std::move(z2), std::move(z3)};
}

TensorValue SelfDualBasis::lower(int a) const {
  switch (a) {
    case 1:
      return upper[1];
    case 2:
      return upper[0];
    case 3:
      return scaled(upper[2], -1.0);
    default:
      throw DimensionError("self-dual basis index must be 1, 2 or 3");
  }
}

SelfDualBasis self_dual_basis(const NullTetradField& tet, std::span<const double> x) {
  tet.require(x);
  auto z = self_dual_basis(tet.theta(constants(x)));
  SelfDualBasis b;
  for (int a = 0; a < 3; ++a) {
    z[a].set_point(pt(x));
    b.upper[a] = values_of(z[a]);
  }
  return b;
}

TensorField self_dual_field(const NullTetradField& tet, int a) {
  if (a < 1 || a > 3) throw DimensionError("self-dual basis index must be 1, 2 or 3");
  return [theta = tet.theta, a](std::span<const Jet> x) { return self_dual_basis(theta(x))[a - 1]; };
}

std::string_view to_string(BRVariant v) { return v == BRVariant::BR1 ? "BR1" : "BR2"; }

BRSpec BRSpec::make(BRVariant variant, double R_plus, double R_minus, double Lambda, double alpha) {
  if (!(R_plus > 0.0) || !(R_minus > 0.0)) throw DomainError("BR radii must be positive");
  BRSpec s;
  s.variant = variant;
  s.R_plus = R_plus;
  s.R_minus = R_minus;
  s.Lambda = Lambda;
  s.alpha = alpha;
  if (!(s.K_minus() - Lambda > 0.0) || !(Lambda - s.K_plus() > 0.0)) {
    std::ostringstream os;
    os << "positive energy requires K- > Lambda > K+, got K+ = " << s.K_plus() << ", K- = " << s.K_minus()
       << ", Lambda = " << Lambda;
    throw DomainError(os.str());
  }
  s.rho = 0.5 * (s.K_minus() - s.K_plus());
  return s;
}

BRSpec BRSpec::consistent(BRVariant variant, double R_plus, double R_minus, double alpha) {
  const double Lambda = 0.5 * (-1.0 / (R_plus * R_plus) + 1.0 / (R_minus * R_minus));
  return make(variant, R_plus, R_minus, Lambda, alpha);
}

bool BRSpec::lambda_consistent(double tol) const {
  return std::abs(Lambda - 0.5 * (K_plus() + K_minus())) <= tol * std::max(1.0, std::abs(Lambda));
}

NullTetradField br_tetrad(const BRSpec& spec) {
  NullTetradField t;
  const double Rp2 = spec.R_plus * spec.R_plus;
  const double Rm2 = spec.R_minus * spec.R_minus;
  if (spec.variant == BRVariant::BR2) {
    t.name = "br2";
    t.theta = [Rp2, Rm2](std::span<const Jet> x) {
      return product_tetrad(1.0 - square(x[1]) / Rp2, 1.0 + square(x[3]) / Rm2);
    };
    t.domain = [Rp2](std::span<const double> x) { return 1.0 - x[1] * x[1] / Rp2 > kDomainMargin; };
    t.domain_text = "x^2 < R+^2";
  } else {
    t.name = "br1";
    t.theta = [Rp2, Rm2](std::span<const Jet> x) {
      return product_tetrad(1.0 + square(x[1]) / Rm2, 1.0 - square(x[3]) / Rp2);
    };
    t.domain = [Rp2](std::span<const double> x) { return 1.0 - x[3] * x[3] / Rp2 > kDomainMargin; };
    t.domain_text = "z^2 < R+^2";
  }
  return t;
}

Chart br_chart(const BRSpec& spec) { return chart_from_tetrad(br_tetrad(spec)); }

std::array<TensorValue, 2> decomposable_blocks(const BRSpec& spec, std::span<const double> x) {
  const TensorValue g = metric_from_tetrad(br_tetrad(spec), x);
  TensorValue tx = TensorValue::lower(4, 2, pt(x));
  TensorValue yz = TensorValue::lower(4, 2, pt(x));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      tx(a, b) = g(a, b);
      yz(a + 2, b + 2) = g(a + 2, b + 2);
    }
  if (spec.variant == BRVariant::BR2) return {tx, yz};
  return {yz, tx};
}

TensorValue EMField::F_at(std::span<const double> x) const {
  tetrad.require(x);
  JetTensor f = F(constants(x));
  f.set_point(pt(x));
  return values_of(f);
}

TensorValue EMField::tau(std::span<const double> x) const {
  const TensorValue g = metric_from_tetrad(tetrad, x);
  const TensorValue z3 = self_dual_basis(tetrad, x).upper[2];
  return scaled(bilinear_tensor(z3, conjugated(z3), g), spec.blade_sign() * spec.rho);
}

EMField em_field(const BRSpec& spec) {
  EMField e;
  e.spec = spec;
  e.tetrad = br_tetrad(spec);
  e.chart = chart_from_tetrad(e.tetrad);
  const cplx amp = (std::sqrt(2.0) / 2.0) * std::sqrt(std::max(0.0, spec.rho)) * std::exp(I * spec.alpha);
  e.F = [z3 = self_dual_field(e.tetrad, 3), amp](std::span<const Jet> x) {
    JetTensor f = z3(x);
    for (auto& c : f.components()) c *= amp;
    return f;
  };
  return e;
}

std::vector<std::vector<double>> br_grid(const BRSpec& spec, int n) {
  if (n < 1) throw DomainError("grid needs at least one point per axis");
  auto axis = [n](double half) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(n == 1 ? 0.0 : -half + 2.0 * half * i / (n - 1));
    return v;
  };
  const double bounded = 0.8 * spec.R_plus;
  const auto t = axis(1.0), y = axis(1.0);
  const auto x = spec.variant == BRVariant::BR2 ? axis(bounded) : axis(1.0);
  const auto z = spec.variant == BRVariant::BR1 ? axis(bounded) : axis(1.0);
  std::vector<std::vector<double>> grid;
  for (double a : t)
    for (double b : x)
      for (double c : y)
        for (double d : z) grid.push_back({a, b, c, d});
  return grid;
}

double verify_einstein_maxwell(const BRSpec& spec, const std::vector<std::vector<double>>& grid) {
  const EMField em = em_field(spec);
  double worst = 0.0;
  for (const auto& x : grid) {
    const Geometry geo = geometry_at(em.chart, x);
    const TensorValue tau = em.tau(x);
    for (std::size_t i = 0; i < tau.components().size(); ++i) {
      const cplx r = geo.ricci.components()[i] - tau.components()[i] - spec.Lambda * geo.metric.components()[i];
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

TensorValue compose(const TensorValue& a, const TensorValue& b) {
  const int n = a.dim();
  TensorValue out(n, {Variance::Upper, Variance::Lower}, a.point());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int l = 0; l < n; ++l) s += a(i, l) * b(l, j);
      out(i, j) = s;
    }
  return out;
}

TensorValue identity_mixed(int n) {
  TensorValue id(n, {Variance::Upper, Variance::Lower});
  for (int i = 0; i < n; ++i) id(i, i) = 1.0;
  return id;
}

RainichResult rainich_algebraic_check(const Chart& chart, std::span<const double> x, double Lambda, double tol) {
  if (chart.dim != 4) throw DimensionError("the Rainich condition is checked on 4D charts");
  const Geometry geo = geometry_at(chart, x);
  TensorValue T = geo.ricci;
  for (std::size_t i = 0; i < T.components().size(); ++i) T.components()[i] -= Lambda * geo.metric.components()[i];
  const TensorValue Tm = mixed(geo.inverse, T);
  const TensorValue sq = compose(Tm, Tm);

  RainichResult res;
  cplx tr = 0.0, tr2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    tr += Tm(i, i);
    tr2 += sq(i, i);
  }
  const cplx a2 = 0.25 * tr2;
  res.trace = std::abs(tr);
  res.square_defect = max_abs_diff(sq, scaled(identity_mixed(4), a2));

  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = Tm(i, j);
  const Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m, false);
  std::array<cplx, 4> ev;
  for (int i = 0; i < 4; ++i) ev[i] = es.eigenvalues()[i];
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  res.eigenvalues = ev;

  const double scale = std::max(1.0, max_abs(Tm));
  const bool real_square = std::abs(a2.imag()) <= tol * scale * scale && a2.real() >= -tol * scale * scale;
  res.AAbar = std::sqrt(std::max(0.0, a2.real()));
  res.passes = res.trace <= tol * scale && res.square_defect <= tol * scale * scale && real_square;
  return res;
}

KahlerStructures kahler_structures(const NullTetradField& tet, std::span<const double> x) {
  const TensorValue g = metric_from_tetrad(tet, x);
  const TensorValue ginv = inverse_metric(g);
  KahlerStructures k;
  k.Omega = scaled(self_dual_basis(tet, x).upper[2], I);
  k.J = mixed(ginv, k.Omega);
  k.P = compose(k.J, conjugated(k.J));
  return k;
}

TensorValue hermitian_structure_2d(const TensorValue& g) {
  if (g.dim() != 2 || g.rank() != 2) throw DimensionError("expected a 2D metric");
  const double vol = std::sqrt(std::abs(determinant(g)));
  TensorValue omega = TensorValue::lower(2, 2, g.point());
  omega(0, 1) = I * vol;
  omega(1, 0) = -I * vol;
  return mixed(inverse_metric(g), omega);
}

}  // namespace pslab
