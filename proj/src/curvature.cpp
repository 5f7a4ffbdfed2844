#include "pslab/curvature.hpp"

#include <Eigen/Dense>
#include <sstream>

#include "pslab/errors.hpp"

namespace pslab {

namespace {

using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

constexpr double kSingularDet = 1e-12;

Mat to_matrix(const TensorValue& g) {
  const int n = g.dim();
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(i, j);
  return m;
}

// Metric value with first and second partials, indexed [d1][d2][i][j].
struct MetricJets {
  int n = 0;
  JetTensor raw;
  cplx d(int l, int i, int j) const { return raw(i, j).d[l]; }
  cplx dd(int l, int m, int i, int j) const { return raw(i, j).h[l][m]; }
};

MetricJets eval_jets(const Chart& chart, std::span<const double> x) {
  chart.require(x);
  MetricJets mj;
  mj.n = chart.dim;
  mj.raw = chart.metric(seed(x));
  if (mj.raw.rank() != 2 || mj.raw.dim() != chart.dim)
    throw ShapeError("metric of chart " + chart.name + " has the wrong shape");
  mj.raw.set_point({x.begin(), x.end()});
  return mj;
}

std::vector<double> pt(std::span<const double> x) { return {x.begin(), x.end()}; }

}  // namespace

cplx determinant(const TensorValue& g) {
  if (g.rank() != 2) throw ShapeError("determinant needs a rank-2 tensor");
  return to_matrix(g).determinant();
}

TensorValue inverse_metric(const TensorValue& g) {
  if (g.rank() != 2) throw ShapeError("inverse needs a rank-2 tensor");
  const Mat m = to_matrix(g);
  const Eigen::FullPivLU<Mat> lu(m);
  const cplx det = lu.determinant();
  if (std::abs(det) < kSingularDet) {
    std::ostringstream os;
    os << "singular metric, |det g| = " << std::abs(det);
    throw SingularMetricError(os.str());
  }
  const Mat inv = lu.inverse();
  TensorValue out(g.dim(), {Variance::Upper, Variance::Upper}, g.point());
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) out(i, j) = inv(i, j);
  return out;
}

TensorValue eval_metric(const Chart& chart, std::span<const double> x) {
  chart.require(x);
  JetTensor g = chart.metric(constants(x));
  g.set_point(pt(x));
  return values_of(g);
}

Geometry geometry_at(const Chart& chart, std::span<const double> x) {
  const MetricJets mj = eval_jets(chart, x);
  const int n = mj.n;
  const auto p = pt(x);
  Geometry geo;
  geo.metric = values_of(mj.raw);
  geo.inverse = inverse_metric(geo.metric);
  const TensorValue& gi = geo.inverse;
  const TensorValue& g = geo.metric;

  // ∂_m g^{kl} = -g^{ka} ∂_m g_ab g^{bl}
  TensorValue dginv(n, {Variance::Lower, Variance::Upper, Variance::Upper}, p);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        cplx s = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) s += gi(k, a) * mj.d(m, a, b) * gi(b, l);
        dginv(m, k, l) = -s;
      }

  // S_lij = ∂_i g_jl + ∂_j g_il - ∂_l g_ij and its partials.
  TensorValue S = TensorValue::lower(n, 3, p);
  TensorValue dS = TensorValue::lower(n, 4, p);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        S(l, i, j) = mj.d(i, j, l) + mj.d(j, i, l) - mj.d(l, i, j);
        for (int m = 0; m < n; ++m)
          dS(m, l, i, j) = mj.dd(m, i, j, l) + mj.dd(m, j, i, l) - mj.dd(m, l, i, j);
      }

  geo.gamma = TensorValue(n, {Variance::Upper, Variance::Lower, Variance::Lower}, p);
  TensorValue dgamma(n, {Variance::Lower, Variance::Upper, Variance::Lower, Variance::Lower}, p);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cplx s = 0.0;
        for (int l = 0; l < n; ++l) s += gi(k, l) * S(l, i, j);
        geo.gamma(k, i, j) = 0.5 * s;
        for (int m = 0; m < n; ++m) {
          cplx t = 0.0;
          for (int l = 0; l < n; ++l) t += dginv(m, k, l) * S(l, i, j) + gi(k, l) * dS(m, l, i, j);
          dgamma(m, k, i, j) = 0.5 * t;
        }
      }
  const TensorValue& G = geo.gamma;

  // R^r_smn = ∂_m Γ^r_ns - ∂_n Γ^r_ms + Γ^r_ml Γ^l_ns - Γ^r_nl Γ^l_ms
  TensorValue rup(n, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower}, p);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      for (int m = 0; m < n; ++m)
        for (int nu = 0; nu < n; ++nu) {
          cplx v = dgamma(m, r, nu, s) - dgamma(nu, r, m, s);
          for (int l = 0; l < n; ++l) v += G(r, m, l) * G(l, nu, s) - G(r, nu, l) * G(l, m, s);
          rup(r, s, m, nu) = v;
        }

  geo.riemann = TensorValue::lower(n, 4, p);
  for (int a = 0; a < n; ++a)
    for (int s = 0; s < n; ++s)
      for (int m = 0; m < n; ++m)
        for (int nu = 0; nu < n; ++nu) {
          cplx v = 0.0;
          for (int r = 0; r < n; ++r) v += g(a, r) * rup(r, s, m, nu);
          geo.riemann(a, s, m, nu) = v;
        }

  geo.ricci = TensorValue::lower(n, 2, p);
  for (int s = 0; s < n; ++s)
    for (int nu = 0; nu < n; ++nu) {
      cplx v = 0.0;
      for (int r = 0; r < n; ++r) v += rup(r, s, r, nu);
      geo.ricci(s, nu) = v;
    }

  geo.scalar = 0.0;
  for (int s = 0; s < n; ++s)
    for (int nu = 0; nu < n; ++nu) geo.scalar += gi(s, nu) * geo.ricci(s, nu);
  return geo;
}

TensorValue christoffel(const Chart& chart, std::span<const double> x) { return geometry_at(chart, x).gamma; }
TensorValue riemann(const Chart& chart, std::span<const double> x) { return geometry_at(chart, x).riemann; }
TensorValue ricci(const Chart& chart, std::span<const double> x) { return geometry_at(chart, x).ricci; }
cplx scalar_curvature(const Chart& chart, std::span<const double> x) { return geometry_at(chart, x).scalar; }

cplx gaussian_curvature(const Chart& chart, std::span<const double> x) {
  if (chart.dim != 2) throw DimensionError("Gaussian curvature is defined here for 2D charts");
  return 0.5 * scalar_curvature(chart, x);
}

TensorValue mixed(const TensorValue& ginv, const TensorValue& t) {
  if (t.rank() != 2) throw ShapeError("expected a rank-2 tensor");
  const int n = t.dim();
  TensorValue out(n, {Variance::Upper, Variance::Lower}, t.point());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cplx s = 0.0;
      for (int c = 0; c < n; ++c) s += ginv(a, c) * t(c, b);
      out(a, b) = s;
    }
  return out;
}

TensorValue covariant_derivative(const Chart& chart, const TensorField& field, std::span<const double> x) {
  const Geometry geo = geometry_at(chart, x);
  const JetTensor T = field(seed(x));
  const int n = chart.dim;
  if (T.rank() > 0 && T.dim() != n) throw ShapeError("tensor field dimension differs from chart");
  const int rank = T.rank();
  std::vector<Variance> vars = T.variances();
  vars.push_back(Variance::Lower);
  TensorValue out(n, vars, pt(x));
  std::vector<int> full(static_cast<std::size_t>(rank + 1));
  std::vector<int> tmp(static_cast<std::size_t>(rank));
  for_each_index(rank, n, [&](std::span<const int> I) {
    std::copy(I.begin(), I.end(), full.begin());
    for (int m = 0; m < n; ++m) {
      cplx v = T.at(I).d[m];
      for (int p = 0; p < rank; ++p) {
        std::copy(I.begin(), I.end(), tmp.begin());
        const int ip = I[p];
        for (int l = 0; l < n; ++l) {
          tmp[p] = l;
          if (T.variances()[p] == Variance::Upper)
            v += geo.gamma(ip, m, l) * T.at(tmp).v;
          else
            v -= geo.gamma(l, m, ip) * T.at(tmp).v;
        }
      }
      full[static_cast<std::size_t>(rank)] = m;
      out.at(full) = v;
    }
  });
  return out;
}

}  // namespace pslab
