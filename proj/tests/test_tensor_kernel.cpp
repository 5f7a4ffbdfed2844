#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pslab/br.hpp"
#include "pslab/curvature.hpp"
#include "pslab/desitter.hpp"
#include "pslab/errors.hpp"
#include "pslab/forms.hpp"
#include "pslab/geodesic.hpp"
#include "pslab/horizon.hpp"
#include "pslab/quadric.hpp"
#include "support.hpp"

using namespace pslab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Sample {
  Chart chart;
  std::vector<std::vector<double>> points;
};

// Charts of every flavour with in-domain points, for the property tests.
std::vector<Sample> chart_zoo() {
  oracle::Rng rng(7);
  std::vector<Sample> zoo;
  auto add = [&](Chart c, std::vector<std::array<double, 2>> box) {
    Sample s{std::move(c), {}};
    for (int k = 0; k < 6; ++k) {
      std::vector<double> x;
      for (const auto& b : box) x.push_back(rng.uniform(b[0], b[1]));
      if (s.chart.contains(x)) s.points.push_back(x);
    }
    zoo.push_back(std::move(s));
  };
  add(beltrami_metric(1.0), {{-0.6, 0.6}, {-0.6, 0.6}});
  add(beltrami2_metric(1.5), {{-0.6, 0.6}, {-0.6, 0.6}});
  add(hyperbolic_chart(QuadricSpec::parse("++++", 2.0)), {{0.3, 2.8}, {0.0, 6.0}});
  add(hyperbolic_chart(QuadricSpec::parse("-+--", 1.0)), {{-1.0, 1.0}, {0.0, 6.0}});
  add(hyperbolic_chart(QuadricSpec::parse("--++", 0.5)), {{0.2, 1.5}, {0.0, 6.0}});
  add(minding_chart(1.0), {{0.2, 2.0}, {0.0, 6.0}});
  add(steady_state_chart(0.7, 4), {{-1, 1}, {-1, 1}, {-1, 1}, {-1, 1}});
  add(br_chart(BRSpec::make(BRVariant::BR2, 1.0, 1.0, 0.0)), {{-1, 1}, {-0.8, 0.8}, {-1, 1}, {-1, 1}});
  add(br_chart(BRSpec::consistent(BRVariant::BR1, 1.3, 0.7)), {{-1, 1}, {-1, 1}, {-1, 1}, {-1.0, 1.0}});
  add(rn_extremal_chart(1.0), {{-1, 1}, {1.2, 4.0}, {0.4, 2.7}, {0.0, 6.0}});
  add(dyonic_solution(1.0, 0.25).chart(), {{-1, 1}, {1.2, 4.0}, {0.4, 2.7}, {0.0, 6.0}});
  return zoo;
}

}  // namespace

TEST(Jet, MatchesFiniteDifferencesOfComposite) {
  auto f_val = [](double x, double y) { return std::sin(x) * std::exp(y) / (1.0 + x * x) + std::sqrt(2.0 + y); };
  const double x0 = 0.7, y0 = -0.3;
  const Jet x = Jet::variable(x0, 0), y = Jet::variable(y0, 1);
  const Jet f = sin(x) * exp(y) / (1.0 + x * x) + sqrt(2.0 + y);
  const double h = 1e-4;
  EXPECT_NEAR(f.v.real(), f_val(x0, y0), 1e-15);
  EXPECT_NEAR(f.d[0].real(), (f_val(x0 + h, y0) - f_val(x0 - h, y0)) / (2 * h), 1e-7);
  EXPECT_NEAR(f.d[1].real(), (f_val(x0, y0 + h) - f_val(x0, y0 - h)) / (2 * h), 1e-7);
  const double fxy = (f_val(x0 + h, y0 + h) - f_val(x0 + h, y0 - h) - f_val(x0 - h, y0 + h) + f_val(x0 - h, y0 - h)) /
                     (4 * h * h);
  EXPECT_NEAR(f.h[0][1].real(), fxy, 1e-6);
  EXPECT_EQ(f.h[0][1], f.h[1][0]);
  const double fxx = (f_val(x0 + h, y0) - 2 * f_val(x0, y0) + f_val(x0 - h, y0)) / (h * h);
  EXPECT_NEAR(f.h[0][0].real(), fxx, 1e-6);
}

TEST(EvalMetric, BeltramiOrigin) {
  const double x[2] = {0.0, 0.0};
  const auto g = eval_metric(beltrami_metric(1.0), x);
  EXPECT_EQ(g(0, 0), cplx(1.0));
  EXPECT_EQ(g(0, 1), cplx(0.0));
  EXPECT_EQ(g(1, 1), cplx(1.0));
}

TEST(EvalMetric, BeltramiOffCentre) {
  const double x[2] = {0.5, 0.0};
  const auto g = eval_metric(beltrami_metric(1.0), x);
  EXPECT_NEAR(g(0, 0).real(), 16.0 / 9.0, 1e-14);
  EXPECT_NEAR(g(1, 1).real(), 4.0 / 3.0, 1e-14);
  EXPECT_EQ(g(0, 1), cplx(0.0));
}

TEST(EvalMetric, EuclideanIsIdentity) {
  const double x[3] = {3.0, -1.0, 2.5};
  const auto g = eval_metric(euclidean_chart(3), x);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(g(i, j), cplx(i == j ? 1.0 : 0.0));
}

TEST(EvalMetric, OutsideDomainThrows) {
  const double x[2] = {1.01, 0.0};
  EXPECT_THROW(eval_metric(beltrami_metric(1.0), x), DomainError);
  const double bad[3] = {0.0, 0.0, 0.0};
  EXPECT_THROW(eval_metric(beltrami_metric(1.0), bad), DimensionError);
}

TEST(EvalMetric, SymmetricInvertibleWithDeclaredSignature) {
  for (const auto& s : chart_zoo()) {
    ASSERT_FALSE(s.points.empty()) << s.chart.name;
    for (const auto& x : s.points) {
      const auto g = eval_metric(s.chart, x);
      const int n = s.chart.dim;
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          EXPECT_EQ(g(i, j), g(j, i)) << s.chart.name;
          EXPECT_LT(std::abs(g(i, j).imag()), 1e-12) << s.chart.name;
          m(i, j) = g(i, j).real();
        }
      EXPECT_GT(std::abs(determinant(g)), 1e-12) << s.chart.name;
      const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
      int pos = 0, sig_pos = 0;
      for (int i = 0; i < n; ++i) {
        pos += ev[i] > 0;
        sig_pos += s.chart.signature[static_cast<std::size_t>(i)] > 0;
      }
      EXPECT_EQ(pos, sig_pos) << s.chart.name;
    }
  }
}

TEST(Christoffel, EuclideanVanishes) {
  const double x[2] = {0.3, 0.9};
  EXPECT_EQ(max_abs(christoffel(euclidean_chart(2), x)), 0.0);
}

TEST(Christoffel, UnitSphereClosedForm) {
  const Chart s = hyperbolic_chart(QuadricSpec::parse("++++", 1.0));
  const double x[2] = {kPi / 3, 0.4};
  const auto G = christoffel(s, x);
  EXPECT_NEAR(G(0, 1, 1).real(), -std::sqrt(3.0) / 4.0, 1e-14);
  EXPECT_NEAR(G(1, 0, 1).real(), std::cos(kPi / 3) / std::sin(kPi / 3), 1e-14);
  EXPECT_NEAR(std::abs(G(0, 0, 0)), 0.0, 1e-15);
}

TEST(Christoffel, SymmetricAndMatchesFiniteDifferenceOracle) {
  for (const auto& s : chart_zoo()) {
    for (const auto& x : s.points) {
      const auto G = christoffel(s.chart, x);
      const auto fd = oracle::christoffel_fd(s.chart, x);
      const int n = s.chart.dim;
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            EXPECT_EQ(G(k, i, j), G(k, j, i)) << s.chart.name;
            const cplx o = fd[static_cast<std::size_t>((k * n + i) * n + j)];
            EXPECT_LT(std::abs(G(k, i, j) - o), 1e-7 * std::max(1.0, std::abs(o))) << s.chart.name << " " << k << i << j;
          }
    }
  }
}

TEST(Curvature, SphereOfRadiusTwo) {
  const Chart s = hyperbolic_chart(QuadricSpec::parse("++++", 2.0));
  for (double th : {0.3, 1.0, 2.5}) {
    const double x[2] = {th, 1.1};
    EXPECT_NEAR(scalar_curvature(s, x).real(), 0.5, 1e-12);
    EXPECT_NEAR(gaussian_curvature(s, x).real(), 0.25, 1e-12);
  }
}

TEST(Curvature, BeltramiIsMinusOne) {
  const double x[2] = {0.3, 0.4};
  EXPECT_NEAR(gaussian_curvature(beltrami_metric(1.0), x).real(), -1.0, 1e-12);
}

TEST(Curvature, EuclideanFlat) {
  const double x[2] = {0.3, 0.4};
  EXPECT_EQ(scalar_curvature(euclidean_chart(2), x), cplx(0.0));
}

TEST(Curvature, StaticTwoMetricScalarIsSecondDerivative) {
  // ds^2 = f dt^2 - dr^2 / f has scalar curvature f'' in this sign convention.
  Chart c;
  c.name = "static";
  c.dim = 2;
  c.signature = {1, -1};
  c.metric = [](std::span<const Jet> x) {
    const Jet f = 2.0 + x[1] * x[1] * x[1] / 3.0 + sin(x[1]);
    const Jet d[2] = {f, -1.0 / f};
    return diagonal_metric(d);
  };
  c.domain = [](std::span<const double>) { return true; };
  for (double r : {-0.5, 0.2, 1.3}) {
    const double x[2] = {0.1, r};
    EXPECT_NEAR(scalar_curvature(c, x).real(), 2.0 * r - std::sin(r), 1e-12);
  }
}

TEST(Curvature, RiemannSymmetriesOnAllCharts) {
  for (const auto& s : chart_zoo()) {
    const int n = s.chart.dim;
    for (const auto& x : s.points) {
      const auto R = riemann(s.chart, x);
      const double scale = std::max(1.0, max_abs(R));
      for_each_index(4, n, [&](std::span<const int> q) {
        const int a = q[0], b = q[1], c = q[2], d = q[3];
        EXPECT_LT(std::abs(R(a, b, c, d) + R(b, a, c, d)), 1e-12 * scale) << s.chart.name;
        EXPECT_LT(std::abs(R(a, b, c, d) + R(a, b, d, c)), 1e-12 * scale) << s.chart.name;
        EXPECT_LT(std::abs(R(a, b, c, d) - R(c, d, a, b)), 1e-11 * scale) << s.chart.name;
        EXPECT_LT(std::abs(R(a, b, c, d) + R(a, c, d, b) + R(a, d, b, c)), 1e-11 * scale) << s.chart.name;
      });
    }
  }
}

TEST(Geodesic, BeltramiChordStaysOnAxis) {
  const double start[2] = {0.0, 0.0}, vel[2] = {1.0, 0.0};
  const auto tr = geodesic_integrate(beltrami_metric(1.0), start, vel, 1.5, 300);
  ASSERT_GT(tr.samples.size(), 10u);
  for (const auto& s : tr.samples) EXPECT_LT(std::abs(s.x[1]), 1e-9);
  for (std::size_t i = 1; i < tr.samples.size(); ++i) EXPECT_GT(tr.samples[i].lambda, tr.samples[i - 1].lambda);
}

TEST(Geodesic, SphereEquatorStaysOnEquator) {
  const Chart s = hyperbolic_chart(QuadricSpec::parse("++++", 1.0));
  const double start[2] = {kPi / 2, 0.0}, vel[2] = {0.0, 1.0};
  const auto tr = geodesic_integrate(s, start, vel, 3.0, 300);
  EXPECT_FALSE(tr.hit_boundary);
  for (const auto& sm : tr.samples) EXPECT_NEAR(sm.x[0], kPi / 2, 1e-12);
  EXPECT_NEAR(tr.samples.back().x[1], 3.0, 1e-9);
}

TEST(Geodesic, SteadyStateSubstratumLine) {
  const Chart c = steady_state_chart(1.0, 2);
  const double start[2] = {0.0, 0.5}, vel[2] = {1.0, 0.0};
  const auto tr = geodesic_integrate(c, start, vel, 2.0, 200);
  for (const auto& s : tr.samples) EXPECT_LT(std::abs(s.x[1] - 0.5), 1e-6);
}

TEST(Geodesic, StopsAtBoundary) {
  const Chart c = beltrami_metric(1.0);
  const double start[2] = {0.1, 0.2}, vel[2] = {0.6, -0.3};
  const auto tr = geodesic_integrate(c, start, vel, 50.0, 2000);
  EXPECT_TRUE(tr.hit_boundary);
  EXPECT_LT(tr.samples.size(), 2001u);
  for (const auto& s : tr.samples) EXPECT_TRUE(c.contains(s.x));
}

TEST(Geodesic, NormDriftConvergesAtFourthOrder) {
  const Chart c = beltrami_metric(1.0);
  const double start[2] = {0.1, 0.2}, vel[2] = {0.6, -0.3};
  auto drift = [&](int steps) {
    const auto tr = geodesic_integrate(c, start, vel, 3.0, steps);
    EXPECT_FALSE(tr.hit_boundary);
    const double n0 = speed_squared(c, tr.samples.front());
    double worst = 0.0;
    for (const auto& s : tr.samples) worst = std::max(worst, std::abs(speed_squared(c, s) - n0));
    return worst;
  };
  const double coarse = drift(150), fine = drift(300);
  EXPECT_LT(fine, 1e-6);
  EXPECT_GT(coarse / fine, 12.0);
  EXPECT_LT(coarse / fine, 20.0);
}

TEST(Geodesic, RejectsBadInput) {
  const Chart c = beltrami_metric(1.0);
  const double in[2] = {0.0, 0.0}, out[2] = {2.0, 0.0}, v[2] = {1.0, 0.0};
  EXPECT_THROW(geodesic_integrate(c, in, v, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(geodesic_integrate(c, out, v, 1.0, 10), DomainError);
}

TEST(CovariantDerivative, MetricIsParallel) {
  for (const auto& s : chart_zoo()) {
    const TensorField g = s.chart.metric;
    for (const auto& x : s.points) EXPECT_LT(max_abs(covariant_derivative(s.chart, g, x)), 1e-9) << s.chart.name;
  }
}

TEST(CovariantDerivative, ScalarGivesPartials) {
  const Chart c = beltrami_metric(1.0);
  const TensorField f = [](std::span<const Jet> x) {
    JetTensor t(2, {});
    t.components()[0] = x[0] * x[0] * x[1];
    return t;
  };
  const double x[2] = {0.3, -0.2};
  const auto d = covariant_derivative(c, f, x);
  ASSERT_EQ(d.rank(), 1);
  EXPECT_NEAR(d(0).real(), 2 * 0.3 * -0.2, 1e-15);
  EXPECT_NEAR(d(1).real(), 0.09, 1e-15);
}

TEST(Hodge, MinkowskiAgainstLeviCivitaSum) {
  const double x[4] = {0, 0, 0, 0};
  const auto g = eval_metric(minkowski_chart(), x);
  oracle::Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    TensorValue F = TensorValue::lower(4, 2);
    for (int m = 0; m < 4; ++m)
      for (int n = m + 1; n < 4; ++n) {
        F(m, n) = trial == 0 ? cplx(m == 0 && n == 1 ? 1.0 : 0.0) : cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        F(n, m) = -F(m, n);
      }
    const double eta[4] = {1, -1, -1, -1};
    const auto star = hodge_dual(g, F);
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        cplx s = 0.0;
        for (int r = 0; r < 4; ++r)
          for (int q = 0; q < 4; ++q) s += 0.5 * double(oracle::levi_civita(m, n, r, q)) * eta[r] * eta[q] * F(r, q);
        EXPECT_NEAR(std::abs(star(m, n) - s), 0.0, 1e-15);
      }
    if (trial == 0) {
      EXPECT_EQ(star(2, 3), cplx(-1.0));
      EXPECT_EQ(star(0, 1), cplx(0.0));
    }
  }
}

TEST(Hodge, DoubleDualIsMinusIdentityOnLorentzianCharts) {
  oracle::Rng rng(12);
  for (const auto& s : chart_zoo()) {
    if (s.chart.dim != 4) continue;
    for (const auto& x : s.points) {
      TensorValue F = TensorValue::lower(4, 2, x);
      for (int m = 0; m < 4; ++m)
        for (int n = m + 1; n < 4; ++n) {
          F(m, n) = cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
          F(n, m) = -F(m, n);
        }
      const auto ss = hodge_dual(s.chart, hodge_dual(s.chart, F, x), x);
      EXPECT_LT(max_abs_diff(ss, scaled(F, -1.0)), 1e-12 * std::max(1.0, max_abs(F))) << s.chart.name;
    }
  }
}

TEST(Hodge, RejectsNonAntisymmetric) {
  const double x[4] = {0, 0, 0, 0};
  TensorValue F = TensorValue::lower(4, 2);
  F(0, 1) = 1.0;
  EXPECT_THROW(hodge_dual(minkowski_chart(), F, x), ShapeError);
  const double y[2] = {0, 0};
  EXPECT_THROW(hodge_dual(euclidean_chart(2), TensorValue::lower(2, 2), y), DimensionError);
}

TEST(ExteriorDerivative, XdyGivesAreaForm) {
  const TensorField w = [](std::span<const Jet> x) {
    JetTensor t = JetTensor::lower(2, 1);
    t(1) = x[0];
    return t;
  };
  const double x[2] = {0.4, -1.2};
  const auto dw = exterior_derivative(w, x);
  EXPECT_EQ(dw(0, 1), cplx(1.0));
  EXPECT_EQ(dw(1, 0), cplx(-1.0));
  EXPECT_EQ(dw(0, 0), cplx(0.0));
}

TEST(ExteriorDerivative, DSquaredVanishes) {
  oracle::Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    double c[4][3];
    for (auto& row : c)
      for (double& v : row) v = rng.uniform(-1, 1);
    const TensorField w = [c](std::span<const Jet> x) {
      JetTensor t = JetTensor::lower(4, 1);
      for (int i = 0; i < 4; ++i)
        t(i) = sin(c[i][0] * x[(i + 1) % 4]) * exp(c[i][1] * x[(i + 2) % 4]) + c[i][2] * x[i] * x[(i + 3) % 4];
      return t;
    };
    const double x[4] = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const auto ddw = exterior_derivative(exterior_derivative_field(w), x);
    EXPECT_LT(max_abs(ddw), 1e-13);
  }
}
