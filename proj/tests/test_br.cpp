#include <gtest/gtest.h>

#include <cmath>

#include "pslab/br.hpp"
#include "pslab/curvature.hpp"
#include "pslab/desitter.hpp"
#include "pslab/errors.hpp"
#include "pslab/forms.hpp"
#include "support.hpp"

using namespace pslab;

namespace {

const cplx I(0.0, 1.0);

std::array<std::array<cplx, 4>, 4> tetrad_values(const NullTetradField& tet, std::span<const double> x) {
  std::vector<Jet> xs;
  for (double v : x) xs.emplace_back(v);
  const TetradJets th = tet.theta(xs);
  std::array<std::array<cplx, 4>, 4> out{};
  for (int a = 0; a < 4; ++a)
    for (int m = 0; m < 4; ++m) out[a][m] = th[a][m].v;
  return out;
}

std::vector<BRSpec> random_specs(oracle::Rng& rng, int n) {
  std::vector<BRSpec> out;
  for (int k = 0; k < n; ++k) {
    const BRVariant v = k % 2 ? BRVariant::BR1 : BRVariant::BR2;
    out.push_back(BRSpec::consistent(v, rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), rng.uniform(-3.0, 3.0)));
  }
  return out;
}

std::vector<double> random_point(oracle::Rng& rng, const BRSpec& s) {
  const double b = 0.9 * s.R_plus;
  if (s.variant == BRVariant::BR2) return {rng.uniform(-2, 2), rng.uniform(-b, b), rng.uniform(-2, 2), rng.uniform(-2, 2)};
  return {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-b, b)};
}

}  // namespace

TEST(Tetrad, NullFrameNormalisation) {
  oracle::Rng rng(51);
  for (const auto& spec : random_specs(rng, 6)) {
    const NullTetradField tet = br_tetrad(spec);
    for (int k = 0; k < 5; ++k) {
      const auto x = random_point(rng, spec);
      const auto th = tetrad_values(tet, x);
      oracle::Mat T(4, 4);
      for (int a = 0; a < 4; ++a)
        for (int m = 0; m < 4; ++m) T(a, m) = th[a][m];
      const oracle::Mat E = T.inverse();  // columns are the dual frame vectors
      const auto g = metric_from_tetrad(tet, x);
      const double eta[4][4] = {{0, 0, 0, 1}, {0, 0, -1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}};
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          cplx s = 0.0;
          for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) s += g(m, n) * E(m, a) * E(n, b);
          EXPECT_LT(std::abs(s - eta[a][b]), 1e-10);
        }
      for (int m = 0; m < 4; ++m) EXPECT_LT(std::abs(th[2][m] - std::conj(th[1][m])), 1e-15);
    }
  }
}

TEST(Tetrad, MetricRealSymmetricAndDecomposable) {
  oracle::Rng rng(52);
  for (const auto& spec : random_specs(rng, 6)) {
    const NullTetradField tet = br_tetrad(spec);
    for (int k = 0; k < 5; ++k) {
      const auto x = random_point(rng, spec);
      const auto g = metric_from_tetrad(tet, x);
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
          EXPECT_EQ(g(m, n), g(n, m));
          EXPECT_LT(std::abs(g(m, n).imag()), 1e-12);
          if ((m < 2) != (n < 2)) {
            EXPECT_LT(std::abs(g(m, n)), 1e-12);
          }
        }
      const auto blocks = decomposable_blocks(spec, x);
      EXPECT_LT(max_abs_diff(g, [&] {
                  TensorValue s = blocks[0];
                  for (std::size_t i = 0; i < s.components().size(); ++i) s.components()[i] += blocks[1].components()[i];
                  return s;
                }()),
                1e-13);
      // Ricci of a decomposable metric is K+ g+ + K- g-.
      const auto ric = ricci(br_chart(spec), x);
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
          EXPECT_NEAR(std::abs(ric(m, n) - spec.K_plus() * blocks[0](m, n) - spec.K_minus() * blocks[1](m, n)), 0.0,
                      1e-10);
    }
  }
}

TEST(Tetrad, Examples) {
  const double o[4] = {0, 0, 0, 0};
  const auto g1 = metric_from_tetrad(br_tetrad(BRSpec::make(BRVariant::BR1, 1.0, 1.0, 0.0)), o);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(std::abs(g1(m, n) - cplx(m != n ? 0.0 : m == 0 ? 1.0 : -1.0)), 0.0, 1e-15);
  const double p[4] = {0, 1, 0, 0};
  const auto g = metric_from_tetrad(br_tetrad(BRSpec::make(BRVariant::BR1, 1.0, 1.0, 0.0)), p);
  EXPECT_NEAR(g(0, 0).real(), 2.0, 1e-15);
  const double edge[4] = {0, 1.0, 0, 0};
  const NullTetradField br2 = br_tetrad(BRSpec::make(BRVariant::BR2, 1.0, 1.0, 0.0));
  EXPECT_THROW(metric_from_tetrad(br2, edge), DomainError);
  EXPECT_THROW(eval_metric(br_chart(BRSpec::make(BRVariant::BR2, 1.0, 1.0, 0.0)), edge), DomainError);
}

TEST(SelfDual, BasisIdentities) {
  oracle::Rng rng(53);
  for (const auto& spec : random_specs(rng, 4)) {
    const NullTetradField tet = br_tetrad(spec);
    for (int k = 0; k < 4; ++k) {
      const auto x = random_point(rng, spec);
      const auto th = tetrad_values(tet, x);
      const SelfDualBasis Z = self_dual_basis(tet, x);
      const double r2 = std::sqrt(2.0);
      const auto w01 = wedge_components(th[0], th[1]);
      const auto w23 = wedge_components(th[2], th[3]);
      const auto w12 = wedge_components(th[1], th[2]);
      const auto w03 = wedge_components(th[0], th[3]);
      for_each_index(2, 4, [&](std::span<const int> i) {
        EXPECT_LT(std::abs(Z.upper[0].at(i) - r2 * w01.at(i)), 1e-14);
        EXPECT_LT(std::abs(Z.upper[1].at(i) - r2 * w23.at(i)), 1e-14);
        EXPECT_LT(std::abs(Z.upper[2].at(i) - (w12.at(i) - w03.at(i))), 1e-14);
      });
      const auto g = metric_from_tetrad(tet, x);
      for (const auto& z : Z.upper) EXPECT_LT(max_abs_diff(hodge_dual(g, z), scaled(z, I)), 1e-10);
      EXPECT_LT(max_abs_diff(Z.lower(1), Z.upper[1]), 0.0 + 1e-300);
      EXPECT_LT(max_abs_diff(Z.lower(3), scaled(Z.upper[2], -1.0)), 1e-300);
    }
  }
}

TEST(SelfDual, OriginComponents) {
  const double o[4] = {0, 0, 0, 0};
  const SelfDualBasis Z = self_dual_basis(br_tetrad(BRSpec::make(BRVariant::BR2, 1.0, 1.0, 0.0)), o);
  EXPECT_NEAR(std::abs(Z.upper[2](0, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(Z.upper[2](2, 3) - I), 0.0, 1e-15);
}

TEST(Bilinear, ScalarAgainstBruteForceContraction) {
  oracle::Rng rng(54);
  const auto spec = BRSpec::make(BRVariant::BR2, 1.0, 1.0, 0.0);
  const NullTetradField tet = br_tetrad(spec);
  for (int k = 0; k < 5; ++k) {
    const auto x = random_point(rng, spec);
    const auto g = metric_from_tetrad(tet, x);
    const auto ginv = inverse_metric(g);
    const auto Z = self_dual_basis(tet, x);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        cplx s = 0.0;
        for_each_index(4, 4, [&](std::span<const int> i) {
          s += 0.25 * Z.upper[a](i[0], i[1]) * Z.upper[b](i[2], i[3]) * ginv(i[0], i[2]) * ginv(i[1], i[3]);
        });
        EXPECT_LT(std::abs(bilinear_scalar(Z.upper[a], Z.upper[b], g) - s), 1e-13);
      }
    const cplx c(rng.uniform(-2, 2), rng.uniform(-2, 2));
    EXPECT_LT(std::abs(bilinear_scalar(scaled(Z.upper[2], c), Z.upper[0], g) - c * bilinear_scalar(Z.upper[2], Z.upper[0], g)),
              1e-13);
    const auto T = bilinear_tensor(Z.upper[2], conjugated(Z.upper[2]), g);
    EXPECT_LT(std::abs(trace(ginv, T)), 1e-10);
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) EXPECT_LT(std::abs(T(m, n) - T(n, m)), 1e-13);
  }
}

TEST(BRSpec, CurvaturesAndGates) {
  const auto s = BRSpec::make(BRVariant::BR2, 2.0, 0.5, 0.0);
  EXPECT_EQ(s.K_plus(), -0.25);
  EXPECT_EQ(s.K_minus(), 4.0);
  EXPECT_NEAR(s.rho, (4.0 + 0.25) / 2, 1e-15);
  EXPECT_FALSE(s.lambda_consistent());
  const auto c = BRSpec::consistent(BRVariant::BR1, 2.0, 0.5);
  EXPECT_NEAR(c.Lambda, (4.0 - 0.25) / 2, 1e-15);
  EXPECT_TRUE(c.lambda_consistent());
  EXPECT_TRUE(BRSpec::make(BRVariant::BR2, 1.0, 1.0, 0.0).lambda_consistent());
  EXPECT_THROW(BRSpec::make(BRVariant::BR2, 0.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(BRSpec::make(BRVariant::BR2, 1.0, 1.0, 1.5), DomainError);   // K- > Lambda violated
  EXPECT_THROW(BRSpec::make(BRVariant::BR2, 1.0, 1.0, -1.5), DomainError);  // K+ < Lambda violated
}

TEST(EMField, ZeroDensityGivesZeroField) {
  BRSpec s = BRSpec::make(BRVariant::BR2, 1.0, 1.0, 0.0);
  s.rho = 0.0;
  const EMField em = em_field(s);
  const double x[4] = {0.1, 0.2, 0.3, 0.4};
  EXPECT_EQ(max_abs(em.F_at(x)), 0.0);
  EXPECT_EQ(max_abs(em.tau(x)), 0.0);
}

TEST(EMField, NonNullAndStressTensor) {
  for (BRVariant v : {BRVariant::BR1, BRVariant::BR2}) {
    const auto s = BRSpec::make(v, 1.0, 1.0, 0.0);
    EXPECT_EQ(s.rho, 1.0);
    const EMField em = em_field(s);
    const double x[4] = {0.3, -0.2, 0.5, 0.1};
    const auto g = eval_metric(em.chart, x);
    const auto F = em.F_at(x);
    EXPECT_GT(std::abs(bilinear_scalar(F, F, g)), 0.1);
    const auto Z3 = self_dual_basis(em.tetrad, x).upper[2];
    const auto blade = bilinear_tensor(Z3, conjugated(Z3), g);
    EXPECT_LT(max_abs_diff(em.tau(x), scaled(blade, s.blade_sign() * s.rho)), 1e-14);
    EXPECT_LT(max_abs_diff(em.tau(x), scaled(blade, -s.blade_sign() * s.K_plus())), 1e-14);
    // {F, conj F} = tau / 2 for F = (sqrt2 / 2) sqrt(rho) Z3
    EXPECT_LT(max_abs_diff(bilinear_tensor(F, conjugated(F), g), scaled(em.tau(x), 0.5 * s.blade_sign())), 1e-13);
  }
}

TEST(EinsteinMaxwell, Examples) {
  const auto a = BRSpec::make(BRVariant::BR2, 1.0, 1.0, 0.0);
  EXPECT_LT(verify_einstein_maxwell(a, br_grid(a, 5)), 1e-8);
  const auto b = BRSpec::make(BRVariant::BR2, 1.0, 1.0 / std::sqrt(2.0), 0.5);
  EXPECT_NEAR(b.rho, 1.5, 1e-14);
  EXPECT_NEAR(b.K_plus(), b.Lambda - b.rho, 1e-14);
  EXPECT_NEAR(b.K_minus(), b.Lambda + b.rho, 1e-14);
  EXPECT_LT(verify_einstein_maxwell(b, br_grid(b, 5)), 1e-8);
  const auto c = BRSpec::make(BRVariant::BR2, 1.0, 2.0, 0.0);
  EXPECT_GT(verify_einstein_maxwell(c, br_grid(c, 5)), 0.1);
}

TEST(EinsteinMaxwell, RandomConsistentSpecsAndDualityRotations) {
  oracle::Rng rng(55);
  for (const auto& spec : random_specs(rng, 8)) {
    std::vector<std::vector<double>> pts;
    for (int k = 0; k < 6; ++k) pts.push_back(random_point(rng, spec));
    const double scale = std::max({1.0, std::abs(spec.K_plus()), spec.K_minus()});
    EXPECT_LT(verify_einstein_maxwell(spec, pts), 1e-9 * scale) << to_string(spec.variant) << " " << spec.R_plus;
  }
}

TEST(Maxwell, ClosedAndCovariantlyConstant) {
  oracle::Rng rng(56);
  for (const auto& spec : random_specs(rng, 4)) {
    const EMField em = em_field(spec);
    for (int k = 0; k < 3; ++k) {
      const auto x = random_point(rng, spec);
      EXPECT_LT(max_abs(exterior_derivative(em.F, x)), 1e-10);
      EXPECT_LT(max_abs(covariant_derivative(em.chart, em.F, x)), 1e-10);
    }
  }
}

TEST(Rainich, PassesOnBRFailsOnDeSitter) {
  for (BRVariant v : {BRVariant::BR1, BRVariant::BR2}) {
    const auto s = BRSpec::make(v, 1.3, 1.3, 0.0);
    for (const auto& x : br_grid(s, 2)) {
      const auto r = rainich_algebraic_check(br_chart(s), x);
      EXPECT_TRUE(r.passes);
      EXPECT_NEAR(r.AAbar, s.rho, 1e-8);
    }
  }
  const double o[4] = {0.2, 0.1, 0.0, -0.3};
  const auto flat = rainich_algebraic_check(minkowski_chart(), o);
  EXPECT_TRUE(flat.passes);
  EXPECT_EQ(flat.AAbar, 0.0);
  const auto ds = rainich_algebraic_check(steady_state_chart(1.0, 4), o);
  EXPECT_FALSE(ds.passes);
  EXPECT_GT(ds.trace, 1.0);
  // With the cosmological term removed a consistent Lambda passes again.
  const auto c = BRSpec::consistent(BRVariant::BR2, 1.0, 1.0 / std::sqrt(2.0));
  const auto r = rainich_algebraic_check(br_chart(c), o, c.Lambda);
  EXPECT_TRUE(r.passes);
  EXPECT_NEAR(r.AAbar, c.rho, 1e-8);
}

TEST(Kahler, StructuresOnBR) {
  oracle::Rng rng(57);
  const auto id = identity_mixed(4);
  for (const auto& spec : random_specs(rng, 4)) {
    const NullTetradField tet = br_tetrad(spec);
    for (int k = 0; k < 4; ++k) {
      const auto x = random_point(rng, spec);
      const auto K = kahler_structures(tet, x);
      EXPECT_LT(max_abs_diff(compose(K.J, K.J), scaled(id, -1.0)), 1e-10);
      EXPECT_LT(max_abs_diff(compose(K.P, K.P), id), 1e-10);
      cplx tr = 0.0;
      for (int i = 0; i < 4; ++i) tr += K.P(i, i);
      EXPECT_LT(std::abs(tr), 1e-10);
      const auto Z3 = self_dual_basis(tet, x).upper[2];
      EXPECT_LT(max_abs_diff(K.Omega, scaled(Z3, I)), 1e-12);
    }
  }
}

TEST(Kahler, TwoDimensionalToyMetric) {
  TensorValue g = TensorValue::lower(2, 2);
  g(0, 0) = 1.0;
  g(1, 1) = -1.0;
  const auto J = hermitian_structure_2d(g);
  EXPECT_NEAR(std::abs(J(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(J(0, 1) - I), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(J(1, 0) - I), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(J(1, 1)), 0.0, 1e-15);
  EXPECT_LT(max_abs_diff(compose(J, J), scaled(identity_mixed(2), -1.0)), 1e-15);
}
