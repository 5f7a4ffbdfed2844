#include "pslab/verify.hpp"

#include <fnmatch.h>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "pslab/br.hpp"
#include "pslab/curvature.hpp"
#include "pslab/desitter.hpp"
#include "pslab/errors.hpp"
#include "pslab/forms.hpp"
#include "pslab/geodesic.hpp"
#include "pslab/horizon.hpp"
#include "pslab/kinematics.hpp"
#include "pslab/quadric.hpp"

namespace pslab {

double CheckOptions::param(std::string_view key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

bool glob_match(std::string_view pattern, std::string_view name) {
  return fnmatch(std::string(pattern).c_str(), std::string(name).c_str(), 0) == 0;
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  double residual = 0.0;
  double tolerance = kDefaultTolerance;
  std::string grid;
  std::string detail;
};

using CheckFn = std::function<Outcome(const CheckOptions&)>;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return v;
}

// Lattice of a 2D chart used for curvature and pullback sweeps.
std::vector<std::array<double, 2>> quadric_grid(const QuadricSpec& q, int n) {
  const auto cls = classify(q);
  std::vector<double> a = cls.topology == Topology::Sphere ? linspace(0.2, kPi - 0.2, n)
                          : cls.topology == Topology::TwoSheet ? linspace(0.1, 2.0, n)
                                                               : linspace(-1.5, 1.5, n);
  std::vector<double> b = linspace(0.0, 2.0 * kPi * (n - 1) / n, n);
  std::vector<std::array<double, 2>> out;
  for (double x : a)
    for (double y : b) out.push_back({x, y});
  return out;
}

double curvature_identity_defect(const Chart& c, std::span<const double> x, double K) {
  const Geometry geo = geometry_at(c, x);
  double worst = std::abs(0.5 * geo.scalar - K);
  const auto& g = geo.metric;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const cplx expect = K * (g(i, k) * g(j, l) - g(i, l) * g(j, k));
          worst = std::max(worst, std::abs(geo.riemann(i, j, k, l) - expect));
        }
  return worst;
}

Outcome check_constant_curvature(const CheckOptions&) {
  double worst = 0.0;
  for (double R : {0.5, 1.0, 2.0})
    for (const auto& base : admissible_patterns(R)) {
      const double K = classify(base).K;
      const Chart hc = hyperbolic_chart(base);
      for (const auto& p : quadric_grid(base, 10)) worst = std::max(worst, curvature_identity_defect(hc, p, K));
      const Chart cf = conformally_flat_chart(base);
      for (double u : linspace(-0.9 * R, 0.9 * R, 10))
        for (double v : linspace(-0.9 * R, 0.9 * R, 10)) {
          const double x[2] = {u, v};
          worst = std::max(worst, curvature_identity_defect(cf, x, K));
        }
    }
  return {worst, kDefaultTolerance, "6 sign patterns x R{0.5,1,2} x (10x10 hyperbolic + 10x10 conformal)",
          "max |K - eps/R^2| and |R_ijkl - K(g_ik g_jl - g_il g_jk)|"};
}

Outcome check_beltrami_curvature(const CheckOptions&) {
  double worst = 0.0;
  for (double R : {0.5, 1.0, 2.0}) {
    const Chart c = beltrami_metric(R);
    for (double u : linspace(-0.6 * R, 0.6 * R, 10))
      for (double v : linspace(-0.6 * R, 0.6 * R, 10)) {
        const double x[2] = {u, v};
        worst = std::max(worst, curvature_identity_defect(c, x, -1.0 / (R * R)));
      }
  }
  return {worst, kDefaultTolerance, "R{0.5,1,2} x 10x10 in |u|,|v| <= 0.6R", "max |K + 1/R^2|"};
}

Outcome check_beltrami_chords(const CheckOptions&) {
  const Chart c = beltrami_metric(1.0);
  std::mt19937_64 rng(kCheckSeed);
  std::uniform_real_distribution<double> rad(0.0, 0.6), ang(0.0, 2.0 * kPi);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double r0 = rad(rng), a0 = ang(rng), a1 = ang(rng);
    const double start[2] = {r0 * std::cos(a0), r0 * std::sin(a0)};
    const double dir[2] = {std::cos(a1), std::sin(a1)};
    const Trajectory tr = geodesic_integrate(c, start, dir, 2.0, 1000);
    for (const auto& s : tr.samples) {
      const double dx = s.x[0] - start[0], dy = s.x[1] - start[1];
      worst = std::max(worst, std::abs(dx * dir[1] - dy * dir[0]));
    }
  }
  return {worst, 1e-6, "20 seeded geodesics, RK4 1000 steps, lambda in [0,2]",
          "max distance of samples from the chord through the start point"};
}

Outcome check_beltrami_distance(const CheckOptions&) {
  const Chart c = beltrami_metric(1.0);
  auto ds = [&](double u) {
    const double x[2] = {u, 0.0};
    return std::sqrt(eval_metric(c, x)(0, 0).real());
  };
  const double numeric = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(ds, 0.0, 0.5, 15, 1e-14);
  const double exact = std::atanh(0.5);
  const double res = std::max(std::abs(numeric - exact), std::abs(numeric - 0.549306144334055));
  return {res, 1e-6, "line integral along v = 0 from (0,0) to (0.5,0)",
          "numeric " + fmt(numeric) + " vs arctanh(0.5)"};
}

Outcome check_gauss_excess_sphere(const CheckOptions&) {
  const Chart c = conformally_flat_chart(QuadricSpec{1, 1, 1, 1, 1.0});
  const auto r = excess_angle(c, Triangle{{{{0.0, 0.0}, {2.0, 0.0}, {0.0, 2.0}}}});
  const double res = std::max({std::abs(r.excess - r.area), std::abs(r.excess - kPi / 2), std::abs(r.area - kPi / 2)});
  return {res, 1e-6, "octant (0,0),(2,0),(0,2) in the conformal unit-sphere chart",
          "excess " + fmt(r.excess) + ", area " + fmt(r.area)};
}

Outcome check_gauss_excess_beltrami(const CheckOptions&) {
  const Chart c = beltrami_metric(1.0);
  const auto r = excess_angle(c, Triangle{{{{0.0, 0.0}, {0.4, 0.0}, {0.0, 0.4}}}});
  return {std::abs(r.excess + r.area), 1e-3, "triangle (0,0),(0.4,0),(0,0.4), R = 1",
          "excess " + fmt(r.excess) + ", area " + fmt(r.area)};
}

Outcome check_embedding_quadrics(const CheckOptions&) {
  double worst = 0.0;
  for (double R : {0.5, 1.0, 2.0})
    for (const auto& q : admissible_patterns(R)) {
      const Chart hc = hyperbolic_chart(q);
      const JetMap emb = [q](std::span<const Jet> x) {
        const auto p = embed_point<Jet>(q, x[0], x[1]);
        return std::vector<Jet>(p.begin(), p.end());
      };
      const auto signs = q.ambient();
      for (const auto& x : quadric_grid(q, 10)) {
        const auto p = embed_point<double>(q, x[0], x[1]);
        worst = std::max(worst, std::abs(quadric_residual(q, p)));
        worst = std::max(worst, max_abs_diff(pullback_flat(emb, signs, x), eval_metric(hc, x)));
      }
      const Chart cf = conformally_flat_chart(q);
      const JetMap cemb = [q](std::span<const Jet> x) {
        const auto p = conformal_embed<Jet>(q, x[0], x[1]);
        return std::vector<Jet>(p.begin(), p.end());
      };
      for (double u : linspace(-0.9 * R, 0.9 * R, 10))
        for (double v : linspace(-0.9 * R, 0.9 * R, 10)) {
          const double x[2] = {u, v};
          const auto p = conformal_embed<double>(q, u, v);
          worst = std::max(worst, std::abs(quadric_residual(q, p)));
          worst = std::max(worst, max_abs_diff(pullback_flat(cemb, signs, x), eval_metric(cf, x)));
        }
    }
  // Beltrami disk against the two-sheet chart of (++-,-).
  const QuadricSpec hyp{1, 1, -1, -1, 1.0};
  const Chart hc = hyperbolic_chart(hyp);
  const Chart bel = beltrami_metric(1.0);
  const JetMap stereo = [](std::span<const Jet> x) {
    const Jet t = tanh(x[0]);
    return std::vector<Jet>{t * cos(x[1]), t * sin(x[1])};
  };
  for (const auto& x : quadric_grid(hyp, 10))
    worst = std::max(worst, max_abs_diff(pullback_chart(bel, stereo, x), eval_metric(hc, x)));
  return {worst, 1e-10, "6 patterns x R{0.5,1,2}: 10x10 hyperbolic + 10x10 conformal; stereographic map 10x10",
          "max of quadric residual and pullback mismatch"};
}

Outcome check_embedding_ds2(const CheckOptions&) {
  const Chart c = steady_state_chart(1.0, 2);
  const JetMap emb = [](std::span<const Jet> x) {
    const auto p = ds2_embed<Jet>(x[0], x[1]);
    return std::vector<Jet>(p.begin(), p.end());
  };
  const int signs[3] = {-1, 1, -1};  // (xi, eta, zeta)
  double worst = 0.0;
  for (double t : linspace(-1.0, 1.0, 10))
    for (double xb : linspace(-1.0, 1.0, 10)) {
      const double x[2] = {t, xb};
      worst = std::max(worst, std::abs(ds2_residual(ds2_embed<double>(t, xb))));
      worst = std::max(worst, max_abs_diff(pullback_flat(emb, signs, x), eval_metric(c, x)));
    }
  return {worst, 1e-10, "tbar, xbar in [-1,1], 10x10", "max of quadric residual and pullback mismatch"};
}

Outcome check_embedding_br(const CheckOptions&) {
  const int signs[3] = {1, -1, 1};
  double worst = 0.0;
  for (double M : {0.5, 1.0, 2.0}) {
    for (EmbeddingKind kind : {EmbeddingKind::BR0, EmbeddingKind::BRplus, EmbeddingKind::BRminus}) {
      std::vector<double> rs, ts;
      switch (kind) {
        case EmbeddingKind::BR0:
          rs = linspace(0.8 * M, 3.0 * M, 20);
          ts = linspace(1.5 * M, 4.0 * M, 20);
          break;
        case EmbeddingKind::BRplus:
          rs = linspace(-3.0 * M, 3.0 * M, 20);
          ts = linspace(-4.0 * M, 4.0 * M, 20);
          break;
        case EmbeddingKind::BRminus:
          rs = linspace(1.1 * M, 3.0 * M, 20);
          ts = linspace(-3.0 * M, 3.0 * M, 20);
          break;
      }
      const JetMap emb = [kind, M](std::span<const Jet> x) {
        const auto p = embed<Jet>(kind, M, x[1], x[0]);
        return std::vector<Jet>(p.begin(), p.end());
      };
      for (double r : rs)
        for (double t : ts) {
          const double x[2] = {t, r};
          const auto p = embed<double>(kind, M, r, t);
          worst = std::max(worst, std::abs(horizon_quadric_residual(p, M)) / (M * M));
          worst = std::max(worst, max_abs_diff(pullback_flat(emb, signs, x), embedding_block_metric(kind, M, r, t)));
        }
    }
  }
  return {worst, 1e-10, "br0, br+, br- x M{0.5,1,2} x 20x20",
          "max of quadric residual / M^2 and pullback mismatch"};
}

Outcome check_velocity_addition(const CheckOptions&) {
  double worst = std::abs(add_velocities(0.5, 0.5, 0.0) - 0.8);
  std::mt19937_64 rng(kCheckSeed + 1);
  std::uniform_real_distribution<double> sp(-0.999, 0.999);
  for (int k = 0; k < 1000; ++k) {
    const double a = sp(rng), b = sp(rng);
    const double oracle = (a + b) / (1.0 + a * b);
    worst = std::max(worst, std::abs(add_velocities(a, b, 0.0) - oracle));
  }
  return {worst, 1e-12, "0.5 (+) 0.5 and 1000 seeded parallel pairs",
          "max |v - (v1 + v2)/(1 + v1 v2)|"};
}

Outcome check_mass_shell_boost(const CheckOptions&) {
  std::mt19937_64 rng(kCheckSeed + 2);
  std::uniform_real_distribution<double> pc(-2.0, 2.0), mass(0.0, 2.0), chi(-3.0, 3.0);
  std::uniform_int_distribution<int> axis(0, 2);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double m = mass(rng);
    const FourMomentum P = on_shell({pc(rng), pc(rng), pc(rng)}, m);
    const FourMomentum Q = boost(P, chi(rng), axis(rng));
    const double scale = Q.E * Q.E + Q.p[0] * Q.p[0] + Q.p[1] * Q.p[1] + Q.p[2] * Q.p[2];
    worst = std::max(worst, std::abs(Q.invariant_mass_squared() - P.invariant_mass_squared()) / scale);
  }
  return {worst, 1e-12, "1000 seeded (P, chi, axis) triples", "max relative change of E^2 - |p|^2"};
}

Outcome check_redshift_identity(const CheckOptions&) {
  std::mt19937_64 rng(kCheckSeed + 3);
  std::uniform_real_distribution<double> coef(0.1, 2.0), rate(-1.0, 1.0), t0d(0.0, 1.0), span(0.1, 2.0);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double A = coef(rng), a = rate(rng), B = coef(rng), p = coef(rng), C = coef(rng), w = coef(rng);
    ScaleHistory h;
    h.R = [=](const Jet& t) { return A * exp(a * t) + B * pow(1.0 + t, p) + C * (2.0 + sin(w * t)); };
    h.t_min = 0.0;
    h.t_max = 4.0;
    const double t0 = t0d(rng), t1 = t0 + span(rng);
    const double direct = redshift(h, t0, t1);
    worst = std::max(worst, std::abs(direct - redshift_from_hubble(h, t0, t1)) / direct);
  }
  return {worst, 1e-9, "50 seeded positive histories A e^{at} + B (1+t)^p + C (2 + sin wt)",
          "max relative |R(t1)/R(t0) - exp(int H dt)|"};
}

Outcome check_redshift_constant_h(const CheckOptions& o) {
  const double H = o.param("H", 0.7);
  const ScaleHistory h = exponential_history(H);
  const double t0 = 0.3, t1 = t0 + 1.0 / H;
  const double e = std::numbers::e;
  const double res = std::max(std::abs(redshift_from_hubble(h, t0, t1) - e), std::abs(redshift(h, t0, t1) - e));
  return {res, 1e-9, "H = " + fmt(H) + ", t1 - t0 = 1/H", "ratio against e"};
}

Outcome einstein_maxwell(const BRSpec& spec, int n, std::string label) {
  const double res = verify_einstein_maxwell(spec, br_grid(spec, n));
  std::ostringstream g;
  g << to_string(spec.variant) << " R+=" << fmt(spec.R_plus) << " R-=" << fmt(spec.R_minus) << " Lambda="
    << fmt(spec.Lambda) << ", " << n << "^4 grid";
  return {res, kDefaultTolerance, g.str(), std::move(label) + ", rho = " + fmt(spec.rho)};
}

Outcome check_br2_einstein_maxwell(const CheckOptions& o) {
  const BRSpec spec =
      BRSpec::make(BRVariant::BR2, o.param("R_plus", 1.0), o.param("R_minus", 1.0), o.param("Lambda", 0.0));
  return einstein_maxwell(spec, 5, "max |R_mn - tau_mn - Lambda g_mn|");
}

Outcome check_br1_einstein_maxwell(const CheckOptions& o) {
  const BRSpec spec =
      BRSpec::make(BRVariant::BR1, o.param("R_plus", 1.0), o.param("R_minus", 1.0), o.param("Lambda", 0.0));
  return einstein_maxwell(spec, 5, "max |R_mn - tau_mn - Lambda g_mn|");
}

Outcome check_br2_einstein_maxwell_lambda(const CheckOptions&) {
  const BRSpec spec = BRSpec::make(BRVariant::BR2, 1.0, 1.0 / std::sqrt(2.0), 0.5);
  Outcome out = einstein_maxwell(spec, 5, "max |R_mn - tau_mn - Lambda g_mn|");
  out.residual = std::max({out.residual, std::abs(spec.rho - 1.5), std::abs(spec.K_plus() - (spec.Lambda - spec.rho)),
                           std::abs(spec.K_minus() - (spec.Lambda + spec.rho))});
  return out;
}

Outcome check_br2_negative_control(const CheckOptions&) {
  const BRSpec spec = BRSpec::make(BRVariant::BR2, 1.0, 2.0, 0.0);
  const double measured = verify_einstein_maxwell(spec, br_grid(spec, 5));
  return {0.1 / measured, 1.0, "BR2 R+=1 R-=2 Lambda=0, 5^4 grid",
          "inverted: residual = 0.1 / " + fmt(measured) + ", passes when the field equations fail by more than 0.1"};
}

std::vector<BRSpec> br_samples() {
  return {BRSpec::make(BRVariant::BR2, 1.0, 1.0, 0.0), BRSpec::make(BRVariant::BR1, 1.0, 1.0, 0.0),
          BRSpec::consistent(BRVariant::BR2, 1.0, 1.0 / std::sqrt(2.0), 0.3),
          BRSpec::consistent(BRVariant::BR1, 1.5, 0.8, -0.7)};
}

Outcome check_self_dual_algebra(const CheckOptions&) {
  std::mt19937_64 rng(kCheckSeed + 4);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  const cplx I(0.0, 1.0);
  double worst = 0.0;
  for (const auto& spec : br_samples()) {
    const NullTetradField tet = br_tetrad(spec);
    for (const auto& x : br_grid(spec, 3)) {
      const TensorValue g = metric_from_tetrad(tet, x);
      const SelfDualBasis Z = self_dual_basis(tet, x);
      for (const auto& z : Z.upper) worst = std::max(worst, max_abs_diff(hodge_dual(g, z), scaled(z, I)));
      TensorValue F = TensorValue::lower(4, 2, x);
      for (int m = 0; m < 4; ++m)
        for (int n = m + 1; n < 4; ++n) {
          F(m, n) = cplx(c(rng), c(rng));
          F(n, m) = -F(m, n);
        }
      worst = std::max(worst, max_abs_diff(hodge_dual(g, hodge_dual(g, F)), scaled(F, -1.0)));
    }
  }
  return {worst, 1e-10, "BR1/BR2 (4 specs) x 3^4 grid, seeded random F",
          "max of |*Z^a - i Z^a| and |**F + F|"};
}

Outcome check_maxwell_closure(const CheckOptions&) {
  double worst = 0.0;
  for (const auto& spec : br_samples()) {
    const EMField em = em_field(spec);
    const TensorField omega = [z3 = self_dual_field(em.tetrad, 3)](std::span<const Jet> x) {
      JetTensor o = z3(x);
      for (auto& e : o.components()) e *= cplx(0.0, 1.0);
      return o;
    };
    for (const auto& x : br_grid(spec, 3)) {
      worst = std::max(worst, max_abs(exterior_derivative(em.F, x)));
      worst = std::max(worst, max_abs(covariant_derivative(em.chart, em.F, x)));
      worst = std::max(worst, max_abs(exterior_derivative(omega, x)));
    }
  }
  return {worst, kDefaultTolerance, "BR1/BR2 (4 specs) x 3^4 grid", "max of |dF|, |nabla F|, |d Omega|"};
}

Outcome check_rainich_br(const CheckOptions&) {
  double worst = 0.0;
  int failures = 0;
  for (BRVariant v : {BRVariant::BR1, BRVariant::BR2})
    for (double R : {0.5, 1.0, 2.0}) {
      const BRSpec spec = BRSpec::make(v, R, R, 0.0);
      const Chart c = br_chart(spec);
      for (const auto& x : br_grid(spec, 3)) {
        const RainichResult r = rainich_algebraic_check(c, x);
        if (!r.passes) ++failures;
        worst = std::max(worst, std::abs(r.AAbar - spec.rho));
      }
    }
  if (failures) worst = std::max(worst, 1.0);
  return {worst, kDefaultTolerance, "BR1/BR2 x R+=R-{0.5,1,2} x 3^4 grid, Lambda = 0",
          std::to_string(failures) + " points failing; residual max |A conj(A) - rho|"};
}

Outcome check_rainich_ds4_fails(const CheckOptions&) {
  const Chart c = steady_state_chart(1.0, 4);
  int passes = 0;
  double min_trace = INFINITY;
  for (double t : linspace(-1.0, 1.0, 3))
    for (double x : linspace(-1.0, 1.0, 3)) {
      const double p[4] = {t, x, 0.5 * x, -0.25 * t};
      const RainichResult r = rainich_algebraic_check(c, p);
      if (r.passes) ++passes;
      min_trace = std::min(min_trace, r.trace);
    }
  return {static_cast<double>(passes), 0.0, "steady-state dS4, H = 1, 9 points",
          "number of points passing (must be 0); min |tr Ricci| = " + fmt(min_trace)};
}

Outcome check_kahler_structures(const CheckOptions&) {
  double worst = 0.0;
  const TensorValue id = identity_mixed(4);
  int count = 0;
  for (const auto& spec : br_samples()) {
    const NullTetradField tet = br_tetrad(spec);
    for (const auto& x : br_grid(spec, 3)) {
      if (count++ % 3 != 0) continue;  // 4 specs x 81 points thinned to about 100
      const TensorValue g = metric_from_tetrad(tet, x);
      const KahlerStructures k = kahler_structures(tet, x);
      worst = std::max(worst, max_abs_diff(compose(k.J, k.J), scaled(id, -1.0)));
      worst = std::max(worst, max_abs_diff(compose(k.P, k.P), id));
      cplx tr = 0.0;
      double imag = 0.0;
      for (int i = 0; i < 4; ++i) tr += k.P(i, i);
      for (const auto& e : k.P.components()) imag = std::max(imag, std::abs(e.imag()));
      worst = std::max({worst, std::abs(tr), imag});
      // g(JX, JY) = g(X, Y) and g(PX, PY) = g(X, Y)
      for (const TensorValue* A : {&k.J, &k.P})
        for (int m = 0; m < 4; ++m)
          for (int n = 0; n < 4; ++n) {
            cplx s = 0.0;
            for (int a = 0; a < 4; ++a)
              for (int b = 0; b < 4; ++b) s += g(a, b) * (*A)(a, m) * (*A)(b, n);
            worst = std::max(worst, std::abs(s - g(m, n)));
          }
    }
  }
  return {worst, 1e-10, "4 BR specs x 3^4 grid, every third point (" + std::to_string((count + 2) / 3) + " points)",
          "max of |J^2 + 1|, |P^2 - 1|, |tr P|, |Im P|, |J^T g J - g|, |P^T g P - g|"};
}

Outcome check_einstein_lambda_ds(const CheckOptions&) {
  std::vector<std::vector<double>> g2, g4;
  for (double t : linspace(-1.0, 1.0, 5))
    for (double x : linspace(-1.0, 1.0, 5)) {
      g2.push_back({t, x});
      g4.push_back({t, x, -x, 0.5 * t});
    }
  const LambdaFit f2 = verify_einstein_lambda(steady_state_chart(1.0, 2), g2);
  const LambdaFit f4 = verify_einstein_lambda(steady_state_chart(1.0, 4), g4);
  const double K2 = 0.5 * scalar_curvature(steady_state_chart(1.0, 2), g2.front()).real();
  const double res = std::max({f2.residual, std::abs(f2.c - K2), f4.residual});
  return {res, kDefaultTolerance, "steady-state H = 1, 2D and 4D, 5x5 lattice",
          "fitted c: 2D " + fmt(f2.c) + " (K = " + fmt(K2) + "), 4D " + fmt(f4.c)};
}

Outcome check_near_horizon_limit(const CheckOptions&) {
  const double M = 1.0;
  const Chart rn = rn_extremal_chart(M);
  const Chart nh = near_horizon_chart(M);
  std::vector<double> errs;
  for (double ratio : {0.1, 0.01, 0.001}) {
    const double r = ratio * M;
    const double a[4] = {0.0, M + r, 1.0, 0.0};
    const double b[4] = {0.0, r, 1.0, 0.0};
    const TensorValue g15 = eval_metric(rn, a), g16 = eval_metric(nh, b);
    double e = 0.0;
    for (int i = 0; i < 4; ++i) e = std::max(e, std::abs(g15(i, i) - g16(i, i)) / std::abs(g16(i, i)));
    errs.push_back(e);
  }
  const bool monotone = errs[0] > errs[1] && errs[1] > errs[2];
  return {monotone ? errs[2] : 1.0, 3e-3, "r/M in {0.1, 0.01, 0.001}, M = 1",
          "relative errors " + fmt(errs[0]) + ", " + fmt(errs[1]) + ", " + fmt(errs[2]) +
              (monotone ? " (decreasing)" : " (NOT decreasing)")};
}

Outcome check_jt_constant_curvature(const CheckOptions&) {
  double worst = 0.0;
  for (double L : {0.5, 1.0, 2.0})
    for (double a2 : {0.25, 1.0, 4.0}) {
      const JTSolution jt = jt_solution(L, a2);
      const Chart c = jt.chart();
      const double rmin = std::sqrt(a2 / L);
      for (double r : linspace(1.05 * rmin, 5.0 * rmin, 20)) {
        const double x[2] = {0.3, r};
        worst = std::max(worst, std::abs(std::abs(scalar_curvature(c, x)) - 2.0 * L));
      }
    }
  return {worst, 1e-9, "Lambda{0.5,1,2} x a^2{0.25,1,4} x 20 radii in the static patch", "max ||R| - 2 Lambda|"};
}

Outcome check_jt_br_minus_block(const CheckOptions&) {
  double worst = 0.0;
  for (double M : {0.5, 1.0, 2.0}) {
    const Chart jt = jt_solution(1.0 / (M * M), 1.0).chart();
    const Chart br = horizon_block_chart("br-minus", M);
    for (double r : linspace(1.1 * M, 4.0 * M, 20)) {
      const double x[2] = {0.0, r};
      worst = std::max(worst, max_abs_diff(eval_metric(jt, x), eval_metric(br, x)));
    }
  }
  return {worst, 1e-12, "M{0.5,1,2}, a^2 = 1, Lambda = 1/M^2, 20 radii", "max componentwise difference"};
}

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r = {
      {"constant-curvature", check_constant_curvature},
      {"beltrami-curvature", check_beltrami_curvature},
      {"beltrami-chords", check_beltrami_chords},
      {"beltrami-distance", check_beltrami_distance},
      {"gauss-excess-sphere", check_gauss_excess_sphere},
      {"gauss-excess-beltrami", check_gauss_excess_beltrami},
      {"embedding-quadrics", check_embedding_quadrics},
      {"embedding-ds2", check_embedding_ds2},
      {"embedding-br", check_embedding_br},
      {"velocity-addition", check_velocity_addition},
      {"mass-shell-boost", check_mass_shell_boost},
      {"redshift-identity", check_redshift_identity},
      {"redshift-constant-h", check_redshift_constant_h},
      {"einstein-lambda-ds", check_einstein_lambda_ds},
      {"br1-einstein-maxwell", check_br1_einstein_maxwell},
      {"br2-einstein-maxwell", check_br2_einstein_maxwell},
      {"br2-einstein-maxwell-lambda", check_br2_einstein_maxwell_lambda},
      {"br2-negative-control", check_br2_negative_control},
      {"self-dual-algebra", check_self_dual_algebra},
      {"maxwell-closure", check_maxwell_closure},
      {"rainich-br", check_rainich_br},
      {"rainich-ds4-fails", check_rainich_ds4_fails},
      {"kahler-structures", check_kahler_structures},
      {"near-horizon-limit", check_near_horizon_limit},
      {"jt-constant-curvature", check_jt_constant_curvature},
      {"jt-br-minus-block", check_jt_br_minus_block},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

CheckReport run_check(std::string_view name, const CheckOptions& options) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckReport rep;
    rep.name = n;
    try {
      Outcome o = fn(options);
      rep.residual = o.residual;
      rep.tolerance = o.tolerance;
      rep.grid_spec = std::move(o.grid);
      rep.detail = std::move(o.detail);
    } catch (const Error& e) {
      rep.residual = INFINITY;
      rep.tolerance = kDefaultTolerance;
      rep.detail = std::string("error: ") + e.what();
    }
    if (rep.tolerance == kDefaultTolerance && options.default_tolerance) rep.tolerance = *options.default_tolerance;
    if (const auto it = options.tolerance_for.find(n); it != options.tolerance_for.end()) rep.tolerance = it->second;
    rep.passed = rep.residual <= rep.tolerance;
    rep.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  }
  throw UnknownCheckError("unknown check '" + std::string(name) + "'");
}

std::vector<CheckReport> run_all(std::string_view filter, const CheckOptions& options) {
  std::vector<CheckReport> out;
  for (const auto& name : check_names())
    if (filter.empty() || glob_match(filter, name)) out.push_back(run_check(name, options));
  return out;
}

}  // namespace pslab
