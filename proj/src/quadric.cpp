#include "pslab/quadric.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <optional>
#include <numbers>
#include <sstream>

#include "pslab/curvature.hpp"

namespace pslab {

namespace {

int sign_of(char c) {
  if (c == '+') return 1;
  if (c == '-') return -1;
  throw DomainError(std::string("quadric sign must be + or -, got '") + c + "'");
}

char sign_char(int s) { return s > 0 ? '+' : '-'; }

}  // namespace

QuadricSpec QuadricSpec::parse(std::string_view signs, double R) {
  std::string s;
  for (char c : signs)
    if (c != ',' && c != ' ') s.push_back(c);
  if (s.size() != 4) throw DomainError("quadric signs need four entries, e.g. --++");
  QuadricSpec q{sign_of(s[0]), sign_of(s[1]), sign_of(s[2]), sign_of(s[3]), R};
  q.validate();
  return q;
}

std::string QuadricSpec::signs() const {
  return {sign_char(eps_xi), sign_char(eps_eta), sign_char(eps_zeta), sign_char(eps)};
}

void QuadricSpec::validate() const {
  for (int s : {eps_xi, eps_eta, eps_zeta, eps})
    if (s != 1 && s != -1) throw DomainError("quadric signs must be +1 or -1");
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("quadric radius must be positive");
  if (eps_xi == eps_eta && eps_eta == eps_zeta && eps != eps_xi)
    throw ForbiddenQuadricError("quadric (" + signs().substr(0, 3) + "," + signs().substr(3) +
                                ") has no real points");
}

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::Sphere:
      return "sphere";
    case Topology::OneSheet:
      return "one-sheet";
    case Topology::TwoSheet:
      return "two-sheet";
  }
  return "?";
}

namespace detail {

Axes axes_of(const QuadricSpec& q) {
  const auto s = q.ambient();
  Axes ax;
  if (s[0] == s[1] && s[1] == s[2]) {
    ax.majority = s[0];
    return ax;
  }
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3;
    const int j = (k + 2) % 3;
    if (s[i] == s[j]) {
      ax.odd = k;
      ax.a = std::min(i, j);
      ax.b = std::max(i, j);
      ax.majority = s[i];
      return ax;
    }
  }
  return ax;
}

}  // namespace detail

QuadricClass classify(const QuadricSpec& q) {
  q.validate();
  QuadricClass c;
  c.K = q.eps / (q.R * q.R);
  const auto ax = detail::axes_of(q);
  if (q.eps_xi == q.eps_eta && q.eps_eta == q.eps_zeta) {
    c.topology = Topology::Sphere;
    c.induced_signature = {q.eps, q.eps};
  } else if (ax.majority * q.eps == 1) {
    c.topology = Topology::OneSheet;
    c.induced_signature = {-q.eps, q.eps};
  } else {
    c.topology = Topology::TwoSheet;
    c.induced_signature = {-q.eps, -q.eps};
  }
  return c;
}

std::array<QuadricSpec, 6> admissible_patterns(double R) {
  return {QuadricSpec{1, 1, 1, 1, R},    QuadricSpec{-1, -1, -1, -1, R}, QuadricSpec{-1, -1, 1, 1, R},
          QuadricSpec{1, 1, -1, -1, R},  QuadricSpec{-1, 1, -1, -1, R},  QuadricSpec{1, -1, 1, 1, R}};
}

Chart hyperbolic_chart(const QuadricSpec& q) {
  const QuadricClass cls = classify(q);
  Chart c;
  c.name = "quadric:" + q.signs();
  c.dim = 2;
  c.signature = {cls.induced_signature[0], cls.induced_signature[1]};
  const double R2 = q.R * q.R;
  const double e = q.eps;
  switch (cls.topology) {
    case Topology::Sphere:
      c.metric = [R2, e](std::span<const Jet> x) {
        const Jet d[2] = {Jet(e * R2), e * R2 * square(sin(x[0]))};
        return diagonal_metric(d);
      };
      c.domain = [](std::span<const double> x) { return std::abs(std::sin(x[0])) > kDomainMargin; };
      c.domain_text = "sin(theta) != 0";
      break;
    case Topology::OneSheet:
      c.metric = [R2, e](std::span<const Jet> x) {
        const Jet d[2] = {Jet(-e * R2), e * R2 * square(cosh(x[0]))};
        return diagonal_metric(d);
      };
      c.domain = [](std::span<const double>) { return true; };
      break;
    case Topology::TwoSheet:
      c.metric = [R2, e](std::span<const Jet> x) {
        const Jet d[2] = {Jet(-e * R2), -e * R2 * square(sinh(x[0]))};
        return diagonal_metric(d);
      };
      c.domain = [](std::span<const double> x) { return std::abs(std::sinh(x[0])) > kDomainMargin; };
      c.domain_text = "sinh(chi) != 0";
      break;
  }
  return c;
}

double quadric_residual(const QuadricSpec& q, const std::array<double, 3>& p) {
  return q.eps_xi * p[0] * p[0] + q.eps_eta * p[1] * p[1] + q.eps_zeta * p[2] * p[2] - q.eps * q.R * q.R;
}

std::array<double, 3> antipode(const std::array<double, 3>& p) { return {-p[0], -p[1], -p[2]}; }

Chart conformally_flat_chart(const QuadricSpec& q) {
  q.validate();
  Chart c;
  c.name = "conformal:" + q.signs();
  c.dim = 2;
  c.signature = {q.eps_xi, q.eps_eta};
  const double k = q.eps / (4.0 * q.R * q.R);
  const double ex = q.eps_xi, ey = q.eps_eta;
  c.metric = [k, ex, ey](std::span<const Jet> x) {
    const Jet D = 1.0 + k * (ex * square(x[0]) + ey * square(x[1]));
    const Jet D2 = square(D);
    const Jet d[2] = {ex / D2, ey / D2};
    return diagonal_metric(d);
  };
  c.domain = [k, ex, ey](std::span<const double> x) {
    return std::abs(1.0 + k * (ex * x[0] * x[0] + ey * x[1] * x[1])) > kDomainMargin;
  };
  c.domain_text = "nonzero conformal denominator";
  return c;
}

Chart beltrami_metric(double R) {
  if (!(R > 0.0)) throw DomainError("Beltrami radius must be positive");
  Chart c;
  c.name = "beltrami";
  c.dim = 2;
  c.signature = {1, 1};
  const double R2 = R * R;
  c.metric = [R2](std::span<const Jet> x) {
    const Jet& u = x[0];
    const Jet& v = x[1];
    const Jet D = R2 - square(u) - square(v);
    const Jet s = R2 / square(D);
    auto g = JetTensor::lower(2, 2);
    g(0, 0) = s * (R2 - square(v));
    set_sym(g, 0, 1, s * u * v);
    g(1, 1) = s * (R2 - square(u));
    return g;
  };
  c.domain = [R2](std::span<const double> x) { return R2 - x[0] * x[0] - x[1] * x[1] > kDomainMargin * R2; };
  c.domain_text = "u^2 + v^2 < R^2";
  return c;
}

Chart beltrami2_metric(double R) {
  if (!(R > 0.0)) throw DomainError("Beltrami radius must be positive");
  Chart c;
  c.name = "beltrami2";
  c.dim = 2;
  c.signature = {-1, 1};
  const double R2 = R * R;
  c.metric = [R2](std::span<const Jet> x) {
    const Jet& u = x[0];
    const Jet& v = x[1];
    const Jet D = R2 + square(u) - square(v);
    const Jet s = R2 / square(D);
    auto g = JetTensor::lower(2, 2);
    g(0, 0) = s * (square(v) - R2);
    set_sym(g, 0, 1, -1.0 * s * u * v);
    g(1, 1) = s * (square(u) + R2);
    return g;
  };
  c.domain = [R2](std::span<const double> x) { return R2 + x[0] * x[0] - x[1] * x[1] > kDomainMargin * R2; };
  c.domain_text = "v^2 - u^2 < R^2";
  return c;
}

std::array<double, 2> stereographic_to_beltrami(double chi, double phi, double R) {
  double t = R * std::tanh(chi);
  // The image is the open disk; once tanh rounds to 1, step one ulp inward.
  if (std::abs(t) >= R) t = std::copysign(std::nextafter(R, 0.0), chi);
  return {t * std::cos(phi), t * std::sin(phi)};
}

bool is_ambient_isometry(const QuadricSpec& q, const Eigen::Matrix3d& L, double tol) {
  const Eigen::Vector3d s(q.eps_xi, q.eps_eta, q.eps_zeta);
  const Eigen::Matrix3d G = s.asDiagonal();
  return (L.transpose() * G * L - G).cwiseAbs().maxCoeff() <= tol;
}

std::array<double, 3> ambient_isometry_apply(const QuadricSpec& q, const Eigen::Matrix3d& L,
                                             const std::array<double, 3>& p) {
  if (!is_ambient_isometry(q, L)) throw NotIsometryError("matrix does not preserve the ambient metric");
  if (std::abs(quadric_residual(q, p)) > 1e-8) throw DomainError("point is not on the quadric");
  const Eigen::Vector3d r = L * Eigen::Vector3d(p[0], p[1], p[2]);
  return {r[0], r[1], r[2]};
}

JetMap induced_chart_map(const QuadricSpec& q, const Eigen::Matrix3d& L) {
  if (!is_ambient_isometry(q, L)) throw NotIsometryError("matrix does not preserve the ambient metric");
  return [q, L](std::span<const Jet> x) {
    const auto p = embed_point<Jet>(q, x[0], x[1]);
    std::array<Jet, 3> r;
    for (int i = 0; i < 3; ++i) r[i] = L(i, 0) * p[0] + L(i, 1) * p[1] + L(i, 2) * p[2];
    const auto c = chart_point<Jet>(q, r);
    return std::vector<Jet>{c[0], c[1]};
  };
}

Trajectory shoot_geodesic(const Chart& chart, std::span<const double> a, std::span<const double> b, int steps) {
  const int n = chart.dim;
  Eigen::VectorXd v(n), target(n);
  for (int i = 0; i < n; ++i) {
    v[i] = b[i] - a[i];
    target[i] = b[i];
  }
  auto endpoint = [&](const Eigen::VectorXd& vel, Trajectory* keep) -> std::optional<Eigen::VectorXd> {
    std::vector<double> vv(vel.data(), vel.data() + n);
    Trajectory t = geodesic_integrate(chart, a, vv, 1.0, steps);
    if (t.hit_boundary) return std::nullopt;
    Eigen::VectorXd e(n);
    for (int i = 0; i < n; ++i) e[i] = t.samples.back().x[i];
    if (keep) *keep = std::move(t);
    return e;
  };
  Trajectory best;
  double scale = std::max(1.0, v.norm());
  for (int iter = 0; iter < 40; ++iter) {
    Trajectory cur;
    auto e = endpoint(v, &cur);
    if (!e) throw DomainError("geodesic shooting left the chart domain");
    const Eigen::VectorXd r = *e - target;
    best = std::move(cur);
    if (r.norm() < 1e-12 * scale) return best;
    Eigen::MatrixXd J(n, n);
    const double h = 1e-7 * std::max(1.0, v.norm());
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXd vk = v;
      vk[k] += h;
      auto ek = endpoint(vk, nullptr);
      if (!ek) throw DomainError("geodesic shooting left the chart domain");
      J.col(k) = (*ek - *e) / h;
    }
    v -= J.fullPivLu().solve(r);
  }
  const Eigen::VectorXd last = Eigen::Map<const Eigen::VectorXd>(best.samples.back().x.data(), n);
  if ((last - target).norm() > 1e-9 * scale) throw DomainError("geodesic shooting did not converge");
  return best;
}

namespace {

double metric_dot(const TensorValue& g, const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) s += g(i, j).real() * a[i] * b[j];
  return s;
}

double vertex_angle(const Chart& chart, std::span<const double> at, const std::vector<double>& t1,
                    const std::vector<double>& t2) {
  const TensorValue g = eval_metric(chart, at);
  const double g11 = metric_dot(g, t1, t1);
  const double g22 = metric_dot(g, t2, t2);
  if (g11 * g22 <= 0.0) throw IndefiniteMetricError("angles need a definite metric");
  const double sign = g11 > 0.0 ? 1.0 : -1.0;
  // |t1 ^ t2| = sqrt|det g| |cross|; atan2 stays accurate near 0 and pi.
  const double det = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
  const double wedge = std::sqrt(std::abs(det)) * std::abs(t1[0] * t2[1] - t1[1] * t2[0]);
  return std::atan2(wedge, sign * metric_dot(g, t1, t2));
}

double area_density(const Chart& chart, double u, double v) {
  const double x[2] = {u, v};
  const TensorValue g = eval_metric(chart, x);
  return std::sqrt(std::abs((g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real()));
}

}  // namespace

ExcessResult excess_angle(const Chart& chart, const Triangle& tri) {
  if (chart.dim != 2) throw DimensionError("triangle excess needs a 2D chart");
  for (int s : chart.signature)
    if (s != chart.signature[0]) throw IndefiniteMetricError("angles are not defined on indefinite charts");
  const auto& V = tri.vertices;
  for (int i = 0; i < 3; ++i) chart.require(V[i]);

  std::array<Trajectory, 3> sides;
  for (int i = 0; i < 3; ++i) sides[i] = shoot_geodesic(chart, V[i], V[(i + 1) % 3]);

  auto neg = [](std::vector<double> x) {
    for (double& c : x) c = -c;
    return x;
  };
  ExcessResult res;
  for (int i = 0; i < 3; ++i) {
    // Outgoing tangent along side i, and the reversed end tangent of the previous side.
    const auto& out = sides[i].samples.front().v;
    const auto in = neg(sides[(i + 2) % 3].samples.back().v);
    const bool degenerate = std::hypot(out[0], out[1]) == 0.0 || std::hypot(in[0], in[1]) == 0.0;
    res.angles[i] = degenerate ? 0.0 : vertex_angle(chart, V[i], out, in);
  }
  res.excess = res.angles[0] + res.angles[1] + res.angles[2] - std::numbers::pi;

  // Area = |loop integral of F dv| with F(u, v) = integral of sqrt|g| du from u0.
  const double u0 = (V[0][0] + V[1][0] + V[2][0]) / 3.0;
  auto F = [&](double u, double v) {
    if (u == u0) return 0.0;
    auto f = [&](double s) { return area_density(chart, s, v); };
    return boost::math::quadrature::gauss<double, 30>::integrate(f, u0, u);
  };
  double loop = 0.0;
  for (const auto& side : sides) {
    const auto& S = side.samples;
    const int m = static_cast<int>(S.size()) - 1;
    const double h = S[1].lambda - S[0].lambda;
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) {
      const double w = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      acc += w * F(S[k].x[0], S[k].x[1]) * S[k].v[1];
    }
    loop += acc * h / 3.0;
  }
  res.area = std::abs(loop);
  return res;
}

std::array<double, 2> tractrix_point(double chi, double R) {
  return {R / std::cosh(chi), R * (chi - std::tanh(chi))};
}

Chart minding_chart(double R) {
  if (!(R > 0.0)) throw DomainError("tractrix radius must be positive");
  Chart c;
  c.name = "minding";
  c.dim = 2;
  c.signature = {1, 1};
  const double R2 = R * R;
  c.metric = [R2](std::span<const Jet> x) {
    const Jet d[2] = {R2 * square(tanh(x[0])), R2 / square(cosh(x[0]))};
    return diagonal_metric(d);
  };
  c.domain = [](std::span<const double> x) { return std::abs(x[0]) >= 1e-6; };
  c.domain_text = "|chi| >= 1e-6 (cusp excluded)";
  return c;
}

}  // namespace pslab
