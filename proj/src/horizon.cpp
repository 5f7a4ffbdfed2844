#include "pslab/horizon.hpp"

#include <numbers>
#include <sstream>

#include "pslab/curvature.hpp"
#include "pslab/forms.hpp"

namespace pslab {

namespace {

using RadialFn = std::function<Jet(const Jet&)>;

// Static chart (t, r[, theta, phi]) with g = diag(gtt(r), grr(r), -A(r), -A(r) sin^2 theta).
Chart static_chart(std::string name, int dim, RadialFn gtt, RadialFn grr, RadialFn area,
                   std::function<bool(double)> radial_ok, std::string domain_text) {
  Chart c;
  c.name = std::move(name);
  c.dim = dim;
  c.signature.assign(static_cast<std::size_t>(dim), -1);
  c.signature[0] = 1;
  c.metric = [=](std::span<const Jet> x) {
    std::vector<Jet> d{gtt(x[1]), grr(x[1])};
    if (dim == 4) {
      const Jet A = area(x[1]);
      d.push_back(-1.0 * A);
      d.push_back(-1.0 * A * square(sin(x[2])));
    }
    return diagonal_metric(d);
  };
  c.domain = [radial_ok, dim](std::span<const double> x) {
    if (!radial_ok(x[1])) return false;
    return dim == 2 || std::abs(std::sin(x[2])) > kDomainMargin;
  };
  c.domain_text = std::move(domain_text);
  return c;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}

Chart rn_extremal_impl(double M, int dim) {
  require_positive(M, "mass");
  return static_chart(
      "rn-extremal", dim, [M](const Jet& r) { return square(1.0 - M / r); },
      [M](const Jet& r) { return -1.0 / square(1.0 - M / r); }, [](const Jet& r) { return square(r); },
      [M](double r) { return r / M - 1.0 > kDomainMargin; }, "r' > M");
}

Chart near_horizon_impl(double M, int dim) {
  require_positive(M, "mass");
  const double M2 = M * M;
  return static_chart(
      "near-horizon", dim, [M2](const Jet& r) { return square(r) / M2; },
      [M2](const Jet& r) { return -M2 / square(r); }, [M2](const Jet&) { return Jet(M2); },
      [](double r) { return r > kDomainMargin; }, "r > 0");
}

Chart br_minus_impl(double M, int dim) {
  require_positive(M, "mass");
  const double M2 = M * M;
  return static_chart(
      "br-minus", dim, [M2](const Jet& r) { return square(r) / M2 - 1.0; },
      [M2](const Jet& r) { return -1.0 / (square(r) / M2 - 1.0); }, [M2](const Jet&) { return Jet(M2); },
      [M](double r) { return r / M - 1.0 > kDomainMargin; }, "r > M");
}

Chart br_plus_impl(double M, int dim) {
  require_positive(M, "mass");
  const double M2 = M * M;
  return static_chart(
      "br-plus", dim, [M2](const Jet& r) { return 1.0 + square(r) / M2; },
      [M2](const Jet& r) { return -1.0 / (1.0 + square(r) / M2); }, [M2](const Jet&) { return Jet(M2); },
      [](double) { return true; }, "");
}

double half_angle_cos(double u, double v) { return std::cos(0.5 * (u - v)); }

void require_off_pole(double u, double v) {
  if (std::abs(half_angle_cos(u, v)) < kDomainMargin) throw DomainError("(u - v)/2 is at a pole of tan");
}

}  // namespace

Chart rn_extremal_chart(double M) { return rn_extremal_impl(M, 4); }
Chart near_horizon_chart(double M) { return near_horizon_impl(M, 4); }
Chart br_minus_chart(double M) { return br_minus_impl(M, 4); }
Chart br_plus_chart(double M) { return br_plus_impl(M, 4); }

Chart horizon_block_chart(std::string_view kind, double M) {
  if (kind == "rn-extremal") return rn_extremal_impl(M, 2);
  if (kind == "near-horizon" || kind == "br0") return near_horizon_impl(M, 2);
  if (kind == "br-minus" || kind == "br-") return br_minus_impl(M, 2);
  if (kind == "br-plus" || kind == "br+") return br_plus_impl(M, 2);
  throw DomainError("unknown horizon chart '" + std::string(kind) + "'");
}

std::string_view to_string(EmbeddingKind k) {
  switch (k) {
    case EmbeddingKind::BR0:
      return "br0";
    case EmbeddingKind::BRplus:
      return "br+";
    case EmbeddingKind::BRminus:
      return "br-";
  }
  return "?";
}

EmbeddingKind parse_embedding_kind(std::string_view s) {
  if (s == "br0") return EmbeddingKind::BR0;
  if (s == "br+" || s == "brplus") return EmbeddingKind::BRplus;
  if (s == "br-" || s == "brminus") return EmbeddingKind::BRminus;
  throw DomainError("unknown embedding '" + std::string(s) + "'");
}

std::string embedding_violation(EmbeddingKind kind, double M, double r, double t) {
  if (!(M > 0.0)) return "mass must be positive";
  if (!std::isfinite(r) || !std::isfinite(t)) return "coordinates must be finite";
  const double M2 = M * M;
  switch (kind) {
    case EmbeddingKind::BR0:
      if (!(r * r * t * t - M2 * M2 > kDomainMargin * M2 * M2)) return "br0 requires r^2 t^2 > M^4";
      return {};
    case EmbeddingKind::BRminus:
      if (!(r * r - M2 > kDomainMargin * M2)) return "br- requires r^2 > M^2";
      return {};
    case EmbeddingKind::BRplus:
      return {};
  }
  return {};
}

double horizon_quadric_residual(const std::array<double, 3>& p, double M) {
  return p[0] * p[0] - p[1] * p[1] + p[2] * p[2] - M * M;
}

TensorValue embedding_block_metric(EmbeddingKind kind, double M, double r, double t) {
  const std::string why = embedding_violation(kind, M, r, t);
  if (!why.empty()) throw DomainError(why);
  const double M2 = M * M;
  TensorValue g = TensorValue::lower(2, 2, {t, r});
  double f = 0.0;
  switch (kind) {
    case EmbeddingKind::BR0:
      g(0, 0) = r * r / M2;
      g(1, 1) = -M2 / (r * r);
      return g;
    case EmbeddingKind::BRplus:
      f = 1.0 + r * r / M2;
      break;
    case EmbeddingKind::BRminus:
      f = r * r / M2 - 1.0;
      break;
  }
  g(0, 0) = f;
  g(1, 1) = -1.0 / f;
  return g;
}

PenrosePoint penrose_map(double x, double t, double M) {
  require_positive(M, "mass");
  const double w = std::atan(x / M);
  const double s = t / M;
  const double two_pi = 2.0 * std::numbers::pi;
  double v = s - w;
  v -= two_pi * std::floor(v / two_pi);
  return {v + 2.0 * w, v};
}

std::array<double, 2> penrose_inverse(double u, double v, double M) {
  require_positive(M, "mass");
  require_off_pole(u, v);
  return {M * std::tan(0.5 * (u - v)), M * 0.5 * (u + v)};
}

double conformal_factor(double u, double v) {
  require_off_pole(u, v);
  const double t = std::tan(0.5 * (u - v));
  return -(1.0 + t * t);
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::I:
      return "I";
    case Region::II:
      return "II";
    case Region::III:
      return "III";
    case Region::Boundary:
      return "boundary";
  }
  return "?";
}

std::array<double, 3> penrose_ambient(double u, double v, double M) {
  require_off_pole(u, v);
  const double w = 0.5 * (u - v);
  const double s = 0.5 * (u + v);
  const double sec = 1.0 / std::cos(w);
  return {M * std::abs(sec) * std::sin(s), M * std::tan(w), M * std::abs(sec) * std::cos(s)};
}

Region region_classify(double u, double v, double M, double tol) {
  require_positive(M, "mass");
  require_off_pole(u, v);
  // Ambient point divided by sqrt(M^2 + x^2).
  const double w = 0.5 * (u - v);
  const double s = 0.5 * (u + v);
  const double xi = std::sin(s);
  const double eta = std::sin(w) * (std::cos(w) > 0.0 ? 1.0 : -1.0);
  const double zeta = std::cos(s);
  if (std::abs(eta - xi) <= tol || std::abs(eta + xi) <= tol) return Region::Boundary;
  if (eta > std::abs(xi)) return zeta > 0.0 ? Region::I : Region::II;
  return Region::III;
}

DyonicSolution dyonic_solution(double R_plus, double R_minus, double phi0) {
  require_positive(R_plus, "R+");
  if (!(R_minus >= 0.0) || !(R_minus <= R_plus)) throw DomainError("dyonic solution needs 0 <= R- <= R+");
  DyonicSolution s;
  s.R_plus = R_plus;
  s.R_minus = R_minus;
  s.phi0 = phi0;
  s.q = std::sqrt(R_plus * R_minus);
  s.M = 0.5 * (R_plus + 1.5 * R_minus);
  return s;
}

Chart DyonicSolution::chart() const {
  const double Rp = R_plus, Rm = R_minus;
  return static_chart(
      "dyonic", 4, [Rp](const Jet& r) { return 1.0 - Rp / r; },
      [Rp, Rm](const Jet& r) { return -1.0 / ((1.0 - Rp / r) * (1.0 - Rm / r)); },
      [](const Jet& r) { return square(r); }, [Rp](double r) { return r / Rp - 1.0 > kDomainMargin; }, "r > R+");
}

TensorValue DyonicSolution::metric(double t, double r, double theta, double phi) const {
  const double x[4] = {t, r, theta, phi};
  return eval_metric(chart(), x);
}

double DyonicSolution::dilaton(double r) const {
  if (!(r > R_plus)) throw DomainError("dyonic dilaton needs r > R+");
  return phi0 - 0.25 * std::log(1.0 - R_plus / r);
}

TensorValue DyonicSolution::field(double t, double r, double theta, double phi) const {
  const TensorValue g = metric(t, r, theta, phi);
  const double vol = std::sqrt(std::abs(determinant(g)));
  std::array<double, 4> u{}, v{};
  u[2] = 1.0 / std::sqrt(std::abs(g(2, 2).real()));
  v[3] = 1.0 / std::sqrt(std::abs(g(3, 3).real()));
  const double k = 2.0 * q / (std::sqrt(3.0) * r * r);
  TensorValue F = TensorValue::lower(4, 2, {t, r, theta, phi});
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const std::array<int, 4> idx{m, n, a, b};
          const int e = permutation_sign(idx);
          if (e) s += e * u[a] * v[b];
        }
      F(m, n) = k * vol * s;
    }
  return F;
}

double DyonicSolution::eta_of_r(double r) const {
  if (!(R_plus > R_minus)) throw DomainError("extremal variable needs R+ > R-");
  if (!(r >= R_plus)) throw DomainError("extremal variable needs r >= R+");
  return std::asinh(std::sqrt((r - R_plus) / (R_plus - R_minus)));
}

Chart dyonic_extremal_chart(double q) {
  require_positive(q, "charge");
  const double q2 = q * q;
  Chart c;
  c.name = "dyonic-extremal";
  c.dim = 4;
  c.signature = {1, -1, -1, -1};
  c.metric = [q2](std::span<const Jet> x) {
    const Jet d[4] = {4.0 * q2 * square(sinh(x[1])), Jet(-4.0 * q2), Jet(-q2), -q2 * square(sin(x[2]))};
    return diagonal_metric(d);
  };
  c.domain = [](std::span<const double> x) {
    return std::abs(std::sinh(x[1])) > kDomainMargin && std::abs(std::sin(x[2])) > kDomainMargin;
  };
  c.domain_text = "eta != 0 and sin(theta) != 0";
  return c;
}

JTSolution jt_solution(double Lambda, double a2, double phi0) {
  require_positive(Lambda, "Lambda");
  if (!std::isfinite(a2)) throw DomainError("a^2 must be finite");
  return {Lambda, a2, phi0};
}

Chart JTSolution::chart() const {
  const double L = Lambda, a = a2;
  return static_chart(
      "jt", 2, [L, a](const Jet& r) { return L * square(r) - a; },
      [L, a](const Jet& r) { return -1.0 / (L * square(r) - a); }, RadialFn{},
      [L, a](double r) { return r > 0.0 && L * r * r - a > kDomainMargin; }, "Lambda r^2 > a^2, r > 0");
}

double JTSolution::dilaton(double r) const {
  if (!(r > 0.0) || !(Lambda * r * r > a2)) throw DomainError("JT dilaton needs Lambda r^2 > a^2");
  return phi0 - 0.5 * std::log(std::sqrt(Lambda) * r);
}

}  // namespace pslab
