#include "pslab/desitter.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pslab/curvature.hpp"
#include "pslab/errors.hpp"

namespace pslab {

namespace {

template <class F>
double integrate(F f, double a, double b) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-14);
}

void require_interval(const ScaleHistory& h, double t0, double t1) {
  if (!(t0 <= t1)) throw DomainError("redshift needs t0 <= t1");
  if (!h.contains(t0) || !h.contains(t1)) throw DomainError("times outside the scale history interval");
  if (!(h.scale(t0) > 0.0) || !(h.scale(t1) > 0.0)) throw DomainError("scale factor must be positive");
}

}  // namespace

double ScaleHistory::scale(double t) const { return R(Jet(t)).real(); }

double ScaleHistory::hubble(double t) const {
  const Jet r = R(Jet::variable(t, 0));
  return (r.d[0] / r.v).real();
}

ScaleHistory exponential_history(double H) {
  ScaleHistory h;
  h.R = [H](const Jet& t) { return exp(H * t); };
  h.H_user = [H](double) { return H; };
  return h;
}

ScaleHistory power_law_history(double p) {
  ScaleHistory h;
  h.R = [p](const Jet& t) { return pow(t, p); };
  h.t_min = 1e-12;
  h.H_user = [p](double t) { return p / t; };
  return h;
}

Chart rw_chart(const ScaleHistory& hist) {
  Chart c;
  c.name = "rw";
  c.dim = 4;
  c.signature = {1, -1, -1, -1};
  const double k = hist.k;
  c.metric = [R = hist.R, k](std::span<const Jet> x) {
    const Jet r2 = square(x[1]) + square(x[2]) + square(x[3]);
    const Jet s = -1.0 * square(R(x[0])) / square(1.0 + (k / 4.0) * r2);
    const Jet d[4] = {Jet(1.0), s, s, s};
    return diagonal_metric(d);
  };
  c.domain = [hist, k](std::span<const double> x) {
    if (!hist.contains(x[0]) || !(hist.scale(x[0]) > 0.0)) return false;
    const double r2 = x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    return std::abs(1.0 + k / 4.0 * r2) > kDomainMargin;
  };
  c.domain_text = "R(t) > 0 and 1 + k r^2/4 != 0";
  return c;
}

double comoving_distance(const ScaleHistory& hist, double t0, double t1) {
  require_interval(hist, t0, t1);
  return integrate([&](double t) { return 1.0 / hist.scale(t); }, t0, t1);
}

double redshift(const ScaleHistory& hist, double t0, double t1) {
  require_interval(hist, t0, t1);
  return hist.scale(t1) / hist.scale(t0);
}

double redshift_from_hubble(const ScaleHistory& hist, double t0, double t1) {
  require_interval(hist, t0, t1);
  return std::exp(integrate([&](double t) { return hist.hubble(t); }, t0, t1));
}

std::optional<double> hubble_mismatch(const ScaleHistory& hist, std::span<const double> times) {
  if (!hist.H_user) return std::nullopt;
  double m = 0.0;
  for (double t : times) m = std::max(m, std::abs(hist.hubble(t) - hist.H_user(t)));
  return m;
}

Chart steady_state_chart(double H, int dim) {
  if (!(H > 0.0)) throw DomainError("Hubble constant must be positive");
  if (dim != 2 && dim != 4) throw DimensionError("steady-state chart has dimension 2 or 4");
  Chart c;
  c.name = "steady-state";
  c.dim = dim;
  c.signature.assign(static_cast<std::size_t>(dim), -1);
  c.signature[0] = 1;
  const double s = 1.0 / (H * H);
  c.metric = [s, dim](std::span<const Jet> x) {
    std::vector<Jet> d(static_cast<std::size_t>(dim), -s * exp(2.0 * x[0]));
    d[0] = s;
    return diagonal_metric(d);
  };
  c.domain = [](std::span<const double>) { return true; };
  return c;
}

double ds2_residual(const std::array<double, 3>& p) {
  const auto& [xi, eta, zeta] = p;
  return eta * eta - xi * xi - zeta * zeta + 1.0;
}

LambdaFit verify_einstein_lambda(const Chart& chart, const std::vector<std::vector<double>>& grid) {
  std::vector<TensorValue> ric, met;
  double num = 0.0, den = 0.0;
  for (const auto& x : grid) {
    Geometry geo = geometry_at(chart, x);
    for (std::size_t i = 0; i < geo.ricci.components().size(); ++i) {
      num += (geo.ricci.components()[i] * std::conj(geo.metric.components()[i])).real();
      den += std::norm(geo.metric.components()[i]);
    }
    ric.push_back(std::move(geo.ricci));
    met.push_back(std::move(geo.metric));
  }
  LambdaFit fit;
  if (den == 0.0) throw SingularMetricError("empty grid or zero metric");
  fit.c = num / den;
  for (std::size_t p = 0; p < ric.size(); ++p)
    fit.residual = std::max(fit.residual, max_abs_diff(ric[p], scaled(met[p], fit.c)));
  return fit;
}

}  // namespace pslab
