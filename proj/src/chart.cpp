#include "pslab/chart.hpp"

#include <sstream>

#include "pslab/errors.hpp"

namespace pslab {

bool Chart::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim) return false;
  for (double c : x)
    if (!std::isfinite(c)) return false;
  return !domain || domain(x);
}

void Chart::require(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim) {
    std::ostringstream os;
    os << "chart " << name << " expects " << dim << " coordinates, got " << x.size();
    throw DimensionError(os.str());
  }
  if (!contains(x)) {
    std::ostringstream os;
    os << "point (";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << ") outside chart " << name;
    if (!domain_text.empty()) os << " (requires " << domain_text << ")";
    throw DomainError(os.str());
  }
}

JetTensor diagonal_metric(std::span<const Jet> diag) {
  auto g = JetTensor::lower(static_cast<int>(diag.size()), 2);
  for (std::size_t i = 0; i < diag.size(); ++i) g(i, i) = diag[i];
  return g;
}

Chart euclidean_chart(int dim) {
  Chart c;
  c.name = "euclidean";
  c.dim = dim;
  c.metric = [dim](std::span<const Jet>) {
    std::vector<Jet> d(static_cast<std::size_t>(dim), Jet(1.0));
    return diagonal_metric(d);
  };
  c.domain = [](std::span<const double>) { return true; };
  c.signature.assign(static_cast<std::size_t>(dim), 1);
  return c;
}

Chart minkowski_chart() {
  Chart c;
  c.name = "minkowski";
  c.dim = 4;
  c.metric = [](std::span<const Jet>) {
    const Jet d[4] = {1.0, -1.0, -1.0, -1.0};
    return diagonal_metric(d);
  };
  c.domain = [](std::span<const double>) { return true; };
  c.signature = {1, -1, -1, -1};
  return c;
}

Chart scaled_chart(const Chart& c, double alpha) {
  Chart s = c;
  s.name = c.name + "*scaled";
  s.metric = [m = c.metric, alpha](std::span<const Jet> x) {
    JetTensor g = m(x);
    for (auto& e : g.components()) e *= alpha;
    return g;
  };
  if (alpha < 0)
    for (int& sg : s.signature) sg = -sg;
  return s;
}

TensorValue pullback_flat(const JetMap& embedding, std::span<const int> ambient_signs,
                          std::span<const double> point) {
  const int n = static_cast<int>(point.size());
  const auto x = seed(point);
  const auto X = embedding(x);
  if (X.size() != ambient_signs.size()) throw ShapeError("embedding and ambient metric disagree in dimension");
  TensorValue g = TensorValue::lower(n, 2, {point.begin(), point.end()});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t a = 0; a < X.size(); ++a) s += double(ambient_signs[a]) * X[a].d[i] * X[a].d[j];
      g(i, j) = s;
    }
  return g;
}

TensorValue pullback_chart(const Chart& target, const JetMap& map, std::span<const double> point) {
  const int n = static_cast<int>(point.size());
  const auto x = seed(point);
  const auto y = map(x);
  if (static_cast<int>(y.size()) != target.dim) throw ShapeError("map lands in a chart of different dimension");
  std::vector<double> yv;
  for (const auto& e : y) yv.push_back(e.real());
  target.require(yv);
  const JetTensor gt = target.metric(constants(yv));
  TensorValue g = TensorValue::lower(n, 2, {point.begin(), point.end()});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int a = 0; a < target.dim; ++a)
        for (int b = 0; b < target.dim; ++b) s += y[a].d[i] * y[b].d[j] * gt(a, b).v;
      g(i, j) = s;
    }
  return g;
}

}  // namespace pslab
