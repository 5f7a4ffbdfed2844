#include "pslab/forms.hpp"

#include <array>

#include "pslab/errors.hpp"

namespace pslab {

namespace {

constexpr double kAntisymTol = 1e-12;

void require_two_form(const TensorValue& F) {
  if (F.rank() != 2) throw ShapeError("expected a two-form");
  double scale = std::max(1.0, max_abs(F));
  if (antisymmetry_defect(F) > kAntisymTol * scale) throw ShapeError("two-form is not antisymmetric");
}

}  // namespace

int permutation_sign(std::span<const int> idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) sign = -sign;
    }
  return sign;
}

TensorValue raise_both(const TensorValue& ginv, const TensorValue& t) {
  const int n = t.dim();
  TensorValue out(n, {Variance::Upper, Variance::Upper}, t.point());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cplx s = 0.0;
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) s += ginv(a, c) * ginv(b, d) * t(c, d);
      out(a, b) = s;
    }
  return out;
}

cplx trace(const TensorValue& ginv, const TensorValue& t) {
  cplx s = 0.0;
  for (int a = 0; a < t.dim(); ++a)
    for (int b = 0; b < t.dim(); ++b) s += ginv(a, b) * t(a, b);
  return s;
}

TensorValue hodge_dual(const TensorValue& g, const TensorValue& F) {
  if (g.dim() != 4 || F.dim() != 4) throw DimensionError("Hodge dual implemented for dimension 4");
  require_two_form(F);
  const TensorValue ginv = inverse_metric(g);
  const TensorValue Fu = raise_both(ginv, F);
  const cplx vol = std::sqrt(-determinant(g));
  TensorValue out = TensorValue::lower(4, 2, F.point());
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      if (m == n) continue;
      cplx s = 0.0;
      for (int r = 0; r < 4; ++r)
        for (int q = 0; q < 4; ++q) {
          const std::array<int, 4> idx{m, n, r, q};
          const int e = permutation_sign(idx);
          if (e != 0) s += double(e) * Fu(r, q);
        }
      out(m, n) = 0.5 * vol * s;
    }
  return out;
}

TensorValue hodge_dual(const Chart& chart, const TensorValue& F, std::span<const double> x) {
  if (chart.dim != 4) throw DimensionError("Hodge dual implemented for dimension 4");
  return hodge_dual(eval_metric(chart, x), F);
}

TensorValue exterior_derivative(const TensorField& form, std::span<const double> x) {
  const JetTensor w = form(seed(x));
  const int k = w.rank();
  if (k > 2) throw ShapeError("exterior derivative implemented for forms of degree 0, 1, 2");
  const int n = static_cast<int>(x.size());
  TensorValue out = TensorValue::lower(n, k + 1, {x.begin(), x.end()});
  std::vector<int> rest(static_cast<std::size_t>(k));
  for_each_index(k + 1, n, [&](std::span<const int> I) {
    cplx s = 0.0;
    for (int p = 0; p <= k; ++p) {
      int q = 0;
      for (int r = 0; r <= k; ++r)
        if (r != p) rest[q++] = I[r];
      const cplx term = w.at(rest).d[I[p]];
      s += (p % 2 == 0) ? term : -term;
    }
    out.at(I) = s;
  });
  return out;
}

TensorField exterior_derivative_field(TensorField form) {
  return [form = std::move(form)](std::span<const Jet> xj) {
    std::vector<double> x;
    for (const auto& c : xj) x.push_back(c.real());
    const JetTensor w = form(seed(x));
    const int k = w.rank();
    if (k > 2) throw ShapeError("exterior derivative implemented for forms of degree 0, 1, 2");
    const int n = static_cast<int>(x.size());
    JetTensor out = JetTensor::lower(n, k + 1, x);
    std::vector<int> rest(static_cast<std::size_t>(k));
    for_each_index(k + 1, n, [&](std::span<const int> I) {
      Jet s;
      for (int p = 0; p <= k; ++p) {
        int q = 0;
        for (int r = 0; r <= k; ++r)
          if (r != p) rest[q++] = I[r];
        const Jet& src = w.at(rest);
        const double sign = (p % 2 == 0) ? 1.0 : -1.0;
        s.v += sign * src.d[I[p]];
        for (int m = 0; m < n; ++m) s.d[m] += sign * src.h[I[p]][m];
      }
      out.at(I) = s;
    });
    return out;
  };
}

cplx bilinear_scalar(const TensorValue& F, const TensorValue& G, const TensorValue& g) {
  require_two_form(F);
  require_two_form(G);
  const TensorValue Gu = raise_both(inverse_metric(g), G);
  cplx s = 0.0;
  for (int a = 0; a < F.dim(); ++a)
    for (int b = 0; b < F.dim(); ++b) s += F(a, b) * Gu(a, b);
  return 0.25 * s;
}

TensorValue bilinear_tensor(const TensorValue& F, const TensorValue& G, const TensorValue& g) {
  require_two_form(F);
  require_two_form(G);
  const TensorValue ginv = inverse_metric(g);
  const TensorValue sF = hodge_dual(g, F);
  const TensorValue sG = hodge_dual(g, G);
  const TensorValue Gm = mixed(ginv, G);
  const TensorValue sGm = mixed(ginv, sG);
  const int n = F.dim();
  TensorValue out = TensorValue::lower(n, 2, F.point());
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) {
      cplx s = 0.0;
      for (int v = 0; v < n; ++v) s += F(m, v) * Gm(v, k) + sF(m, v) * sGm(v, k);
      out(m, k) = -0.5 * s;
    }
  return out;
}

TensorValue wedge_components(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw ShapeError("covectors differ in dimension");
  const int n = static_cast<int>(a.size());
  TensorValue out = TensorValue::lower(n, 2);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) out(m, k) = a[m] * b[k] - a[k] * b[m];
  return out;
}

}  // namespace pslab
