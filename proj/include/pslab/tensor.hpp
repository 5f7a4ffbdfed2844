#pragma once

// Dense tensors at a point, with per-index variance labels.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pslab/errors.hpp"
#include "pslab/jet.hpp"

namespace pslab {

enum class Variance : std::uint8_t { Upper, Lower };

template <class T>
class BasicTensor {
 public:
  BasicTensor() = default;

  BasicTensor(int dim, std::vector<Variance> variances, std::vector<double> point = {})
      : dim_(dim), variances_(std::move(variances)), point_(std::move(point)) {
    if (dim <= 0) throw DimensionError("tensor dimension must be positive");
    std::size_t n = 1;
    for (std::size_t r = 0; r < variances_.size(); ++r) n *= static_cast<std::size_t>(dim_);
    components_.assign(n, T{});
  }

  static BasicTensor lower(int dim, int rank, std::vector<double> point = {}) {
    return BasicTensor(dim, std::vector<Variance>(static_cast<std::size_t>(rank), Variance::Lower),
                       std::move(point));
  }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(variances_.size()); }
  const std::vector<Variance>& variances() const { return variances_; }
  const std::vector<double>& point() const { return point_; }
  void set_point(std::vector<double> p) { point_ = std::move(p); }

  std::span<T> components() { return components_; }
  std::span<const T> components() const { return components_; }

  template <class... I>
  T& operator()(I... idx) {
    return components_[offset(idx...)];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return components_[offset(idx...)];
  }

  T& at(std::span<const int> idx) { return components_[offset_of(idx)]; }
  const T& at(std::span<const int> idx) const { return components_[offset_of(idx)]; }

 private:
  template <class... I>
  std::size_t offset(I... idx) const {
    assert(sizeof...(I) == variances_.size());
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return off;
  }
  std::size_t offset_of(std::span<const int> idx) const {
    assert(idx.size() == variances_.size());
    std::size_t off = 0;
    for (int i : idx) off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    return off;
  }

  int dim_ = 0;
  std::vector<Variance> variances_;
  std::vector<double> point_;
  std::vector<T> components_;
};

using TensorValue = BasicTensor<cplx>;
using JetTensor = BasicTensor<Jet>;

// Visits every multi-index of the given rank over 0..dim-1 in row-major order.
template <class F>
void for_each_index(int rank, int dim, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(rank), 0);
  if (rank == 0) {
    f(std::span<const int>(idx));
    return;
  }
  while (true) {
    f(std::span<const int>(idx));
    int r = rank - 1;
    while (r >= 0 && ++idx[static_cast<std::size_t>(r)] == dim) {
      idx[static_cast<std::size_t>(r)] = 0;
      --r;
    }
    if (r < 0) return;
  }
}

// Strips derivative parts.
inline TensorValue values_of(const JetTensor& t) {
  TensorValue out(t.dim(), t.variances(), t.point());
  auto src = t.components();
  auto dst = out.components();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i].v;
  return out;
}

inline double max_abs(const TensorValue& t) {
  double m = 0.0;
  for (const auto& c : t.components()) m = std::max(m, std::abs(c));
  return m;
}

inline double max_abs_diff(const TensorValue& a, const TensorValue& b) {
  if (a.components().size() != b.components().size()) throw ShapeError("tensor shapes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.components().size(); ++i)
    m = std::max(m, std::abs(a.components()[i] - b.components()[i]));
  return m;
}

inline TensorValue scaled(TensorValue t, cplx s) {
  for (auto& c : t.components()) c *= s;
  return t;
}

inline TensorValue conjugated(TensorValue t) {
  for (auto& c : t.components()) c = std::conj(c);
  return t;
}

inline double antisymmetry_defect(const TensorValue& f) {
  if (f.rank() != 2) throw ShapeError("expected a rank-2 tensor");
  double m = 0.0;
  for (int i = 0; i < f.dim(); ++i)
    for (int j = 0; j < f.dim(); ++j) m = std::max(m, std::abs(f(i, j) + f(j, i)));
  return m;
}

}  // namespace pslab
