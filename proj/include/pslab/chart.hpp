#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pslab/jet.hpp"
#include "pslab/tensor.hpp"

namespace pslab {

// Metric components as functions of (jet) coordinates. Returns a rank-2
// lower tensor of jets.
using MetricFn = std::function<JetTensor(std::span<const Jet>)>;
using DomainFn = std::function<bool(std::span<const double>)>;

// Maps between coordinate systems or into an ambient space, on jets.
using JetMap = std::function<std::vector<Jet>(std::span<const Jet>)>;

// Margin used to keep evaluation points off coordinate degeneracies.
inline constexpr double kDomainMargin = 1e-9;

struct Chart {
  std::string name;
  int dim = 0;
  MetricFn metric;
  DomainFn domain;
  std::vector<int> signature;
  std::string domain_text;

  bool contains(std::span<const double> x) const;
  // Throws DomainError (or DimensionError for a wrong tuple length).
  void require(std::span<const double> x) const;
};

// Sets g(i, j) and g(j, i) together so metrics are symmetric by construction.
inline void set_sym(JetTensor& g, int i, int j, const Jet& v) {
  g(i, j) = v;
  g(j, i) = v;
}

// Diagonal metric with the given jet entries.
JetTensor diagonal_metric(std::span<const Jet> diag);

Chart euclidean_chart(int dim);
Chart minkowski_chart();  // (+,-,-,-)

// Chart with metric multiplied by alpha.
Chart scaled_chart(const Chart& c, double alpha);

// Pullback of a flat diagonal ambient metric through `embedding`.
TensorValue pullback_flat(const JetMap& embedding, std::span<const int> ambient_signs,
                          std::span<const double> point);

// Pullback of `target`'s metric through a coordinate map into `target`.
TensorValue pullback_chart(const Chart& target, const JetMap& map, std::span<const double> point);

}  // namespace pslab
