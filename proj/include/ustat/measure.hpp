#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ustat/quadrature.hpp"

namespace ustat {

// Reference distributions for the two supported state spaces: the uniform
// law on [0,1] and a finite alphabet {0, ..., d-1} with a probability vector.
struct UniformUnit {};

struct FiniteAlphabet {
  std::vector<double> probabilities;
};

using Measure = std::variant<UniformUnit, FiniteAlphabet>;

inline Measure uniform_unit_measure() { return UniformUnit{}; }

inline Measure finite_measure(std::vector<double> probabilities) {
  if (probabilities.size() < 2)
    throw std::invalid_argument("finite measure: alphabet size must be >= 2");
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p > 0.0)) throw std::invalid_argument("finite measure: probabilities must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("finite measure: probabilities must sum to 1");
  return FiniteAlphabet{std::move(probabilities)};
}

inline bool is_finite_alphabet(const Measure& m) {
  return std::holds_alternative<FiniteAlphabet>(m);
}

inline std::size_t alphabet_size(const Measure& m) {
  return is_finite_alphabet(m) ? std::get<FiniteAlphabet>(m).probabilities.size() : 0;
}

inline bool same_measure(const Measure& a, const Measure& b, double tol = 1e-12) {
  if (a.index() != b.index()) return false;
  if (!is_finite_alphabet(a)) return true;
  const auto& pa = std::get<FiniteAlphabet>(a).probabilities;
  const auto& pb = std::get<FiniteAlphabet>(b).probabilities;
  if (pa.size() != pb.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i)
    if (std::abs(pa[i] - pb[i]) > tol) return false;
  return true;
}

// Discrete node/weight view of a measure: exact atoms for finite alphabets,
// a composite Gauss–Legendre rule for the uniform law. All expectations in
// the library are weighted sums over such a view.
struct MeasureNodes {
  std::vector<double> points;
  std::vector<double> weights;
};

inline MeasureNodes measure_nodes(const Measure& m,
                                  std::size_t quadrature_nodes = kDefaultQuadratureNodes) {
  MeasureNodes out;
  if (is_finite_alphabet(m)) {
    const auto& probs = std::get<FiniteAlphabet>(m).probabilities;
    out.points.reserve(probs.size());
    for (std::size_t x = 0; x < probs.size(); ++x) out.points.push_back(static_cast<double>(x));
    out.weights = probs;
  } else {
    QuadratureRule rule = unit_interval_rule(quadrature_nodes);
    out.points = std::move(rule.nodes);
    out.weights = std::move(rule.weights);
  }
  return out;
}

inline double expect(const Measure& m, const std::function<double(double)>& g,
                     std::size_t quadrature_nodes = kDefaultQuadratureNodes) {
  const MeasureNodes nodes = measure_nodes(m, quadrature_nodes);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.points.size(); ++i)
    acc += nodes.weights[i] * g(nodes.points[i]);
  return acc;
}

}  // namespace ustat
