#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ustat/measure.hpp"

namespace ustat {

// Uniformly bounded orthonormal basis of L2(state space, F) whose element 0
// is the constant function 1. Every other element therefore has mean zero
// under F. Instances are immutable; concurrent reads are unrestricted.
class OrthonormalBasis {
 public:
  double evaluate(std::size_t index, double point) const {
    if (const auto* fin = std::get_if<Finite>(&impl_)) {
      if (index >= fin->values.size())
        throw std::invalid_argument("basis: index beyond finite basis size");
      const auto letter = static_cast<long long>(std::llround(point));
      if (letter < 0 || static_cast<std::size_t>(letter) >= fin->values.size() ||
          std::abs(point - static_cast<double>(letter)) > 1e-9)
        throw std::invalid_argument("basis: point is not a letter of the alphabet");
      return fin->values[index][static_cast<std::size_t>(letter)];
    }
    // Trigonometric system: 1, sqrt(2)cos(2*pi*k*t), sqrt(2)sin(2*pi*k*t).
    if (index == 0) return 1.0;
    const double k = static_cast<double>((index + 1) / 2);
    const double angle = 2.0 * M_PI * k * point;
    const double amp = std::sqrt(2.0);
    return (index % 2 == 1) ? amp * std::cos(angle) : amp * std::sin(angle);
  }

  double bound() const { return bound_; }
  const Measure& measure() const { return measure_; }

  // nullopt means every nonnegative index is usable.
  std::optional<std::size_t> max_usable_index() const {
    if (const auto* fin = std::get_if<Finite>(&impl_)) return fin->values.size() - 1;
    return std::nullopt;
  }

  bool index_usable(std::size_t index) const {
    const auto mx = max_usable_index();
    return !mx || index <= *mx;
  }

  // Value table e_i(x) of a finite basis; nullptr for the trig basis.
  const std::vector<std::vector<double>>* value_table() const {
    const auto* fin = std::get_if<Finite>(&impl_);
    return fin ? &fin->values : nullptr;
  }

  bool is_trig() const { return std::holds_alternative<Trig>(impl_); }

  friend OrthonormalBasis make_trig_basis();
  friend OrthonormalBasis make_finite_basis(std::vector<double> probabilities);

 private:
  struct Trig {};
  struct Finite {
    std::vector<std::vector<double>> values;  // values[i][x] = e_i(x)
  };

  OrthonormalBasis(Trig t, Measure m, double bound)
      : impl_(t), measure_(std::move(m)), bound_(bound) {}
  OrthonormalBasis(Finite f, Measure m, double bound)
      : impl_(std::move(f)), measure_(std::move(m)), bound_(bound) {}

  std::variant<Trig, Finite> impl_;
  Measure measure_;
  double bound_;
};

inline OrthonormalBasis make_trig_basis() {
  return OrthonormalBasis(OrthonormalBasis::Trig{}, uniform_unit_measure(), std::sqrt(2.0));
}

// Orthonormal basis on the alphabet {0,...,d-1} in L2(F), built by
// Gram–Schmidt from the family {1, 1_{x=0}, 1_{x=1}, ...} in alphabet order.
// Sign convention: the first nonzero value of every element is positive.
inline OrthonormalBasis make_finite_basis(std::vector<double> probabilities) {
  const Measure measure = finite_measure(std::move(probabilities));
  const auto& probs = std::get<FiniteAlphabet>(measure).probabilities;
  const std::size_t d = probs.size();

  auto dot = [&probs](const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t x = 0; x < probs.size(); ++x) s += probs[x] * u[x] * v[x];
    return s;
  };

  std::vector<std::vector<double>> basis;
  basis.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> v(d, 0.0);
    if (i == 0) {
      v.assign(d, 1.0);
    } else {
      v[i - 1] = 1.0;
    }
    // Two projection passes keep the Gram defect at the 1e-15 level.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : basis) {
        const double c = dot(v, e);
        for (std::size_t x = 0; x < d; ++x) v[x] -= c * e[x];
      }
    }
    const double norm = std::sqrt(dot(v, v));
    if (!(norm > 1e-14))
      throw std::invalid_argument("finite basis: Gram–Schmidt input is degenerate");
    for (auto& val : v) val /= norm;
    for (std::size_t x = 0; x < d; ++x) {
      if (std::abs(v[x]) > 1e-12) {
        if (v[x] < 0.0)
          for (auto& val : v) val = -val;
        break;
      }
    }
    basis.push_back(std::move(v));
  }

  double bound = 0.0;
  for (const auto& e : basis)
    for (double val : e) bound = std::max(bound, std::abs(val));
  return OrthonormalBasis(OrthonormalBasis::Finite{std::move(basis)}, measure, bound);
}

struct OrthonormalityReport {
  double max_defect = 0.0;              // max |<e_i, e_j> - delta_ij|
  std::size_t worst_i = 0, worst_j = 0;
  bool finite_values = true;            // false if any inner product was not finite
  double tolerance = 0.0;
  bool pass() const { return finite_values && max_defect <= tolerance; }
};

inline OrthonormalityReport check_orthonormality(
    const OrthonormalBasis& basis, std::size_t max_index, double tolerance,
    std::size_t quadrature_nodes = kDefaultQuadratureNodes) {
  if (!basis.index_usable(max_index))
    throw std::invalid_argument("check_orthonormality: max_index beyond usable range");
  const MeasureNodes nodes = measure_nodes(basis.measure(), quadrature_nodes);

  // Cache e_i at the nodes once; the Gram loop is then a plain dot product.
  std::vector<std::vector<double>> table(max_index + 1);
  for (std::size_t i = 0; i <= max_index; ++i) {
    table[i].resize(nodes.points.size());
    for (std::size_t a = 0; a < nodes.points.size(); ++a)
      table[i][a] = basis.evaluate(i, nodes.points[a]);
  }

  OrthonormalityReport report;
  report.tolerance = tolerance;
  for (std::size_t i = 0; i <= max_index; ++i) {
    for (std::size_t j = i; j <= max_index; ++j) {
      double g = 0.0;
      for (std::size_t a = 0; a < nodes.points.size(); ++a)
        g += nodes.weights[a] * table[i][a] * table[j][a];
      if (!std::isfinite(g)) {
        report.finite_values = false;
        report.worst_i = i;
        report.worst_j = j;
        continue;
      }
      const double defect = std::abs(g - (i == j ? 1.0 : 0.0));
      if (defect > report.max_defect) {
        report.max_defect = defect;
        report.worst_i = i;
        report.worst_j = j;
      }
    }
  }
  return report;
}

}  // namespace ustat
