#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ustat {

inline constexpr std::size_t kDefaultQuadratureNodes = 4096;

struct QuadratureRule {
  std::vector<double> nodes;    // in (0, 1)
  std::vector<double> weights;  // sum to 1
};

namespace detail {

// Gauss–Legendre nodes/weights on [-1, 1], found by Newton iteration on P_n.
inline void gauss_legendre(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Chebyshev-based initial guess for the i-th root.
    double z = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - static_cast<double>(j) * p2) /
             (static_cast<double>(j) + 1.0);
      }
      pp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

}  // namespace detail

// Composite 16-point Gauss–Legendre rule on [0, 1]. `total_nodes` is rounded
// up to a multiple of 16. Smooth integrands converge to machine precision
// well before the 4096-node default.
inline QuadratureRule unit_interval_rule(std::size_t total_nodes = kDefaultQuadratureNodes) {
  constexpr std::size_t kPanelOrder = 16;
  if (total_nodes == 0) throw std::invalid_argument("quadrature: need at least one node");
  const std::size_t panels = (total_nodes + kPanelOrder - 1) / kPanelOrder;

  static thread_local std::vector<double> gx, gw;
  if (gx.empty()) detail::gauss_legendre(kPanelOrder, gx, gw);

  QuadratureRule rule;
  rule.nodes.reserve(panels * kPanelOrder);
  rule.weights.reserve(panels * kPanelOrder);
  const double h = 1.0 / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = static_cast<double>(p) * h;
    for (std::size_t j = 0; j < kPanelOrder; ++j) {
      rule.nodes.push_back(a + 0.5 * h * (gx[j] + 1.0));
      rule.weights.push_back(0.5 * h * gw[j]);
    }
  }
  return rule;
}

}  // namespace ustat
