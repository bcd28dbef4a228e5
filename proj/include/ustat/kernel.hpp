#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ustat/accumulator.hpp"
#include "ustat/basis.hpp"
#include "ustat/measure.hpp"
#include "ustat/tensor.hpp"

namespace ustat {

// Symmetric-domain kernel f(t1,...,tm) together with the marginal law of its
// arguments. A kernel may carry the coefficient tensor + basis it was built
// from; kernels built that way are canonical by construction.
class Kernel {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  struct SeriesData {
    CoefficientTensor tensor;
    OrthonormalBasis basis;
  };

  Kernel(std::size_t order, Measure measure, Evaluator evaluator,
         std::shared_ptr<const SeriesData> series = nullptr)
      : order_(order),
        measure_(std::move(measure)),
        evaluator_(std::move(evaluator)),
        series_(std::move(series)) {
    if (order_ == 0) throw std::invalid_argument("kernel: order must be >= 1");
    if (!evaluator_) throw std::invalid_argument("kernel: evaluator required");
  }

  std::size_t order() const { return order_; }
  const Measure& measure() const { return measure_; }

  double operator()(std::span<const double> points) const {
    if (points.size() != order_)
      throw std::invalid_argument("kernel: wrong number of arguments");
    return evaluator_(points);
  }

  double evaluate(std::initializer_list<double> points) const {
    return (*this)(std::span<const double>(points.begin(), points.size()));
  }

  const CoefficientTensor* tensor() const { return series_ ? &series_->tensor : nullptr; }
  const OrthonormalBasis* series_basis() const { return series_ ? &series_->basis : nullptr; }

 private:
  std::size_t order_;
  Measure measure_;
  Evaluator evaluator_;
  std::shared_ptr<const SeriesData> series_;
};

// Exact finite-sum kernel  f(t) = sum_I f_I prod_k e_{I_k}(t_k).
// Index 0 never occurs (the tensor rejects it), so the result is canonical.
inline Kernel kernel_from_coefficients(const CoefficientTensor& tensor,
                                       const OrthonormalBasis& basis) {
  if (!basis.index_usable(tensor.max_component()))
    throw std::invalid_argument("kernel_from_coefficients: tensor index beyond basis range");
  auto data = std::make_shared<const Kernel::SeriesData>(Kernel::SeriesData{tensor, basis});
  const std::size_t m = tensor.order();
  auto eval = [data](std::span<const double> t) {
    CompensatedSum acc;
    for (const auto& [index, value] : data->tensor.entries()) {
      double prod = value;
      for (std::size_t k = 0; k < index.size(); ++k)
        prod *= data->basis.evaluate(index[k], t[k]);
      acc.add(prod);
    }
    return acc.value();
  };
  return Kernel(m, basis.measure(), std::move(eval), std::move(data));
}

namespace detail {

inline std::size_t default_nodes_per_axis(std::size_t order) {
  if (order <= 1) return kDefaultQuadratureNodes;
  if (order == 2) return 1024;
  return 128;
}

struct PointVecHash {
  std::size_t operator()(const std::vector<double>& v) const {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (double d : v) {
      std::uint64_t bits;
      static_assert(sizeof(bits) == sizeof(d));
      std::memcpy(&bits, &d, sizeof(bits));
      for (int s = 0; s < 64; s += 8) {
        h ^= (bits >> s) & 0xFFu;
        h *= 0x100000001B3ull;
      }
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace detail

// Expansion coefficients f_I = E[ f(X*_1..X*_m) prod_k e_{I_k}(X*_k) ] for
// all components of I in [1, max_index], via tensor-product quadrature /
// exact alphabet sums. Entries below kCoefficientDropThreshold are dropped.
inline CoefficientTensor coefficients_from_kernel(const Kernel& kernel,
                                                  const OrthonormalBasis& basis,
                                                  std::uint32_t max_index,
                                                  std::size_t nodes_per_axis = 0) {
  if (!same_measure(kernel.measure(), basis.measure()))
    throw std::invalid_argument("coefficients_from_kernel: kernel/basis measure mismatch");
  if (max_index == 0)
    throw std::invalid_argument("coefficients_from_kernel: max_index must be >= 1");
  if (!basis.index_usable(max_index))
    throw std::invalid_argument("coefficients_from_kernel: max_index beyond basis range");
  const std::size_t m = kernel.order();
  if (nodes_per_axis == 0) nodes_per_axis = detail::default_nodes_per_axis(m);

  const MeasureNodes nodes = measure_nodes(basis.measure(), nodes_per_axis);
  const std::size_t q = nodes.points.size();

  // Weighted basis table. Row i holds w_a * e_i(t_a); contracting an axis of
  // the kernel value grid with row i integrates that axis against e_i.
  const std::size_t idx_count = max_index;  // indices 1..max_index
  std::vector<std::vector<double>> wb(idx_count, std::vector<double>(q));
  for (std::uint32_t i = 1; i <= max_index; ++i)
    for (std::size_t a = 0; a < q; ++a)
      wb[i - 1][a] = nodes.weights[a] * basis.evaluate(i, nodes.points[a]);

  // Kernel values on the full product grid, flattened with the last axis
  // fastest.
  std::size_t total = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (total > (std::size_t{1} << 28) / q)
      throw std::invalid_argument("coefficients_from_kernel: node grid too large");
    total *= q;
  }
  std::vector<double> values(total);
  {
    std::vector<double> pt(m, 0.0);
    std::vector<std::size_t> digits(m, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rest = flat;
      for (std::size_t k = m; k-- > 0;) {
        digits[k] = rest % q;
        rest /= q;
      }
      for (std::size_t k = 0; k < m; ++k) pt[k] = nodes.points[digits[k]];
      values[flat] = kernel(pt);
    }
  }

  // Contract axes one at a time (last axis first). After step s the buffer
  // has shape q^(m-s) x idx_count^s with coefficient axes fastest.
  std::vector<double> buf = std::move(values);
  std::size_t lead = total;  // product of remaining node axes
  std::size_t coef = 1;      // product of contracted coefficient axes
  for (std::size_t s = 0; s < m; ++s) {
    lead /= q;
    std::vector<double> next(lead * idx_count * coef, 0.0);
    for (std::size_t l = 0; l < lead; ++l) {
      for (std::size_t a = 0; a < q; ++a) {
        const double* src = &buf[(l * q + a) * coef];
        for (std::size_t i = 0; i < idx_count; ++i) {
          const double w = wb[i][a];
          double* dst = &next[(l * idx_count + i) * coef];
          for (std::size_t c = 0; c < coef; ++c) dst[c] += w * src[c];
        }
      }
    }
    buf = std::move(next);
    coef *= idx_count;
  }

  // buf now has shape idx_count^m; the last-contracted axis (original axis
  // m-1) is the fastest digit, so digits map to coordinates back-to-front.
  CoefficientTensor out(m);
  std::vector<std::uint32_t> index(m, 1);
  for (std::size_t flat = 0; flat < buf.size(); ++flat) {
    std::size_t rest = flat;
    for (std::size_t k = 0; k < m; ++k) {
      index[m - 1 - k] = static_cast<std::uint32_t>(rest % idx_count) + 1;
      rest /= idx_count;
    }
    if (std::abs(buf[flat]) >= kCoefficientDropThreshold) out.set(index, buf[flat]);
  }
  return out;
}

inline double coefficient_norm(const CoefficientTensor& tensor, double p) {
  return tensor.norm_sum(p);
}

// Max over coordinates k and grid assignments of the other coordinates of
// |E_{X_k} f|. Zero (up to quadrature noise) iff the kernel is canonical.
inline double canonicality_defect(const Kernel& kernel, std::size_t grid_per_axis = 64,
                                  std::size_t quadrature_nodes = kDefaultQuadratureNodes) {
  const std::size_t m = kernel.order();
  const MeasureNodes nodes = measure_nodes(kernel.measure(), quadrature_nodes);

  // Evaluation grid for the free coordinates: the full alphabet, or a
  // uniform grid on [0,1] including both endpoints.
  std::vector<double> grid;
  if (is_finite_alphabet(kernel.measure())) {
    for (std::size_t x = 0; x < alphabet_size(kernel.measure()); ++x)
      grid.push_back(static_cast<double>(x));
  } else {
    if (grid_per_axis < 2) grid_per_axis = 2;
    for (std::size_t g = 0; g < grid_per_axis; ++g)
      grid.push_back(static_cast<double>(g) / static_cast<double>(grid_per_axis - 1));
  }

  double worst = 0.0;
  std::vector<double> pt(m, 0.0);
  std::vector<std::size_t> digits(m > 1 ? m - 1 : 0, 0);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t combos = m == 1 ? 1 : [&] {
      std::size_t c = 1;
      for (std::size_t s = 0; s + 1 < m; ++s) c *= grid.size();
      return c;
    }();
    for (std::size_t flat = 0; flat < combos; ++flat) {
      std::size_t rest = flat;
      for (auto& d : digits) {
        d = rest % grid.size();
        rest /= grid.size();
      }
      std::size_t slot = 0;
      for (std::size_t c = 0; c < m; ++c)
        if (c != k) pt[c] = grid[digits[slot++]];
      double cond = 0.0;
      for (std::size_t a = 0; a < nodes.points.size(); ++a) {
        pt[k] = nodes.points[a];
        cond += nodes.weights[a] * kernel(pt);
      }
      worst = std::max(worst, std::abs(cond));
    }
  }
  return worst;
}

namespace detail {

// Top-order projection prod_k (identity - E_k) applied to a kernel, realized
// by inclusion–exclusion over the subset of integrated-out coordinates.
// Partial integrals are memoized per subset, keyed by the fixed coordinates;
// evaluation patterns with repeated points (nested quadrature, grids) hit the
// cache almost always.
class HoeffdingProjection {
 public:
  HoeffdingProjection(Kernel base, std::size_t nodes_per_axis)
      : base_(std::move(base)),
        m_(base_.order()),
        nodes_(measure_nodes(base_.measure(), nodes_per_axis)) {
    if (m_ > 8)
      throw std::invalid_argument("hoeffding_project: order too large for projection");
    caches_.resize(std::size_t{1} << m_);
    const std::uint32_t full = static_cast<std::uint32_t>((std::size_t{1} << m_) - 1);
    full_integral_ = subset_integral(full, std::vector<double>(m_, 0.0));
    if (!std::isfinite(full_integral_))
      throw std::runtime_error("hoeffding_project: quadrature produced a non-finite value");
  }

  double operator()(std::span<const double> t) const {
    const std::uint32_t full = static_cast<std::uint32_t>((std::size_t{1} << m_) - 1);
    double out = base_(t);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      const double term = mask == full ? full_integral_ : cached_integral(mask, t);
      out += (std::popcount(mask) % 2 == 1) ? -term : term;
    }
    return out;
  }

 private:
  double cached_integral(std::uint32_t mask, std::span<const double> t) const {
    std::vector<double> key;
    key.reserve(m_);
    for (std::size_t k = 0; k < m_; ++k)
      if (!(mask & (1u << k))) key.push_back(t[k]);
    {
      std::scoped_lock lock(mutex_);
      const auto it = caches_[mask].find(key);
      if (it != caches_[mask].end()) return it->second;
    }
    std::vector<double> pt(t.begin(), t.end());
    const double value = subset_integral(mask, pt);
    std::scoped_lock lock(mutex_);
    caches_[mask].emplace(std::move(key), value);
    return value;
  }

  // Integrates the coordinates in `mask`; the rest are taken from `pt`.
  double subset_integral(std::uint32_t mask, std::vector<double> pt) const {
    std::vector<std::size_t> coords;
    for (std::size_t k = 0; k < m_; ++k)
      if (mask & (1u << k)) coords.push_back(k);
    const std::size_t q = nodes_.points.size();
    std::vector<std::size_t> digits(coords.size(), 0);
    double acc = 0.0;
    while (true) {
      double w = 1.0;
      for (std::size_t s = 0; s < coords.size(); ++s) {
        pt[coords[s]] = nodes_.points[digits[s]];
        w *= nodes_.weights[digits[s]];
      }
      acc += w * base_(pt);
      std::size_t s = 0;
      for (; s < digits.size(); ++s) {
        if (++digits[s] < q) break;
        digits[s] = 0;
      }
      if (s == digits.size()) break;
    }
    return acc;
  }

  Kernel base_;
  std::size_t m_;
  MeasureNodes nodes_;
  double full_integral_ = 0.0;
  mutable std::vector<std::unordered_map<std::vector<double>, double, PointVecHash>> caches_;
  mutable std::mutex mutex_;
};

}  // namespace detail

// Canonical projection of a bounded kernel. Idempotent: already-canonical
// kernels come back unchanged up to quadrature noise.
inline Kernel hoeffding_project(const Kernel& kernel, std::size_t nodes_per_axis = 0) {
  if (nodes_per_axis == 0) nodes_per_axis = kernel.order() <= 2 ? 512 : 96;
  auto proj = std::make_shared<detail::HoeffdingProjection>(kernel, nodes_per_axis);
  return Kernel(kernel.order(), kernel.measure(),
                [proj](std::span<const double> t) { return (*proj)(t); });
}

}  // namespace ustat
