#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace ustat {

// Threshold below which expansion coefficients are dropped. Declared once so
// reported p-norms (p < 1 amplifies tiny entries) stay reproducible.
inline constexpr double kCoefficientDropThreshold = 1e-12;

// Sparse order-m coefficient array f_{i1..im} indexed by m-tuples of
// positive integers. Index 0 is rejected: the constant basis element never
// appears in the expansion of a canonical kernel. Entries iterate in
// lexicographic index order (std::map key order), which downstream code
// relies on for reproducible accumulation.
class CoefficientTensor {
 public:
  using Index = std::vector<std::uint32_t>;

  explicit CoefficientTensor(std::size_t order) : order_(order) {
    if (order == 0) throw std::invalid_argument("tensor: order must be >= 1");
  }

  std::size_t order() const { return order_; }

  void set(Index index, double value) {
    validate(index);
    if (value == 0.0) {
      entries_.erase(index);
    } else {
      entries_[std::move(index)] = value;
    }
  }

  double at(const Index& index) const {
    const auto it = entries_.find(index);
    return it == entries_.end() ? 0.0 : it->second;
  }

  const std::map<Index, double>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // sum |f_{i1..im}|^p; p = 1 and p = 1 - eps are the two cases the tail
  // bounds need.
  double norm_sum(double p) const {
    if (!(p > 0.0) || p > 1.0)
      throw std::invalid_argument("tensor: norm exponent must lie in (0, 1]");
    double s = 0.0;
    for (const auto& [idx, value] : entries_) s += std::pow(std::abs(value), p);
    return s;
  }

  std::uint32_t max_component() const {
    std::uint32_t mx = 0;
    for (const auto& [idx, value] : entries_)
      for (std::uint32_t c : idx) mx = std::max(mx, c);
    return mx;
  }

  std::set<std::uint32_t> distinct_components() const {
    std::set<std::uint32_t> out;
    for (const auto& [idx, value] : entries_)
      for (std::uint32_t c : idx) out.insert(c);
    return out;
  }

 private:
  void validate(const Index& index) const {
    if (index.size() != order_)
      throw std::invalid_argument("tensor: index arity does not match order");
    for (std::uint32_t c : index)
      if (c == 0)
        throw std::invalid_argument(
            "tensor: index component 0 is not allowed (breaks canonicality)");
  }

  std::size_t order_;
  std::map<Index, double> entries_;
};

}  // namespace ustat
