#pragma once

#include <cmath>

namespace ustat {

// Neumaier-compensated accumulator. Summation order still matters for the
// final bits, so callers that promise reproducible results must feed terms
// in a fixed order (we use lexicographic index order throughout).
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace ustat
