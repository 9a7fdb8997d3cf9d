#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace tmsns {

/// Neumaier-compensated accumulator.
///
/// value() folds the running correction in. sum_raw()/compensation() expose
/// the two parts separately so that residuals against an exact total, e.g.
/// 1 - sum(p), can be formed as (1 - sum_raw()) - compensation() without
/// losing the low-order bits when the sum rounds to 1.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }
  double sum_raw() const { return sum_; }
  double compensation() const { return comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double neumaier_total(std::span<const double> xs);

/// ln(n!). Exact-product based for small n, lgammal beyond; cached table.
double log_factorial(int n);

}  // namespace tmsns
