#pragma once

#include <cmath>
#include <limits>

namespace wtp {

/// Streaming log(sum exp(x_k)) with Neumaier-compensated accumulation of the
/// rescaled terms. Merging is order-sensitive; callers fix the order.
class LogSumExp {
 public:
  void add(double log_term) {
    if (log_term == -std::numeric_limits<double>::infinity()) return;
    if (log_term > max_) rescale(log_term);
    accumulate(std::exp(log_term - max_));
  }

  void merge(const LogSumExp& other) {
    if (other.empty()) return;
    if (other.max_ > max_) rescale(other.max_);
    const double factor = std::exp(other.max_ - max_);
    accumulate(other.sum_ * factor);
    accumulate(other.comp_ * factor);
  }

  bool empty() const { return max_ == -std::numeric_limits<double>::infinity(); }

  double value() const {
    if (empty()) return -std::numeric_limits<double>::infinity();
    return max_ + std::log(sum_ + comp_);
  }

 private:
  void rescale(double new_max) {
    if (!empty()) {
      const double factor = std::exp(max_ - new_max);
      sum_ *= factor;
      comp_ *= factor;
    }
    max_ = new_max;
  }

  void accumulate(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace wtp
