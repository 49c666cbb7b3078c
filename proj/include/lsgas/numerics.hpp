#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>

namespace lsgas {

inline constexpr double kPi = std::numbers::pi;

constexpr double sq(double x) noexcept { return x * x; }

/// Neumaier-compensated sum; order-sensitive only at the last bit, so callers
/// that need schedule-independent results must pass a deterministically
/// ordered range.
inline double neumaier_sum(std::span<const double> xs) noexcept {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

/// Streaming variant for accumulation loops.
class NeumaierAccumulator {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Mean and Bernoulli/jackknife standard errors for sample statistics.
inline double bernoulli_std_error(double p_hat, std::size_t n) noexcept {
  return n > 0 ? std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n)) : 0.0;
}

}  // namespace lsgas
