#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

namespace fraccite {

// Neumaier's variant of Kahan summation. The error term is carried
// separately, so results agree across summation orders to within a few ulp.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

inline double mean(std::span<const double> xs) noexcept {
  return compensated_sum(xs) / static_cast<double>(xs.size());
}

// Sample variance (n - 1 denominator), two-pass. Absent for n < 2.
inline std::optional<double> sample_variance(std::span<const double> xs) noexcept {
  if (xs.size() < 2) return std::nullopt;
  const double m = mean(xs);
  CompensatedSum acc;
  for (double x : xs) acc.add((x - m) * (x - m));
  return acc.value() / static_cast<double>(xs.size() - 1);
}

inline std::optional<double> sample_sd(std::span<const double> xs) noexcept {
  auto v = sample_variance(xs);
  if (!v) return std::nullopt;
  return std::sqrt(*v);
}

// A point estimate with its standard error of the mean; `sem` is absent
// when it is undefined (n < 2).
struct Estimate {
  double value = 0.0;
  std::optional<double> sem;
};

inline Estimate mean_with_sem(std::span<const double> xs) noexcept {
  Estimate e{mean(xs), std::nullopt};
  if (auto sd = sample_sd(xs)) e.sem = *sd / std::sqrt(static_cast<double>(xs.size()));
  return e;
}

}  // namespace fraccite
