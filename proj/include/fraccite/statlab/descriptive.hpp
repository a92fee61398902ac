#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "fraccite/error.hpp"
#include "fraccite/numeric.hpp"

namespace fraccite::stat {

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> sd;   // absent for n = 1
  std::optional<double> sem;  // absent for n = 1
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;  // ascending
};

// Quantile of sorted data by linear interpolation between order statistics
// at position (n - 1) p.
inline double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(ErrorCode::empty_input, "quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

// Box-plot summary: whiskers reach the most extreme observations inside
// [q1 - 1.5 IQR, q3 + 1.5 IQR]; everything beyond is an outlier. A whisker
// never retracts inside the box (same clamp as matplotlib).
inline SampleSummary summarize(std::span<const double> xs) {
  if (xs.empty()) throw Error(ErrorCode::empty_input, "summarize of an empty sample");
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());

  SampleSummary s;
  s.n = v.size();
  const auto est = mean_with_sem(v);
  s.mean = est.value;
  s.sem = est.sem;
  s.sd = sample_sd(v);
  s.median = quantile_sorted(v, 0.5);
  s.q1 = quantile_sorted(v, 0.25);
  s.q3 = quantile_sorted(v, 0.75);

  const double iqr = s.q3 - s.q1;
  const double low_fence = s.q1 - 1.5 * iqr;
  const double high_fence = s.q3 + 1.5 * iqr;
  s.whisker_low = s.q1;
  s.whisker_high = s.q3;
  bool low_set = false;
  for (double x : v) {
    if (x < low_fence || x > high_fence) {
      s.outliers.push_back(x);
      continue;
    }
    if (!low_set) {
      s.whisker_low = x;
      low_set = true;
    }
    s.whisker_high = x;
  }
  s.whisker_low = std::min(s.whisker_low, s.q1);
  s.whisker_high = std::max(s.whisker_high, s.q3);
  return s;
}

// 1-based ranks; tied values share the mean of the ranks they span.
inline std::vector<double> midranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace fraccite::stat
