#pragma once

// Pearson and Spearman correlation with two-sided p-values from the
// t approximation t = r sqrt((n - 2) / (1 - r^2)) on n - 2 df.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "fraccite/error.hpp"
#include "fraccite/numeric.hpp"
#include "fraccite/statlab/descriptive.hpp"
#include "fraccite/statlab/distributions.hpp"
#include "fraccite/statlab/test_result.hpp"

namespace fraccite::stat {

namespace detail {

inline void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::length_mismatch, "correlation inputs differ in length (" +
                                                std::to_string(x.size()) + " vs " +
                                                std::to_string(y.size()) + ")");
  }
  if (x.size() < 3) throw Error(ErrorCode::empty_input, "correlation needs n >= 3");
}

inline double product_moment(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x), my = mean(y);
  CompensatedSum sxy, sxx, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy.add(dx * dy);
    sxx.add(dx * dx);
    syy.add(dy * dy);
  }
  if (sxx.value() == 0.0 || syy.value() == 0.0) {
    throw Error(ErrorCode::degenerate, "correlation of a constant input");
  }
  return std::clamp(sxy.value() / std::sqrt(sxx.value() * syy.value()), -1.0, 1.0);
}

inline double correlation_p(double r, std::size_t n) {
  const double df = static_cast<double>(n) - 2.0;
  if (std::fabs(r) >= 1.0) return 0.0;
  const double t = r * std::sqrt(df / ((1.0 - r) * (1.0 + r)));
  return StudentT(df).two_sided(t);
}

}  // namespace detail

inline TestResult pearson(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y);
  const double r = detail::product_moment(x, y);
  return {Method::pearson, r, static_cast<double>(x.size()) - 2.0, std::nullopt,
          detail::correlation_p(r, x.size())};
}

// Pearson correlation of mid-ranks; ties are handled by the mid-ranks.
inline TestResult spearman(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y);
  const auto rx = midranks(x);
  const auto ry = midranks(y);
  const double rho = detail::product_moment(rx, ry);
  return {Method::spearman, rho, static_cast<double>(x.size()) - 2.0, std::nullopt,
          detail::correlation_p(rho, x.size())};
}

// Exact two-sided permutation p-value for Spearman's rho: the share of all
// n! rearrangements of y whose |rho| reaches the observed |rho|. n <= 8.
inline double spearman_exact_p(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y);
  if (x.size() > 8) throw Error(ErrorCode::invalid_argument, "exact Spearman limited to n <= 8");
  const auto rx = midranks(x);
  auto ry = midranks(y);
  const double observed = std::fabs(detail::product_moment(rx, ry));
  std::sort(ry.begin(), ry.end());
  std::size_t hits = 0, total = 0;
  do {
    ++total;
    if (std::fabs(detail::product_moment(rx, ry)) >= observed - 1e-12) ++hits;
  } while (std::next_permutation(ry.begin(), ry.end()));
  // next_permutation skips duplicate arrangements of tied ranks; every
  // distinct arrangement stands for the same number of labelled ones
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace fraccite::stat
