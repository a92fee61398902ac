#pragma once

// Omnibus tests for equality of k group locations: classical one-way ANOVA,
// Welch's heteroscedastic ANOVA, and the Kruskal-Wallis rank test.

#include <cmath>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fraccite/error.hpp"
#include "fraccite/numeric.hpp"
#include "fraccite/statlab/descriptive.hpp"
#include "fraccite/statlab/distributions.hpp"
#include "fraccite/statlab/test_result.hpp"

namespace fraccite::stat {

using Sample = std::vector<double>;

struct GroupMoments {
  std::size_t n = 0;
  double mean = 0.0;
  double ss = 0.0;  // sum of squared deviations from the group mean
};

inline GroupMoments moments(std::span<const double> xs) {
  GroupMoments g;
  g.n = xs.size();
  g.mean = mean(xs);
  CompensatedSum ss;
  for (double x : xs) ss.add((x - g.mean) * (x - g.mean));
  g.ss = ss.value();
  return g;
}

namespace detail {

inline void require_groups(std::span<const Sample> groups, std::size_t min_n, const char* what) {
  if (groups.size() < 2) throw Error(ErrorCode::degenerate, std::string(what) + " needs >= 2 groups");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].size() < min_n) {
      throw Error(ErrorCode::degenerate, std::string(what) + ": group " + std::to_string(i) +
                                             " has fewer than " + std::to_string(min_n) +
                                             " observations");
    }
  }
}

}  // namespace detail

// Pooled within-group quantities shared by ANOVA and the post-hoc tests.
struct Pooled {
  std::vector<GroupMoments> groups;
  std::size_t total_n = 0;
  double grand_mean = 0.0;
  double ss_between = 0.0;
  double ss_within = 0.0;

  double df_between() const { return static_cast<double>(groups.size()) - 1.0; }
  double df_within() const { return static_cast<double>(total_n - groups.size()); }
  double ms_within() const { return ss_within / df_within(); }
};

inline Pooled pool(std::span<const Sample> groups) {
  Pooled p;
  CompensatedSum total, within;
  for (const auto& g : groups) {
    p.groups.push_back(moments(g));
    p.total_n += g.size();
    for (double x : g) total.add(x);
  }
  p.grand_mean = total.value() / static_cast<double>(p.total_n);
  CompensatedSum between;
  for (const auto& g : p.groups) {
    between.add(static_cast<double>(g.n) * (g.mean - p.grand_mean) * (g.mean - p.grand_mean));
    within.add(g.ss);
  }
  p.ss_between = between.value();
  p.ss_within = within.value();
  return p;
}

inline TestResult one_way_anova(std::span<const Sample> groups) {
  detail::require_groups(groups, 2, "one_way_anova");
  const auto p = pool(groups);
  TestResult r{Method::anova, 0.0, p.df_between(), p.df_within(), std::nullopt};
  // a between-group spread below rounding noise counts as zero
  const double scale = std::max(1.0, p.grand_mean * p.grand_mean) * static_cast<double>(p.total_n);
  const bool no_between = p.ss_between <= 1e-24 * scale;
  if (p.ss_within == 0.0) {
    if (no_between) {
      r.statistic = std::numeric_limits<double>::quiet_NaN();
    } else {
      r.statistic = std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
    }
    return r;
  }
  r.statistic = no_between ? 0.0 : (p.ss_between / p.df_between()) / p.ms_within();
  r.p_value = FisherF(r.df1, *r.df2).sf(r.statistic);
  return r;
}

inline TestResult welch_anova(std::span<const Sample> groups) {
  detail::require_groups(groups, 2, "welch_anova");
  const double k = static_cast<double>(groups.size());
  std::vector<GroupMoments> gm;
  std::vector<double> w;
  CompensatedSum sum_w, sum_wm;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    gm.push_back(moments(groups[i]));
    const double var = gm.back().ss / static_cast<double>(gm.back().n - 1);
    if (!(var > 0.0)) {
      throw Error(ErrorCode::degenerate, "welch_anova: group " + std::to_string(i) +
                                             " has zero variance");
    }
    w.push_back(static_cast<double>(gm.back().n) / var);
    sum_w.add(w.back());
    sum_wm.add(w.back() * gm.back().mean);
  }
  const double W = sum_w.value();
  const double weighted_mean = sum_wm.value() / W;
  CompensatedSum a, tmp;
  for (std::size_t i = 0; i < gm.size(); ++i) {
    a.add(w[i] * (gm[i].mean - weighted_mean) * (gm[i].mean - weighted_mean));
    const double h = 1.0 - w[i] / W;
    tmp.add(h * h / static_cast<double>(gm[i].n - 1));
  }
  const double numerator = a.value() / (k - 1.0);
  const double denominator = 1.0 + 2.0 * (k - 2.0) / (k * k - 1.0) * tmp.value();
  const double df2 = (k * k - 1.0) / (3.0 * tmp.value());
  TestResult r{Method::welch, numerator / denominator, k - 1.0, df2, std::nullopt};
  r.p_value = FisherF(r.df1, df2).sf(r.statistic);
  return r;
}

// H with the tie correction 1 - sum(t^3 - t) / (N^3 - N); p from chi^2(k-1).
inline TestResult kruskal_wallis(std::span<const Sample> groups) {
  if (groups.size() < 2) throw Error(ErrorCode::degenerate, "kruskal_wallis needs >= 2 groups");
  std::vector<double> all;
  for (const auto& g : groups) {
    if (g.empty()) throw Error(ErrorCode::degenerate, "kruskal_wallis: empty group");
    all.insert(all.end(), g.begin(), g.end());
  }
  if (all.size() < 3) throw Error(ErrorCode::degenerate, "kruskal_wallis needs N >= 3");
  const double N = static_cast<double>(all.size());
  const auto ranks = midranks(all);

  CompensatedSum term;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    CompensatedSum rsum;
    for (std::size_t i = 0; i < g.size(); ++i) rsum.add(ranks[offset + i]);
    offset += g.size();
    term.add(rsum.value() * rsum.value() / static_cast<double>(g.size()));
  }

  std::map<double, double> ties;
  for (double x : all) ties[x] += 1.0;
  CompensatedSum tie_sum;
  for (const auto& [value, t] : ties) tie_sum.add(t * t * t - t);
  const double correction = 1.0 - tie_sum.value() / (N * N * N - N);

  const double df = static_cast<double>(groups.size()) - 1.0;
  TestResult r{Method::kruskal_wallis, 0.0, df, std::nullopt, std::nullopt};
  if (correction <= 0.0) {
    r.statistic = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  const double h = (12.0 / (N * (N + 1.0)) * term.value() - 3.0 * (N + 1.0)) / correction;
  r.statistic = std::max(0.0, h);
  if (r.statistic < 1e-12) r.statistic = 0.0;
  r.p_value = ChiSquared(df).sf(r.statistic);
  return r;
}

}  // namespace fraccite::stat
