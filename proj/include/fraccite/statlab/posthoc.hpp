#pragma once

// Pairwise post-hoc comparisons after a one-way layout, all built on the
// pooled within-group mean square (MSE) with N - k degrees of freedom:
//
//   bonferroni  two-sided t on diff / sqrt(MSE (1/ni + 1/nj)), p * k(k-1)/2
//   tukey       studentized range on diff / sqrt(MSE/2 (1/ni + 1/nj))
//               (Tukey-Kramer for unequal sizes)
//   scheffe     F(k-1, N-k) on diff^2 / (MSE (1/ni + 1/nj) (k - 1))
//
// Homogeneous subsets are read off the groups sorted by mean.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "fraccite/error.hpp"
#include "fraccite/statlab/anova.hpp"
#include "fraccite/statlab/distributions.hpp"

namespace fraccite::stat {

enum class PosthocMethod { bonferroni, tukey, scheffe };

inline const char* to_string(PosthocMethod m) {
  switch (m) {
    case PosthocMethod::bonferroni: return "bonferroni";
    case PosthocMethod::tukey: return "tukey";
    case PosthocMethod::scheffe: return "scheffe";
  }
  return "unknown";
}

inline PosthocMethod parse_posthoc_method(const std::string& name) {
  if (name == "bonferroni") return PosthocMethod::bonferroni;
  if (name == "tukey") return PosthocMethod::tukey;
  if (name == "scheffe") return PosthocMethod::scheffe;
  throw Error(ErrorCode::invalid_argument, "unknown post-hoc method \"" + name + "\"");
}

struct PosthocResult {
  PosthocMethod method = PosthocMethod::tukey;
  double alpha = 0.05;
  std::vector<double> means;
  std::vector<std::size_t> sizes;
  // symmetric k x k adjusted p-values; diagonal set to 1
  std::vector<std::vector<double>> pairwise;
  // group indices, each subset listed in ascending-mean order
  std::vector<std::vector<std::size_t>> homogeneous_subsets;
};

// Groups sorted by mean (stable on ties); a subset is a maximal run of
// consecutive groups in which every pair is non-significant at alpha.
inline std::vector<std::vector<std::size_t>> homogeneous_subsets(
    std::span<const double> means, const std::vector<std::vector<double>>& pairwise, double alpha) {
  const std::size_t k = means.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return means[a] < means[b]; });

  auto homogeneous = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i <= hi; ++i)
      for (std::size_t j = i + 1; j <= hi; ++j)
        if (pairwise[order[i]][order[j]] < alpha) return false;
    return true;
  };

  std::vector<std::vector<std::size_t>> subsets;
  std::size_t last_end = 0;
  bool any = false;
  for (std::size_t start = 0; start < k; ++start) {
    std::size_t end = start;
    while (end + 1 < k && homogeneous(start, end + 1)) ++end;
    if (any && end <= last_end) continue;  // contained in the previous run
    subsets.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end) + 1);
    last_end = end;
    any = true;
  }
  return subsets;
}

inline PosthocResult posthoc(std::span<const Sample> groups, PosthocMethod method, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "alpha must lie in (0, 1)");
  }
  detail::require_groups(groups, 2, "posthoc");
  const auto pooled = pool(groups);
  const double mse = pooled.ms_within();
  if (!(mse > 0.0)) throw Error(ErrorCode::degenerate, "posthoc: zero within-group variance");

  const std::size_t k = groups.size();
  const double df = pooled.df_within();
  const double pairs = static_cast<double>(k * (k - 1) / 2);

  PosthocResult r;
  r.method = method;
  r.alpha = alpha;
  for (const auto& g : pooled.groups) {
    r.means.push_back(g.mean);
    r.sizes.push_back(g.n);
  }
  r.pairwise.assign(k, std::vector<double>(k, 1.0));

  const StudentT t_dist(df);
  const FisherF f_dist(std::max(1.0, static_cast<double>(k) - 1.0), df);
  const StudentizedRange q_dist(static_cast<int>(k), df);

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double diff = std::fabs(r.means[i] - r.means[j]);
      const double inv = 1.0 / static_cast<double>(r.sizes[i]) + 1.0 / static_cast<double>(r.sizes[j]);
      double p = 1.0;
      switch (method) {
        case PosthocMethod::bonferroni:
          p = std::min(1.0, pairs * t_dist.two_sided(diff / std::sqrt(mse * inv)));
          break;
        case PosthocMethod::tukey:
          p = q_dist.sf(diff / std::sqrt(0.5 * mse * inv));
          break;
        case PosthocMethod::scheffe:
          p = f_dist.sf(diff * diff / (mse * inv * (static_cast<double>(k) - 1.0)));
          break;
      }
      r.pairwise[i][j] = r.pairwise[j][i] = std::clamp(p, 0.0, 1.0);
    }
  }
  r.homogeneous_subsets = homogeneous_subsets(r.means, r.pairwise, alpha);
  return r;
}

}  // namespace fraccite::stat
