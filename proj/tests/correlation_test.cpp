#include <random>

#include <gtest/gtest.h>

#include "fraccite/statlab/correlation.hpp"

namespace fraccite::stat {
namespace {

// Reference rank-table columns.
const std::vector<double> kMeanCitationScore{2.03, 1.74, 1.54, 1.50, 0.93, 0.91, 0.78};
const std::vector<double> kCppJcsm{2.18, 1.86, 1.56, 1.00, 1.00, 0.58, 0.43};
const std::vector<double> kAvgCf{1.39, 0.82, 0.99, 0.21, 0.43, 0.34, 0.39};
const std::vector<double> kCppFcsm{2.94, 3.20, 2.17, 0.92, 1.43, 0.87, 0.72};

TEST(Pearson, JournalBlock) {
  auto r = pearson(kMeanCitationScore, kCppJcsm);
  EXPECT_EQ(r.method, Method::pearson);
  EXPECT_NEAR(r.statistic, 0.94, 0.01);
  EXPECT_NEAR(r.statistic, 0.936666296168195, 1e-12);  // scipy.stats.pearsonr
  EXPECT_LT(*r.p_value, 0.01);
  EXPECT_EQ(r.df1, 5.0);
}

TEST(Pearson, FieldBlock) {
  auto r = pearson(kAvgCf, kCppFcsm);
  EXPECT_NEAR(r.statistic, 0.85, 0.01);
  EXPECT_NEAR(*r.p_value, 0.01476501561799203, 1e-9);
  EXPECT_LT(*r.p_value, 0.05);
}

TEST(Pearson, AffineLineIsPerfect) {
  std::vector<double> x{1, 2, 3, 4, 5}, y;
  for (double v : x) y.push_back(2 * v + 1);
  auto r = pearson(x, y);
  EXPECT_NEAR(r.statistic, 1.0, 1e-15);
  EXPECT_EQ(*r.p_value, 0.0);
}

TEST(Pearson, Errors) {
  std::vector<double> a{1, 2, 3}, b{1, 2}, c{4, 4, 4};
  EXPECT_THROW(pearson(a, b), Error);
  EXPECT_THROW(pearson(a, c), Error);
  EXPECT_THROW(pearson(b, b), Error);
}

TEST(Spearman, FieldBlockIsExactlyPointSevenFive) {
  // ranks x = {7,5,6,1,4,2,3}, y = {6,7,5,3,4,2,1}: sum d^2 = 14, rho = 1 - 6*14/(7*48)
  auto r = spearman(kAvgCf, kCppFcsm);
  EXPECT_NEAR(r.statistic, 0.75, 1e-15);
  EXPECT_NEAR(*r.p_value, 0.05218140045705787, 1e-10);
  EXPECT_GT(*r.p_value, 0.05);
}

TEST(Spearman, JournalBlockWithMidRankTie) {
  auto r = spearman(kMeanCitationScore, kCppJcsm);
  // mid-ranks 3.5/3.5 for the two 1.00 values; Pearson on ranks = sqrt(27.5/28)
  EXPECT_NEAR(r.statistic, std::sqrt(27.5 / 28.0), 1e-15);
  EXPECT_GT(r.statistic, 0.99);
  EXPECT_LT(*r.p_value, 0.01);
}

TEST(Spearman, MonotoneTransformIsPerfect) {
  std::vector<double> x{0.1, 0.5, 2, 3, 9, 11}, y;
  for (double v : x) y.push_back(std::exp(v));
  EXPECT_NEAR(spearman(x, y).statistic, 1.0, 1e-15);
}

TEST(Spearman, EqualsPearsonOfRanksOnRandomTiedData) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 3 + rng() % 25;
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = static_cast<double>(rng() % 6);
    for (auto& v : y) v = static_cast<double>(rng() % 6);
    x[0] = 0;
    x[1] = 9;
    y[0] = 0;
    y[1] = 9;
    const auto rx = midranks(x), ry = midranks(y);
    EXPECT_EQ(spearman(x, y).statistic, pearson(rx, ry).statistic);
  }
}

TEST(Pearson, InvariantUnderPositiveAffineMaps) {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 3 + rng() % 30;
    std::vector<double> x(n), y(n), x2(n), y2(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = nd(rng);
      y[i] = 0.5 * x[i] + nd(rng);
    }
    const double a = std::exp(nd(rng)), b = nd(rng) * 10, c = std::exp(nd(rng)), d = nd(rng);
    for (std::size_t i = 0; i < n; ++i) {
      x2[i] = a * x[i] + b;
      y2[i] = c * y[i] + d;
    }
    EXPECT_NEAR(pearson(x, y).statistic, pearson(x2, y2).statistic, 1e-12);
  }
}

TEST(SpearmanExact, RankTableBlocks) {
  // enumeration of all 5040 rank permutations (independent script): 334 reach |rho| >= 0.75
  EXPECT_NEAR(spearman_exact_p(kAvgCf, kCppFcsm), 334.0 / 5040.0, 1e-15);
  // with the tie, 4 of 5040 labelled permutations reach the observed |rho|
  EXPECT_NEAR(spearman_exact_p(kMeanCitationScore, kCppJcsm), 4.0 / 5040.0, 1e-15);
  std::vector<double> big(9, 1.0);
  EXPECT_THROW(spearman_exact_p(big, big), Error);
}

TEST(SpearmanExact, BruteForceOnFourPoints) {
  // x = y = 1..4: only the identity and its reverse reach |rho| = 1
  std::vector<double> x{1, 2, 3, 4};
  EXPECT_NEAR(spearman_exact_p(x, x), 2.0 / 24.0, 1e-15);
}

}  // namespace
}  // namespace fraccite::stat
