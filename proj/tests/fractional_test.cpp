#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fraccite/fractional.hpp"

namespace fraccite {
namespace {

Publication paper(std::string id, std::int64_t n_refs, std::int64_t cited = 0) {
  return {std::move(id), 2005, "J", {"F"}, n_refs, cited, std::nullopt};
}

TEST(FractionalWeight, ReciprocalOfReferenceCount) {
  EXPECT_EQ(fractional_weight(paper("q", 6)), 1.0 / 6.0);
  EXPECT_EQ(fractional_weight(paper("q", 40)), 1.0 / 40.0);
  EXPECT_EQ(fractional_weight(paper("q", 1)), 1.0);
}

TEST(FractionalWeight, ZeroReferencesIsDomainError) {
  try {
    fractional_weight(paper("empty-list", 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_references);
    EXPECT_NE(std::string(e.what()).find("empty-list"), std::string::npos);
  }
}

TEST(FractionalScore, HandSums) {
  Corpus c({paper("p", 10, 2), paper("u", 10), paper("one", 10, 1), paper("q6", 6), paper("q40", 40),
            paper("q1", 1)},
           {{"q6", "p", 2006}, {"q40", "p", 2006}, {"q1", "one", 2006}}, {});
  // 1/6 + 1/40 = 23/120
  EXPECT_NEAR(fractional_score(c, "p").cf, 23.0 / 120.0, 1e-15);
  EXPECT_NEAR(fractional_score(c, "p").cf, 0.19166666666666667, 1e-15);
  EXPECT_EQ(fractional_score(c, "u").cf, 0.0);
  EXPECT_EQ(fractional_score(c, "one").cf, 1.0);
}

TEST(FractionalScore, PropagatesZeroReferenceErrorNamingCiter) {
  Corpus c({paper("p", 3, 1), paper("bad", 0)}, {{"bad", "p", 2006}}, {});
  try {
    fractional_score(c, "p");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_references);
    EXPECT_NE(std::string(e.what()).find("bad"), std::string::npos);
  }
}

TEST(FractionalScore, UnknownPublication) {
  Corpus c({paper("p", 3)}, {}, {});
  EXPECT_THROW(fractional_score(c, "nope"), Error);
}

TEST(UnitScores, OrderFollowsUnitAndMeanIsSumOverP) {
  // p1 cited by a 2-ref paper (0.5), p2 by a 4-ref paper (0.25)
  Corpus c({paper("p1", 5, 1), paper("p2", 5, 1), paper("c2", 2), paper("c4", 4)},
           {{"c4", "p2", 2007}, {"c2", "p1", 2007}}, {{"u", "U", {"p1", "p2"}}});
  auto scores = unit_fractional_scores(c, c.unit("u"));
  ASSERT_EQ(scores.size(), 2u);
  EXPECT_EQ(scores[0], (FractionalScore{"p1", 0.5}));
  EXPECT_EQ(scores[1], (FractionalScore{"p2", 0.25}));
  EXPECT_DOUBLE_EQ(sum_cf(scores), 0.75);
  EXPECT_DOUBLE_EQ(mean_cf(scores), 0.375);
}

TEST(UnitScores, RankTableAverages) {
  EXPECT_NEAR(31.95 / 23.0, 1.39, 0.005);
  EXPECT_NEAR(6.83 / 32.0, 0.21, 0.005);
}

TEST(BenchmarkRatio, Cases) {
  std::vector<FractionalScore> same{{"a", 0.4}, {"b", 0.4}};
  EXPECT_DOUBLE_EQ(benchmark_ratio(same, same), 1.0);
  std::vector<FractionalScore> unit{{"a", 0.6}}, ref{{"b", 0.2}, {"c", 0.4}};
  EXPECT_DOUBLE_EQ(benchmark_ratio(unit, ref), 2.0);
  std::vector<FractionalScore> zero{{"z", 0.0}};
  try {
    benchmark_ratio(zero, zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::nonpositive_value);
  }
  EXPECT_THROW(benchmark_ratio(unit, {}), Error);
}

// Random corpus where citing papers resolve all of their references
// in-corpus: every citing paper hands out exactly 1.0.
struct RandomCorpus {
  Corpus corpus;
  std::size_t citing_papers = 0;
};

RandomCorpus random_closed_corpus(std::mt19937_64& rng, int cited_count, int citing_count) {
  std::vector<Publication> pubs;
  for (int i = 0; i < cited_count; ++i) pubs.push_back(paper("t" + std::to_string(i), 1 + rng() % 30));
  std::vector<CitationEdge> edges;
  for (int q = 0; q < citing_count; ++q) {
    const auto k = 1 + static_cast<std::int64_t>(rng() % 50);
    Publication citer = paper("q" + std::to_string(q), k);
    for (std::int64_t r = 0; r < k; ++r) {
      const auto target = rng() % static_cast<unsigned>(cited_count);
      edges.push_back({citer.id, pubs[target].id, 2010});
      ++pubs[target].citations_received;
    }
    pubs.push_back(citer);
  }
  return {Corpus(pubs, edges, {}), static_cast<std::size_t>(citing_count)};
}

TEST(FractionalProperties, ConservationTotalEqualsCitingPapers) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto rc = random_closed_corpus(rng, 40, 60);
    CompensatedSum total;
    for (const auto& p : rc.corpus.publications()) total.add(fractional_score(rc.corpus, p.id).cf);
    EXPECT_NEAR(total.value(), static_cast<double>(rc.citing_papers), 1e-9);
  }
}

TEST(FractionalProperties, BoundsAndZeroIffUncited) {
  std::mt19937_64 rng(11);
  auto rc = random_closed_corpus(rng, 30, 20);
  for (const auto& p : rc.corpus.publications()) {
    const double cf = fractional_score(rc.corpus, p.id).cf;
    const auto in = rc.corpus.incoming(p.id).size();
    EXPECT_GE(cf, 0.0);
    EXPECT_LE(cf, static_cast<double>(in));
    EXPECT_EQ(cf == 0.0, in == 0);
  }
}

TEST(FractionalProperties, AddingAnEdgeStrictlyIncreasesScore) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    auto rc = random_closed_corpus(rng, 10, 10);
    const auto& pubs = rc.corpus.publications();
    const auto& target = pubs[rng() % 10];
    const auto& citer = pubs[10 + rng() % 10];
    auto edges = rc.corpus.edges();
    edges.push_back({citer.id, target.id, 2011});
    Corpus grown(pubs, edges, {});
    EXPECT_GT(fractional_score(grown, target.id).cf, fractional_score(rc.corpus, target.id).cf);
  }
}

TEST(FractionalProperties, DuplicatingReferenceListsLeavesScoresUnchanged) {
  std::mt19937_64 rng(17);
  auto rc = random_closed_corpus(rng, 15, 25);
  std::vector<Publication> doubled = rc.corpus.publications();
  for (auto& p : doubled) {
    if (p.id[0] == 'q') p.n_refs *= 2;
    p.citations_received *= 2;
  }
  std::vector<CitationEdge> edges;
  for (const auto& e : rc.corpus.edges()) {
    edges.push_back(e);
    edges.push_back(e);
  }
  Corpus twice(doubled, edges, {});
  for (const auto& p : rc.corpus.publications()) {
    EXPECT_NEAR(fractional_score(twice, p.id).cf, fractional_score(rc.corpus, p.id).cf, 1e-12);
  }
}

TEST(FractionalProperties, UnitSumIsPermutationInvariant) {
  std::mt19937_64 rng(19);
  auto rc = random_closed_corpus(rng, 50, 80);
  std::vector<std::string> ids;
  for (int i = 0; i < 50; ++i) ids.push_back("t" + std::to_string(i));
  Unit u{"u", "U", ids};
  const double base = sum_cf(unit_fractional_scores(rc.corpus, u));
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(u.pubs.begin(), u.pubs.end(), rng);
    const double s = sum_cf(unit_fractional_scores(rc.corpus, u));
    EXPECT_NEAR(s, base, 4 * std::numeric_limits<double>::epsilon() * base);
  }
}

}  // namespace
}  // namespace fraccite
