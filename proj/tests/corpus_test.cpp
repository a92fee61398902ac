#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fraccite/corpus.hpp"

namespace fraccite {
namespace {

const std::string kData = FRACCITE_TEST_DATA;

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_dataset(in, "mem");
}

TEST(LoadCorpus, TwoPubsOneEdgeOneUnit) {
  auto d = parse(
      R"({"kind":"pub","id":"a","year":2001,"journal":"J","fields":["F"],"n_refs":3,"citations_received":1})"
      "\n"
      R"({"kind":"pub","id":"b","year":2002,"journal":"J","fields":[],"n_refs":5,"citations_received":0})"
      "\n"
      R"({"kind":"edge","citing":"b","cited":"a","year":2002})"
      "\n"
      R"({"kind":"unit","id":"u","label":"U","pubs":["a"]})"
      "\n");
  EXPECT_EQ(d.corpus.publications().size(), 2u);
  EXPECT_EQ(d.corpus.edges().size(), 1u);
  EXPECT_EQ(d.corpus.units().size(), 1u);
  EXPECT_TRUE(validate(d.corpus).empty());
  EXPECT_EQ(d.corpus.incoming("a").size(), 1u);
}

TEST(LoadCorpus, ZeroReferenceCitingPaperIsRejected) {
  try {
    load_corpus(kData + "/invalid_corpus.jsonl");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_corpus);
    EXPECT_NE(std::string(e.what()).find("zero-reference citing paper"), std::string::npos);
  }
}

TEST(LoadCorpus, RankTableFixtureHasSevenUnits) {
  auto d = load_dataset(kData + "/rank_table_corpus.jsonl");
  EXPECT_EQ(d.corpus.units().size(), 7u);
  EXPECT_EQ(d.rates.journal.rates.size(), 14u);
  EXPECT_EQ(d.rates.field.rates.size(), 7u);
}

TEST(LoadCorpus, MalformedLineReportsLineNumber) {
  try {
    parse(R"({"kind":"pub","id":"a","n_refs":1})"
          "\n\n"
          R"({"kind":"pub","id":"b","n_refs":)"
          "\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(LoadCorpus, FieldErrors) {
  EXPECT_THROW(parse(R"({"kind":"pub","id":"a"})"), ParseError);                       // no n_refs
  EXPECT_THROW(parse(R"({"kind":"pub","id":"a","n_refs":-1})"), ParseError);          // negative
  EXPECT_THROW(parse(R"({"kind":"pub","id":"a","n_refs":1.5})"), ParseError);         // not integer
  EXPECT_THROW(parse(R"({"kind":"book","id":"a"})"), ParseError);                     // unknown kind
  EXPECT_THROW(parse(R"([1,2])"), ParseError);                                        // not an object
  EXPECT_THROW(parse(R"({"kind":"rate","table":"journal","key":"J","value":0})"), ParseError);
  EXPECT_THROW(parse(R"({"kind":"rate","table":"venue","key":"J","value":1})"), ParseError);
  EXPECT_THROW(parse(R"({"kind":"rate","table":"field","key":"F","value":1})"
                     "\n"
                     R"({"kind":"rate","table":"field","key":"F","value":2})"),
               ParseError);
}

TEST(LoadCorpus, MissingFileIsIoError) {
  try {
    load_corpus(kData + "/does_not_exist.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io);
  }
}

TEST(LoadRates, RejectsNonRateRecords) {
  EXPECT_THROW(load_rates(kData + "/edges_corpus.jsonl"), Error);
}

TEST(Validate, WellFormedCorpusIsClean) {
  auto d = load_dataset(kData + "/edges_corpus.jsonl");
  EXPECT_TRUE(validate(d.corpus).empty());
}

TEST(Validate, DanglingCitedNamesTheMissingId) {
  Corpus c({{"a", 2000, "J", {}, 4, 0, {}}}, {{"a", "X", 2001}}, {});
  auto v = validate(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, Rule::dangling_cited);
  EXPECT_EQ(v[0].entity, "X");
}

TEST(Validate, EmptyUnit) {
  Corpus c({}, {}, {{"u", "U", {}}});
  auto v = validate(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], (Violation{Rule::empty_unit, "u", ""}));
}

TEST(Validate, ReportsEveryViolationNotJustTheFirst) {
  std::ifstream in(kData + "/invalid_corpus.jsonl");
  auto d = parse_dataset(in, "invalid");
  auto v = validate(d.corpus);
  std::vector<Rule> rules;
  for (const auto& x : v) rules.push_back(x.rule);
  EXPECT_NE(std::find(rules.begin(), rules.end(), Rule::zero_reference_citing), rules.end());
  EXPECT_NE(std::find(rules.begin(), rules.end(), Rule::dangling_cited), rules.end());
  EXPECT_NE(std::find(rules.begin(), rules.end(), Rule::empty_unit), rules.end());
  // p1 has citations_received=1 and one incoming edge; z has none: consistent
  EXPECT_EQ(std::count(rules.begin(), rules.end(), Rule::citation_count_mismatch), 0);
}

TEST(Validate, DuplicatesAndCountMismatch) {
  Corpus c({{"a", 2000, "J", {}, 4, 0, {}}, {"a", 2001, "J", {}, 4, 0, {}}, {"b", 2001, "J", {}, 4, 0, {}}},
           {{"b", "a", 2002}}, {{"u", "U", {"a", "ghost"}}, {"u", "U", {"b"}}});
  auto v = validate(c);
  auto has = [&](Rule r, const std::string& id) {
    return std::find_if(v.begin(), v.end(), [&](auto& x) { return x.rule == r && x.entity == id; }) !=
           v.end();
  };
  EXPECT_TRUE(has(Rule::duplicate_pub, "a"));
  EXPECT_TRUE(has(Rule::duplicate_unit, "u"));
  EXPECT_TRUE(has(Rule::dangling_unit_pub, "u"));
  EXPECT_TRUE(has(Rule::citation_count_mismatch, "a"));
}

TEST(Validate, CitationsReceivedSumEqualsEdgeCountOnFullWindow) {
  auto d = load_dataset(kData + "/edges_corpus.jsonl");
  std::int64_t total = 0;
  for (const auto& p : d.corpus.publications()) total += p.citations_received;
  EXPECT_EQ(total, static_cast<std::int64_t>(d.corpus.edges().size()));
}

// Random well-formed corpora survive write -> parse unchanged and validate clean.
TEST(RoundTrip, WriteThenLoadIsIdentity) {
  std::mt19937_64 rng(20100318);
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<int> npubs(1, 30);
    const int n = npubs(rng);
    std::vector<Publication> pubs;
    for (int i = 0; i < n; ++i) {
      Publication p;
      p.id = "p" + std::to_string(i) + (i % 3 == 0 ? "-é" : "");
      p.year = 1990 + static_cast<int>(rng() % 30);
      p.journal = "J" + std::to_string(rng() % 5);
      for (unsigned f = 0; f < rng() % 3; ++f) p.fields.push_back("F" + std::to_string(rng() % 4));
      p.n_refs = 1 + static_cast<std::int64_t>(rng() % 60);
      if (rng() % 2) p.given_cf = std::uniform_real_distribution<double>(0, 5)(rng);
      pubs.push_back(p);
    }
    std::vector<CitationEdge> edges;
    const int m = static_cast<int>(rng() % 50);
    for (int e = 0; e < m; ++e) {
      const auto citing = rng() % pubs.size(), cited = rng() % pubs.size();
      edges.push_back({pubs[citing].id, pubs[cited].id, pubs[citing].year});
      ++pubs[cited].citations_received;
    }
    std::vector<Unit> units{{"u0", "first unit", {pubs[0].id}}};
    RateSet rates;
    rates.journal.rates["J0"] = 1.0 / 3.0;
    rates.field.rates["F1"] = 2.5;

    Corpus original(pubs, edges, units);
    std::stringstream buf;
    write_corpus(buf, original, rates);
    auto back = parse_dataset(buf, "roundtrip");
    EXPECT_EQ(back.corpus, original);
    EXPECT_EQ(back.rates, rates);
    EXPECT_TRUE(validate(back.corpus).empty());
  }
}

}  // namespace
}  // namespace fraccite
