#pragma once

// The normalization indicators compared in the crown-indicator debate.
//
//   mean of ratios   mean_i(c_i / e_i)        MNCS (field rates) or the
//                                             journal-normalized mean
//                                             citation score (journal rates)
//   ratio of means   sum_i c_i / sum_i e_i    CPP/FCSm, CPP/JCSm
//
// The two coincide only when all e_i are equal.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fraccite/corpus.hpp"
#include "fraccite/error.hpp"
#include "fraccite/fractional.hpp"
#include "fraccite/numeric.hpp"

namespace fraccite {

inline Estimate mean_cpp(std::span<const std::int64_t> citations) {
  if (citations.empty()) throw Error(ErrorCode::empty_input, "mean_cpp of an empty list");
  std::vector<double> xs(citations.begin(), citations.end());
  return mean_with_sem(xs);
}

namespace detail {

inline void check_paired(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::length_mismatch, "citation and expected lists differ in length (" +
                                                std::to_string(a) + " vs " + std::to_string(b) +
                                                ")");
  }
  if (a == 0) throw Error(ErrorCode::empty_input, "empty citation list");
}

}  // namespace detail

inline Estimate mean_of_ratios(std::span<const double> cits, std::span<const double> expected) {
  detail::check_paired(cits.size(), expected.size());
  std::vector<double> ratios(cits.size());
  for (std::size_t i = 0; i < cits.size(); ++i) {
    if (!(expected[i] > 0.0)) {
      throw Error(ErrorCode::nonpositive_value,
                  "expected value at index " + std::to_string(i) + " is not positive");
    }
    ratios[i] = cits[i] / expected[i];
  }
  return mean_with_sem(ratios);
}

inline double ratio_of_means(std::span<const double> cits, std::span<const double> expected) {
  detail::check_paired(cits.size(), expected.size());
  const double denom = compensated_sum(expected);
  if (!(denom > 0.0)) throw Error(ErrorCode::nonpositive_value, "zero expected sum");
  return compensated_sum(cits) / denom;
}

// Journal table: direct lookup. Field table: unweighted mean over the
// publication's field codes.
inline double resolve_expected(const Publication& pub, const RateTable& rates) {
  auto lookup = [&](const std::string& key) {
    auto r = rates.find(key);
    if (!r) {
      throw Error(ErrorCode::missing_rate,
                  std::string("missing-rate(\"") + key + "\") in " + to_string(rates.kind) +
                      " table for publication \"" + pub.id + "\"");
    }
    if (!(*r > 0.0)) {
      throw Error(ErrorCode::nonpositive_value, "rate for \"" + key + "\" is not positive");
    }
    return *r;
  };
  if (rates.kind == RateKind::journal) {
    if (pub.journal.empty()) {
      throw Error(ErrorCode::missing_rate, "publication \"" + pub.id + "\" has no journal key");
    }
    return lookup(pub.journal);
  }
  if (pub.fields.empty()) {
    throw Error(ErrorCode::missing_rate, "publication \"" + pub.id + "\" has no field codes");
  }
  CompensatedSum acc;
  for (const auto& f : pub.fields) acc.add(lookup(f));
  return acc.value() / static_cast<double>(pub.fields.size());
}

// Fractional citations received in `year` by the journal's papers from
// year-1 and year-2, divided by the number of those papers.
inline double fractional_impact_factor(const Corpus& corpus, std::string_view journal, int year) {
  CompensatedSum numerator;
  std::size_t documents = 0;
  for (const auto& p : corpus.publications()) {
    if (p.journal != journal || (p.year != year - 1 && p.year != year - 2)) continue;
    ++documents;
    for (std::size_t e : corpus.incoming(p.id)) {
      const auto& edge = corpus.edges()[e];
      if (edge.year != year) continue;
      numerator.add(fractional_weight(corpus.pub(edge.citing)));
    }
  }
  if (documents == 0) {
    throw Error(ErrorCode::empty_input, "empty-window: journal \"" + std::string(journal) +
                                            "\" has no publications in " +
                                            std::to_string(year - 2) + "-" +
                                            std::to_string(year - 1));
  }
  return numerator.value() / static_cast<double>(documents);
}

// Citations per publication: incoming edges when the corpus has edges,
// the scalar count otherwise.
inline std::int64_t citation_count(const Corpus& corpus, const Publication& pub) {
  if (corpus.has_edges()) return static_cast<std::int64_t>(corpus.incoming(pub.id).size());
  return pub.citations_received;
}

// Per-paper fractional scores for a unit: computed from edges when the
// corpus has them, taken from the given c_f values otherwise. Absent when
// neither source covers every paper.
inline std::optional<std::vector<FractionalScore>> unit_cf_scores(const Corpus& corpus,
                                                                  const Unit& unit) {
  if (corpus.has_edges()) return unit_fractional_scores(corpus, unit);
  std::vector<FractionalScore> out;
  for (const auto& id : unit.pubs) {
    const auto& p = corpus.pub(id);
    if (!p.given_cf) return std::nullopt;
    out.push_back({p.id, *p.given_cf});
  }
  return out;
}

// Per-paper expected rates; absent (with a message in `warning`) if any
// paper cannot be resolved.
inline std::optional<std::vector<double>> unit_expected(const Corpus& corpus, const Unit& unit,
                                                        const RateTable& rates,
                                                        std::string* warning = nullptr) {
  std::vector<double> out;
  out.reserve(unit.pubs.size());
  try {
    for (const auto& id : unit.pubs) out.push_back(resolve_expected(corpus.pub(id), rates));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::missing_rate) throw;
    if (warning != nullptr) *warning = e.what();
    return std::nullopt;
  }
  return out;
}

struct UnitIndicators {
  std::string unit;
  std::string label;
  std::int64_t sum_p = 0;
  std::int64_t sum_c = 0;
  Estimate mean_cpp;
  std::optional<Estimate> mean_citation_score;  // journal-normalized mean of ratios
  std::optional<double> cpp_jcsm;
  std::optional<double> cpp_fcsm;
  std::optional<Estimate> mncs;
  std::optional<double> sum_cf;
  std::optional<Estimate> mean_cf;
};

// Fills one Table-1 style row. Columns whose inputs are unavailable stay
// absent; the reason is appended to `warnings` when given.
inline UnitIndicators unit_report(const Corpus& corpus, const Unit& unit,
                                  const RateTable& journal_rates, const RateTable& field_rates,
                                  std::vector<std::string>* warnings = nullptr) {
  if (unit.pubs.empty()) throw Error(ErrorCode::empty_input, "unit \"" + unit.id + "\" is empty");
  auto warn = [&](std::string msg) {
    if (warnings != nullptr) warnings->push_back("unit " + unit.id + ": " + std::move(msg));
  };

  UnitIndicators row;
  row.unit = unit.id;
  row.label = unit.label;
  row.sum_p = static_cast<std::int64_t>(unit.pubs.size());

  std::vector<std::int64_t> counts;
  for (const auto& id : unit.pubs) counts.push_back(citation_count(corpus, corpus.pub(id)));
  for (auto c : counts) row.sum_c += c;
  row.mean_cpp = mean_cpp(counts);
  const std::vector<double> cits(counts.begin(), counts.end());

  std::string why;
  if (journal_rates.empty()) {
    warn("no journal rates; journal-normalized columns absent");
  } else if (auto e = unit_expected(corpus, unit, journal_rates, &why)) {
    row.mean_citation_score = mean_of_ratios(cits, *e);
    row.cpp_jcsm = ratio_of_means(cits, *e);
  } else {
    warn(why);
  }

  if (field_rates.empty()) {
    warn("no field rates; field-normalized columns absent");
  } else if (auto e = unit_expected(corpus, unit, field_rates, &why)) {
    row.mncs = mean_of_ratios(cits, *e);
    row.cpp_fcsm = ratio_of_means(cits, *e);
  } else {
    warn(why);
  }

  if (auto scores = unit_cf_scores(corpus, unit)) {
    std::vector<double> cf;
    for (const auto& s : *scores) cf.push_back(s.cf);
    row.sum_cf = compensated_sum(cf);
    row.mean_cf = mean_with_sem(cf);
    row.mean_cf->value = *row.sum_cf / static_cast<double>(row.sum_p);
  } else {
    warn("no edges or per-paper c_f; fractional columns absent");
  }
  return row;
}

}  // namespace fraccite
