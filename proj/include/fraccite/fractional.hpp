#pragma once

// Fractional counting of citations on the citing side: a citation from a
// paper whose reference list has N entries is worth 1/N. Field differences in
// citation density are normalized by the citing authors' own behavior, with
// no classification scheme involved.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fraccite/corpus.hpp"
#include "fraccite/error.hpp"
#include "fraccite/numeric.hpp"

namespace fraccite {

struct FractionalScore {
  std::string pub;
  double cf = 0.0;

  friend bool operator==(const FractionalScore&, const FractionalScore&) = default;
};

// n_refs is the full reference-list length, not the in-corpus resolvable part.
inline double fractional_weight(const Publication& citing) {
  if (citing.n_refs < 1) {
    throw Error(ErrorCode::zero_references,
                "zero-reference citing paper \"" + citing.id + "\" cannot be fractionated");
  }
  return 1.0 / static_cast<double>(citing.n_refs);
}

inline FractionalScore fractional_score(const Corpus& corpus, std::string_view pub) {
  const auto& target = corpus.pub(pub);
  CompensatedSum cf;
  for (std::size_t e : corpus.incoming(target.id)) {
    const auto& edge = corpus.edges()[e];
    const auto* citing = corpus.find_pub(edge.citing);
    if (citing == nullptr) {
      throw Error(ErrorCode::not_found, "citing paper \"" + edge.citing + "\" is not in the corpus");
    }
    cf.add(fractional_weight(*citing));
  }
  return {target.id, cf.value()};
}

// One score per publication of the unit, in unit order.
inline std::vector<FractionalScore> unit_fractional_scores(const Corpus& corpus, const Unit& unit) {
  std::vector<FractionalScore> out;
  out.reserve(unit.pubs.size());
  for (const auto& id : unit.pubs) out.push_back(fractional_score(corpus, id));
  return out;
}

inline double sum_cf(std::span<const FractionalScore> scores) {
  CompensatedSum acc;
  for (const auto& s : scores) acc.add(s.cf);
  return acc.value();
}

inline double mean_cf(std::span<const FractionalScore> scores) {
  if (scores.empty()) throw Error(ErrorCode::empty_input, "mean of an empty score list");
  return sum_cf(scores) / static_cast<double>(scores.size());
}

// mean(unit c_f) / mean(reference c_f). The reference set is arbitrary:
// a field, a journal, a department, the whole corpus.
inline double benchmark_ratio(std::span<const FractionalScore> unit_scores,
                              std::span<const FractionalScore> reference_scores) {
  if (unit_scores.empty()) throw Error(ErrorCode::empty_input, "empty unit score set");
  if (reference_scores.empty()) throw Error(ErrorCode::empty_input, "empty reference set");
  const double ref = mean_cf(reference_scores);
  if (!(ref > 0.0)) throw Error(ErrorCode::nonpositive_value, "zero reference mean");
  return mean_cf(unit_scores) / ref;
}

}  // namespace fraccite
