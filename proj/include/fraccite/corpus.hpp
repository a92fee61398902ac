#pragma once

// Bibliographic data model and its line-delimited JSON interchange format.
//
// Each line of a corpus file is one record tagged by "kind":
//   {"kind":"pub","id":"p1","year":2005,"journal":"J1","fields":["F1"],
//    "n_refs":12,"citations_received":3}
//   {"kind":"edge","citing":"p2","cited":"p1","year":2006}
//   {"kind":"unit","id":"u1","label":"PI 1","pubs":["p1"]}
//   {"kind":"rate","table":"journal","key":"J1","value":4.0}
// A pub record may also carry "c_f", a precomputed fractional score used
// only when the corpus holds no edges.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fraccite/error.hpp"

namespace fraccite {

struct Publication {
  std::string id;
  int year = 0;
  std::string journal;
  std::vector<std::string> fields;
  std::int64_t n_refs = 0;
  std::int64_t citations_received = 0;
  std::optional<double> given_cf;

  friend bool operator==(const Publication&, const Publication&) = default;
};

struct CitationEdge {
  std::string citing;
  std::string cited;
  int year = 0;

  friend bool operator==(const CitationEdge&, const CitationEdge&) = default;
};

struct Unit {
  std::string id;
  std::string label;
  std::vector<std::string> pubs;

  friend bool operator==(const Unit&, const Unit&) = default;
};

enum class RateKind { journal, field };

inline const char* to_string(RateKind kind) { return kind == RateKind::journal ? "journal" : "field"; }

struct RateTable {
  RateKind kind = RateKind::journal;
  std::map<std::string, double, std::less<>> rates;

  bool empty() const noexcept { return rates.empty(); }

  std::optional<double> find(std::string_view key) const {
    auto it = rates.find(key);
    if (it == rates.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const RateTable&, const RateTable&) = default;
};

struct RateSet {
  RateTable journal{RateKind::journal, {}};
  RateTable field{RateKind::field, {}};

  friend bool operator==(const RateSet&, const RateSet&) = default;
};

enum class Rule {
  empty_id,
  duplicate_pub,
  duplicate_unit,
  negative_count,
  dangling_citing,
  dangling_cited,
  zero_reference_citing,
  empty_unit,
  dangling_unit_pub,
  citation_count_mismatch,
  nonpositive_rate,
};

inline const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::empty_id: return "empty-id";
    case Rule::duplicate_pub: return "duplicate-pub";
    case Rule::duplicate_unit: return "duplicate-unit";
    case Rule::negative_count: return "negative-count";
    case Rule::dangling_citing: return "dangling-citing";
    case Rule::dangling_cited: return "dangling-cited";
    case Rule::zero_reference_citing: return "zero-reference citing paper";
    case Rule::empty_unit: return "empty-unit";
    case Rule::dangling_unit_pub: return "dangling-unit-pub";
    case Rule::citation_count_mismatch: return "citation-count-mismatch";
    case Rule::nonpositive_rate: return "nonpositive-rate";
  }
  return "unknown";
}

struct Violation {
  Rule rule;
  std::string entity;  // offending id (pub, unit, or rate key)
  std::string detail;

  std::string describe() const {
    std::string s = std::string(to_string(rule)) + "(" + entity + ")";
    if (!detail.empty()) s += ": " + detail;
    return s;
  }

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Immutable after construction. Lookup indexes are built eagerly, so a
// Corpus may be shared across threads without synchronization. Duplicate
// ids are kept (validate() reports them); lookups resolve to the first.
class Corpus {
 public:
  Corpus() = default;

  Corpus(std::vector<Publication> pubs, std::vector<CitationEdge> edges, std::vector<Unit> units)
      : pubs_(std::move(pubs)), edges_(std::move(edges)), units_(std::move(units)) {
    for (std::size_t i = 0; i < pubs_.size(); ++i) pub_index_.try_emplace(pubs_[i].id, i);
    for (std::size_t i = 0; i < units_.size(); ++i) unit_index_.try_emplace(units_[i].id, i);
    incoming_.resize(pubs_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      auto it = pub_index_.find(edges_[e].cited);
      if (it != pub_index_.end()) incoming_[it->second].push_back(e);
    }
  }

  const std::vector<Publication>& publications() const noexcept { return pubs_; }
  const std::vector<CitationEdge>& edges() const noexcept { return edges_; }
  const std::vector<Unit>& units() const noexcept { return units_; }

  bool has_edges() const noexcept { return !edges_.empty(); }

  const Publication* find_pub(std::string_view id) const {
    auto it = pub_index_.find(std::string(id));
    return it == pub_index_.end() ? nullptr : &pubs_[it->second];
  }

  const Unit* find_unit(std::string_view id) const {
    auto it = unit_index_.find(std::string(id));
    return it == unit_index_.end() ? nullptr : &units_[it->second];
  }

  const Publication& pub(std::string_view id) const {
    if (const auto* p = find_pub(id)) return *p;
    throw Error(ErrorCode::not_found, "unknown publication \"" + std::string(id) + "\"");
  }

  const Unit& unit(std::string_view id) const {
    if (const auto* u = find_unit(id)) return *u;
    throw Error(ErrorCode::not_found, "unknown unit \"" + std::string(id) + "\"");
  }

  // Indices into edges() of the citations received by `id`, in file order.
  const std::vector<std::size_t>& incoming(std::string_view id) const {
    static const std::vector<std::size_t> none;
    auto it = pub_index_.find(std::string(id));
    return it == pub_index_.end() ? none : incoming_[it->second];
  }

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.pubs_ == b.pubs_ && a.edges_ == b.edges_ && a.units_ == b.units_;
  }

 private:
  std::vector<Publication> pubs_;
  std::vector<CitationEdge> edges_;
  std::vector<Unit> units_;
  std::unordered_map<std::string, std::size_t> pub_index_;
  std::unordered_map<std::string, std::size_t> unit_index_;
  std::vector<std::vector<std::size_t>> incoming_;
};

// Checks every invariant and returns all violations; empty iff valid.
inline std::vector<Violation> validate(const Corpus& corpus) {
  std::vector<Violation> out;
  std::unordered_map<std::string, int> seen;

  for (const auto& p : corpus.publications()) {
    if (p.id.empty()) out.push_back({Rule::empty_id, "", "publication"});
    if (++seen[p.id] == 2) out.push_back({Rule::duplicate_pub, p.id, ""});
    if (p.n_refs < 0) out.push_back({Rule::negative_count, p.id, "n_refs"});
    if (p.citations_received < 0) out.push_back({Rule::negative_count, p.id, "citations_received"});
    if (p.given_cf && !(*p.given_cf >= 0.0)) out.push_back({Rule::negative_count, p.id, "c_f"});
  }

  for (const auto& e : corpus.edges()) {
    const auto* citing = corpus.find_pub(e.citing);
    if (citing == nullptr) {
      out.push_back({Rule::dangling_citing, e.citing, "cites " + e.cited});
    } else if (citing->n_refs < 1) {
      out.push_back({Rule::zero_reference_citing, e.citing, "cites " + e.cited});
    }
    if (corpus.find_pub(e.cited) == nullptr) {
      out.push_back({Rule::dangling_cited, e.cited, "cited by " + e.citing});
    }
  }

  if (corpus.has_edges()) {
    for (const auto& p : corpus.publications()) {
      const auto in = static_cast<std::int64_t>(corpus.incoming(p.id).size());
      if (&corpus.pub(p.id) == &p && in != p.citations_received) {
        out.push_back({Rule::citation_count_mismatch, p.id,
                       "citations_received=" + std::to_string(p.citations_received) +
                           " but " + std::to_string(in) + " incoming edges"});
      }
    }
  }

  std::unordered_map<std::string, int> seen_units;
  for (const auto& u : corpus.units()) {
    if (u.id.empty()) out.push_back({Rule::empty_id, "", "unit"});
    if (++seen_units[u.id] == 2) out.push_back({Rule::duplicate_unit, u.id, ""});
    if (u.pubs.empty()) out.push_back({Rule::empty_unit, u.id, ""});
    for (const auto& id : u.pubs) {
      if (corpus.find_pub(id) == nullptr) out.push_back({Rule::dangling_unit_pub, u.id, id});
    }
  }
  return out;
}

inline std::vector<Violation> validate(const RateTable& table) {
  std::vector<Violation> out;
  for (const auto& [key, value] : table.rates) {
    if (!(value > 0.0)) out.push_back({Rule::nonpositive_rate, key, to_string(table.kind)});
  }
  return out;
}

namespace detail {

using nlohmann::json;

template <typename T>
T required(const json& rec, const char* key, const std::string& file, std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end()) throw ParseError(file, line, std::string("missing field \"") + key + "\"");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(file, line, std::string("field \"") + key + "\" has the wrong type");
  }
}

template <typename T>
T optional_field(const json& rec, const char* key, T fallback, const std::string& file,
                 std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(file, line, std::string("field \"") + key + "\" has the wrong type");
  }
}

inline std::int64_t count_field(const json& rec, const char* key, const std::string& file,
                                std::size_t line, bool required_field) {
  auto it = rec.find(key);
  if (it == rec.end()) {
    if (required_field) throw ParseError(file, line, std::string("missing field \"") + key + "\"");
    return 0;
  }
  if (!it->is_number_integer()) {
    throw ParseError(file, line, std::string("field \"") + key + "\" must be an integer");
  }
  auto v = it->get<std::int64_t>();
  if (v < 0) throw ParseError(file, line, std::string("field \"") + key + "\" is negative");
  return v;
}

}  // namespace detail

// Everything a corpus file can hold: the corpus proper plus any embedded
// rate records.
struct Dataset {
  Corpus corpus;
  RateSet rates;
};

// Parses records without validating the corpus; rate values are checked
// here since they have no cross-record invariants.
inline Dataset parse_dataset(std::istream& in, const std::string& file = "<input>") {
  using detail::json;
  std::vector<Publication> pubs;
  std::vector<CitationEdge> edges;
  std::vector<Unit> units;
  RateSet rates;

  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;

    json rec;
    try {
      rec = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(file, line, std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object()) throw ParseError(file, line, "record is not an object");
    const auto kind = detail::required<std::string>(rec, "kind", file, line);

    if (kind == "pub") {
      Publication p;
      p.id = detail::required<std::string>(rec, "id", file, line);
      p.year = detail::optional_field<int>(rec, "year", 0, file, line);
      p.journal = detail::optional_field<std::string>(rec, "journal", "", file, line);
      p.fields = detail::optional_field<std::vector<std::string>>(rec, "fields", {}, file, line);
      p.n_refs = detail::count_field(rec, "n_refs", file, line, true);
      p.citations_received = detail::count_field(rec, "citations_received", file, line, false);
      if (auto it = rec.find("c_f"); it != rec.end() && !it->is_null()) {
        if (!it->is_number()) throw ParseError(file, line, "field \"c_f\" must be a number");
        p.given_cf = it->get<double>();
        if (!(*p.given_cf >= 0.0)) throw ParseError(file, line, "field \"c_f\" is negative");
      }
      pubs.push_back(std::move(p));
    } else if (kind == "edge") {
      CitationEdge e;
      e.citing = detail::required<std::string>(rec, "citing", file, line);
      e.cited = detail::required<std::string>(rec, "cited", file, line);
      e.year = detail::optional_field<int>(rec, "year", 0, file, line);
      edges.push_back(std::move(e));
    } else if (kind == "unit") {
      Unit u;
      u.id = detail::required<std::string>(rec, "id", file, line);
      u.label = detail::optional_field<std::string>(rec, "label", u.id, file, line);
      u.pubs = detail::required<std::vector<std::string>>(rec, "pubs", file, line);
      units.push_back(std::move(u));
    } else if (kind == "rate") {
      const auto table = detail::required<std::string>(rec, "table", file, line);
      const auto key = detail::required<std::string>(rec, "key", file, line);
      const auto value = detail::required<double>(rec, "value", file, line);
      RateTable* target = nullptr;
      if (table == "journal") {
        target = &rates.journal;
      } else if (table == "field") {
        target = &rates.field;
      } else {
        throw ParseError(file, line, "unknown rate table \"" + table + "\"");
      }
      if (!(value > 0.0)) throw ParseError(file, line, "rate for \"" + key + "\" must be positive");
      if (!target->rates.emplace(key, value).second) {
        throw ParseError(file, line, "duplicate " + table + " rate \"" + key + "\"");
      }
    } else {
      throw ParseError(file, line, "unknown record kind \"" + kind + "\"");
    }
  }
  return {Corpus(std::move(pubs), std::move(edges), std::move(units)), std::move(rates)};
}

inline std::string describe(const std::vector<Violation>& violations) {
  std::string msg;
  for (const auto& v : violations) {
    if (!msg.empty()) msg += "; ";
    msg += v.describe();
  }
  return msg;
}

// Parses and validates; throws ParseError for malformed lines and
// Error(invalid_corpus) listing every violation otherwise.
inline Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  auto data = parse_dataset(in, path);
  auto violations = validate(data.corpus);
  if (!violations.empty()) {
    throw Error(ErrorCode::invalid_corpus, path + ": " + describe(violations));
  }
  return data;
}

inline Corpus load_corpus(const std::string& path) { return load_dataset(path).corpus; }

inline RateSet load_rates(const std::string& path) {
  auto data = load_dataset(path);
  if (!data.corpus.publications().empty() || data.corpus.has_edges() ||
      !data.corpus.units().empty()) {
    throw Error(ErrorCode::invalid_argument, path + ": rates file holds non-rate records");
  }
  return data.rates;
}

inline void write_corpus(std::ostream& out, const Corpus& corpus, const RateSet& rates = {}) {
  using detail::json;
  for (const auto& p : corpus.publications()) {
    json rec = {{"kind", "pub"},   {"id", p.id},         {"year", p.year},
                {"journal", p.journal}, {"fields", p.fields}, {"n_refs", p.n_refs},
                {"citations_received", p.citations_received}};
    if (p.given_cf) rec["c_f"] = *p.given_cf;
    out << rec.dump() << '\n';
  }
  for (const auto& e : corpus.edges()) {
    out << json{{"kind", "edge"}, {"citing", e.citing}, {"cited", e.cited}, {"year", e.year}}.dump()
        << '\n';
  }
  for (const auto& u : corpus.units()) {
    out << json{{"kind", "unit"}, {"id", u.id}, {"label", u.label}, {"pubs", u.pubs}}.dump() << '\n';
  }
  for (const RateTable* t : {&rates.journal, &rates.field}) {
    for (const auto& [key, value] : t->rates) {
      out << json{{"kind", "rate"}, {"table", to_string(t->kind)}, {"key", key}, {"value", value}}
                 .dump()
          << '\n';
    }
  }
}

}  // namespace fraccite
