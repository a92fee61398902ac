#pragma once

// Assembles indicator tables, correlation blocks, post-hoc comparisons and
// box-plot data for a set of units, and renders them either as aligned text
// or as line-delimited JSON records.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fraccite/corpus.hpp"
#include "fraccite/error.hpp"
#include "fraccite/fractional.hpp"
#include "fraccite/indicators.hpp"
#include "fraccite/statlab/anova.hpp"
#include "fraccite/statlab/correlation.hpp"
#include "fraccite/statlab/descriptive.hpp"
#include "fraccite/statlab/posthoc.hpp"

namespace fraccite {

enum class Scheme { fractional, journal_ratio, field_ratio };

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::fractional: return "fractional";
    case Scheme::journal_ratio: return "journal-ratio";
    case Scheme::field_ratio: return "field-ratio";
  }
  return "unknown";
}

inline Scheme parse_scheme(const std::string& name) {
  if (name == "fractional") return Scheme::fractional;
  if (name == "journal-ratio") return Scheme::journal_ratio;
  if (name == "field-ratio") return Scheme::field_ratio;
  throw Error(ErrorCode::invalid_argument, "unknown scheme \"" + name + "\"");
}

enum class SortColumn { label, sum_p, sum_c, mean_cpp, mean_citation_score, cpp_jcsm, sum_cf, mean_cf, cpp_fcsm, mncs };

inline SortColumn parse_sort_column(const std::string& name) {
  static const std::pair<const char*, SortColumn> names[] = {
      {"label", SortColumn::label},
      {"sum-p", SortColumn::sum_p},
      {"sum-c", SortColumn::sum_c},
      {"mean-cpp", SortColumn::mean_cpp},
      {"mean-citation-score", SortColumn::mean_citation_score},
      {"cpp-jcsm", SortColumn::cpp_jcsm},
      {"sum-cf", SortColumn::sum_cf},
      {"mean-cf", SortColumn::mean_cf},
      {"cpp-fcsm", SortColumn::cpp_fcsm},
      {"mncs", SortColumn::mncs},
  };
  for (const auto& [n, c] : names)
    if (name == n) return c;
  throw Error(ErrorCode::invalid_argument, "unknown sort column \"" + name + "\"");
}

struct ReportOptions {
  SortColumn sort = SortColumn::mean_citation_score;
  bool descending = true;
  stat::PosthocMethod method = stat::PosthocMethod::tukey;
  double alpha = 0.05;
  double sig_strong = 0.01;
  double sig_weak = 0.05;
  bool include_posthoc = true;
  std::optional<int> year_from;
  std::optional<int> year_to;
};

struct CorrelationBlock {
  std::string label;  // "journal" or "field"
  std::string x_column;
  std::string y_column;
  std::size_t n = 0;
  std::optional<stat::TestResult> spearman;
  std::optional<stat::TestResult> pearson;
  std::string note;
};

struct PosthocBlock {
  Scheme scheme = Scheme::fractional;
  std::vector<std::string> units;  // group i of `result`
  stat::PosthocResult result;
  std::optional<stat::TestResult> anova;
  std::optional<stat::TestResult> welch;
  std::optional<stat::TestResult> kruskal_wallis;
};

enum class Panel { fractional, ratio };

inline const char* to_string(Panel p) { return p == Panel::fractional ? "left-fractional" : "right-ratio"; }

struct BoxplotEntry {
  std::string unit;
  Panel panel = Panel::fractional;
  stat::SampleSummary summary;
};

struct ReportDocument {
  std::vector<UnitIndicators> rows;
  std::vector<CorrelationBlock> correlations;
  std::vector<PosthocBlock> posthoc;
  std::vector<BoxplotEntry> boxplots;
  std::vector<std::string> warnings;
};

// Units restricted to publications inside [year_from, year_to]; units left
// empty are dropped with a warning.
inline std::vector<Unit> select_units(const Corpus& corpus, const ReportOptions& opt,
                                      std::vector<std::string>& warnings) {
  std::vector<Unit> out;
  for (const auto& u : corpus.units()) {
    Unit f{u.id, u.label, {}};
    for (const auto& id : u.pubs) {
      const auto& p = corpus.pub(id);
      if (opt.year_from && p.year < *opt.year_from) continue;
      if (opt.year_to && p.year > *opt.year_to) continue;
      f.pubs.push_back(id);
    }
    if (f.pubs.empty()) {
      warnings.push_back("unit " + u.id + ": no publications after filtering; skipped");
      continue;
    }
    out.push_back(std::move(f));
  }
  return out;
}

// Per-paper values of a unit under a normalization scheme: c_f, or c/e with
// journal or field rates. Absent when the inputs do not cover every paper.
inline std::optional<std::vector<double>> scheme_values(const Corpus& corpus, const Unit& unit,
                                                        const RateSet& rates, Scheme scheme,
                                                        std::string* why = nullptr) {
  if (scheme == Scheme::fractional) {
    auto scores = unit_cf_scores(corpus, unit);
    if (!scores) {
      if (why) *why = "no edges or per-paper c_f";
      return std::nullopt;
    }
    std::vector<double> out;
    for (const auto& s : *scores) out.push_back(s.cf);
    return out;
  }
  const auto& table = scheme == Scheme::journal_ratio ? rates.journal : rates.field;
  if (table.empty()) {
    if (why) *why = std::string("no ") + to_string(table.kind) + " rates";
    return std::nullopt;
  }
  auto expected = unit_expected(corpus, unit, table, why);
  if (!expected) return std::nullopt;
  std::vector<double> out;
  for (std::size_t i = 0; i < unit.pubs.size(); ++i) {
    out.push_back(static_cast<double>(citation_count(corpus, corpus.pub(unit.pubs[i]))) /
                  (*expected)[i]);
  }
  return out;
}

inline std::optional<double> column_value(const UnitIndicators& r, SortColumn c) {
  switch (c) {
    case SortColumn::label: return std::nullopt;
    case SortColumn::sum_p: return static_cast<double>(r.sum_p);
    case SortColumn::sum_c: return static_cast<double>(r.sum_c);
    case SortColumn::mean_cpp: return r.mean_cpp.value;
    case SortColumn::mean_citation_score:
      return r.mean_citation_score ? std::optional(r.mean_citation_score->value) : std::nullopt;
    case SortColumn::cpp_jcsm: return r.cpp_jcsm;
    case SortColumn::sum_cf: return r.sum_cf;
    case SortColumn::mean_cf: return r.mean_cf ? std::optional(r.mean_cf->value) : std::nullopt;
    case SortColumn::cpp_fcsm: return r.cpp_fcsm;
    case SortColumn::mncs: return r.mncs ? std::optional(r.mncs->value) : std::nullopt;
  }
  return std::nullopt;
}

inline void sort_rows(std::vector<UnitIndicators>& rows, SortColumn column, bool descending) {
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    if (column == SortColumn::label) return descending ? a.label > b.label : a.label < b.label;
    const auto va = column_value(a, column), vb = column_value(b, column);
    if (!va || !vb) return va.has_value() && !vb.has_value();  // absent values last
    return descending ? *va > *vb : *va < *vb;
  });
}

inline CorrelationBlock correlate_columns(const std::vector<UnitIndicators>& rows, std::string label,
                                          SortColumn x, const char* x_name, SortColumn y,
                                          const char* y_name) {
  CorrelationBlock block{std::move(label), x_name, y_name, 0, std::nullopt, std::nullopt, ""};
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    auto vx = column_value(r, x), vy = column_value(r, y);
    if (vx && vy) {
      xs.push_back(*vx);
      ys.push_back(*vy);
    }
  }
  block.n = xs.size();
  if (xs.size() < 3) {
    block.note = "correlations need at least 3 units with both columns (have " +
                 std::to_string(xs.size()) + ")";
    return block;
  }
  try {
    block.spearman = stat::spearman(xs, ys);
    block.pearson = stat::pearson(xs, ys);
  } catch (const Error& e) {
    block.note = e.what();
  }
  return block;
}

inline std::optional<PosthocBlock> posthoc_block(const Corpus& corpus,
                                                 const std::vector<Unit>& units,
                                                 const RateSet& rates, Scheme scheme,
                                                 stat::PosthocMethod method, double alpha,
                                                 std::vector<std::string>& warnings) {
  PosthocBlock block;
  block.scheme = scheme;
  std::vector<stat::Sample> groups;
  for (const auto& u : units) {
    std::string why;
    auto values = scheme_values(corpus, u, rates, scheme, &why);
    if (!values) {
      warnings.push_back(std::string(to_string(scheme)) + ": unit " + u.id + " skipped (" + why + ")");
      continue;
    }
    if (values->size() < 2) {
      warnings.push_back(std::string(to_string(scheme)) + ": unit " + u.id +
                         " skipped (fewer than 2 papers)");
      continue;
    }
    block.units.push_back(u.id);
    groups.push_back(std::move(*values));
  }
  if (groups.size() < 2) {
    warnings.push_back(std::string(to_string(scheme)) + ": post-hoc needs at least 2 units");
    return std::nullopt;
  }
  try {
    block.result = stat::posthoc(groups, method, alpha);
  } catch (const Error& e) {
    warnings.push_back(std::string(to_string(scheme)) + ": " + e.what());
    return std::nullopt;
  }
  block.anova = stat::one_way_anova(groups);
  try {
    block.welch = stat::welch_anova(groups);
  } catch (const Error& e) {
    warnings.push_back(std::string(to_string(scheme)) + ": welch skipped (" + e.what() + ")");
  }
  block.kruskal_wallis = stat::kruskal_wallis(groups);
  return block;
}

inline std::vector<BoxplotEntry> boxplots(const Corpus& corpus, const std::vector<Unit>& units,
                                          const RateSet& rates, std::vector<std::string>& warnings) {
  std::vector<BoxplotEntry> out;
  for (const auto& u : units) {
    for (auto [panel, scheme] : {std::pair{Panel::fractional, Scheme::fractional},
                                 std::pair{Panel::ratio, Scheme::journal_ratio}}) {
      std::string why;
      auto values = scheme_values(corpus, u, rates, scheme, &why);
      if (!values) {
        warnings.push_back("boxplot " + std::string(to_string(panel)) + ": unit " + u.id +
                           " skipped (" + why + ")");
        continue;
      }
      out.push_back({u.id, panel, stat::summarize(*values)});
    }
  }
  return out;
}

inline ReportDocument build_report(const Corpus& corpus, const RateSet& rates,
                                   const ReportOptions& opt = {}) {
  ReportDocument doc;
  const auto units = select_units(corpus, opt, doc.warnings);

  for (const auto& u : units) doc.rows.push_back(unit_report(corpus, u, rates.journal, rates.field, &doc.warnings));
  sort_rows(doc.rows, opt.sort, opt.descending);

  if (corpus.has_edges()) {
    for (const auto& p : corpus.publications()) {
      if (!p.given_cf) continue;
      const double computed = fractional_score(corpus, p.id).cf;
      if (std::fabs(computed - *p.given_cf) > 1e-9 * std::max(1.0, computed)) {
        std::ostringstream msg;
        msg << std::setprecision(17) << "pub " << p.id << ": given c_f " << *p.given_cf
            << " differs from edge-computed " << computed;
        doc.warnings.push_back(msg.str());
      }
    }
  }

  doc.correlations.push_back(correlate_columns(doc.rows, "journal", SortColumn::mean_citation_score,
                                               "mean_citation_score", SortColumn::cpp_jcsm,
                                               "cpp_jcsm"));
  doc.correlations.push_back(correlate_columns(doc.rows, "field", SortColumn::mean_cf, "mean_cf",
                                               SortColumn::cpp_fcsm, "cpp_fcsm"));

  if (opt.include_posthoc) {
    for (auto scheme : {Scheme::fractional, Scheme::journal_ratio, Scheme::field_ratio}) {
      if (auto block = posthoc_block(corpus, units, rates, scheme, opt.method, opt.alpha, doc.warnings)) {
        doc.posthoc.push_back(std::move(*block));
      }
    }
  }
  doc.boxplots = boxplots(corpus, units, rates, doc.warnings);
  return doc;
}

// ---------------------------------------------------------------------------
// Machine records

namespace records {

using nlohmann::json;

inline json number_or_null(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

inline json estimate(const std::optional<Estimate>& e) {
  if (!e) return nullptr;
  return json{{"value", e->value}, {"sem", number_or_null(e->sem)}};
}

inline json test(const stat::TestResult& t) {
  json j{{"method", stat::to_string(t.method)},
         {"df1", t.df1},
         {"df2", number_or_null(t.df2)},
         {"p_value", number_or_null(t.p_value)}};
  if (std::isfinite(t.statistic)) {
    j["statistic"] = t.statistic;
  } else if (std::isinf(t.statistic)) {
    j["statistic"] = t.statistic > 0 ? "inf" : "-inf";
  } else {
    j["statistic"] = nullptr;
  }
  return j;
}

inline json row(const UnitIndicators& r) {
  return json{{"record", "row"},
              {"unit", r.unit},
              {"label", r.label},
              {"sum_p", r.sum_p},
              {"sum_c", r.sum_c},
              {"mean_cpp", estimate(r.mean_cpp)},
              {"mean_citation_score", estimate(r.mean_citation_score)},
              {"cpp_jcsm", number_or_null(r.cpp_jcsm)},
              {"sum_cf", number_or_null(r.sum_cf)},
              {"mean_cf", estimate(r.mean_cf)},
              {"cpp_fcsm", number_or_null(r.cpp_fcsm)},
              {"mncs", estimate(r.mncs)}};
}

inline std::vector<json> correlation(const CorrelationBlock& b) {
  std::vector<json> out;
  for (const auto* t : {&b.spearman, &b.pearson}) {
    if (!*t) continue;
    json j = test(**t);
    j["record"] = "correlation";
    j["block"] = b.label;
    j["x"] = b.x_column;
    j["y"] = b.y_column;
    j["n"] = b.n;
    out.push_back(std::move(j));
  }
  if (out.empty()) {
    out.push_back(json{{"record", "correlation"}, {"block", b.label}, {"x", b.x_column},
                       {"y", b.y_column}, {"n", b.n}, {"note", b.note}});
  }
  return out;
}

inline json posthoc(const stat::PosthocResult& r, const std::vector<std::string>& units) {
  json subsets = json::array();
  for (const auto& s : r.homogeneous_subsets) {
    json ids = json::array();
    for (auto g : s) ids.push_back(units[g]);
    subsets.push_back(std::move(ids));
  }
  return json{{"record", "posthoc"},
              {"method", stat::to_string(r.method)},
              {"alpha", r.alpha},
              {"units", units},
              {"means", r.means},
              {"sizes", r.sizes},
              {"pairwise", r.pairwise},
              {"homogeneous_subsets", std::move(subsets)}};
}

inline json posthoc(const PosthocBlock& b) {
  json j = posthoc(b.result, b.units);
  j["scheme"] = to_string(b.scheme);
  j["anova"] = b.anova ? test(*b.anova) : json(nullptr);
  j["welch"] = b.welch ? test(*b.welch) : json(nullptr);
  j["kruskal_wallis"] = b.kruskal_wallis ? test(*b.kruskal_wallis) : json(nullptr);
  return j;
}

inline json boxplot(const BoxplotEntry& b) {
  const auto& s = b.summary;
  return json{{"record", "boxplot"},
              {"unit", b.unit},
              {"panel", to_string(b.panel)},
              {"n", s.n},
              {"mean", s.mean},
              {"sd", number_or_null(s.sd)},
              {"sem", number_or_null(s.sem)},
              {"median", s.median},
              {"q1", s.q1},
              {"q3", s.q3},
              {"whisker_low", s.whisker_low},
              {"whisker_high", s.whisker_high},
              {"outliers", s.outliers}};
}

inline void write(std::ostream& out, const ReportDocument& doc) {
  for (const auto& r : doc.rows) out << row(r).dump() << '\n';
  for (const auto& c : doc.correlations)
    for (const auto& j : correlation(c)) out << j.dump() << '\n';
  for (const auto& p : doc.posthoc) out << posthoc(p).dump() << '\n';
  for (const auto& b : doc.boxplots) out << boxplot(b).dump() << '\n';
}

}  // namespace records

// ---------------------------------------------------------------------------
// Human-readable text

namespace text {

inline std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string cell(const std::optional<double>& v) { return v ? fixed(*v) : "-"; }

inline std::string cell(const std::optional<Estimate>& e) {
  if (!e) return "-";
  std::string s = fixed(e->value);
  if (e->sem) s += " (± " + fixed(*e->sem) + ")";
  return s;
}

inline std::string significance(std::optional<double> p, double strong, double weak) {
  if (!p) return "p n/a";
  if (*p < strong) return "p < " + fixed(strong);
  if (*p < weak) return "p < " + fixed(weak);
  return "n.s.";
}

// Display width of a UTF-8 string (counts code points).
inline std::size_t width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++w;
  return w;
}

inline void table(std::ostream& out, const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> widths;
  for (const auto& row : cells) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], width(row[i]));
  }
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      const std::size_t pad = widths[i] - width(row[i]);
      if (i == 0) {
        line += row[i] + std::string(pad, ' ');
      } else {
        line += std::string(pad, ' ') + row[i];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

inline void rows(std::ostream& out, const std::vector<UnitIndicators>& rows) {
  std::vector<std::vector<std::string>> cells{{"Unit", "Σp", "Σc", "Avg(c/p)", "Mean cit. score",
                                               "CPP/JCSm", "Σc_f", "Avg(c_f)", "CPP/FCSm", "MNCS"}};
  for (const auto& r : rows) {
    cells.push_back({r.label, std::to_string(r.sum_p), std::to_string(r.sum_c),
                     cell(std::optional(r.mean_cpp)), cell(r.mean_citation_score), cell(r.cpp_jcsm),
                     cell(r.sum_cf), cell(r.mean_cf), cell(r.cpp_fcsm), cell(r.mncs)});
  }
  table(out, cells);
}

inline void correlations(std::ostream& out, const std::vector<CorrelationBlock>& blocks,
                         const ReportOptions& opt) {
  for (const auto& b : blocks) {
    out << b.label << " normalization (" << b.x_column << " vs " << b.y_column << "): ";
    if (!b.spearman || !b.pearson) {
      out << "absent; " << b.note << '\n';
      continue;
    }
    out << "Spearman rho = " << fixed(b.spearman->statistic) << "; "
        << significance(b.spearman->p_value, opt.sig_strong, opt.sig_weak)
        << "   Pearson r = " << fixed(b.pearson->statistic) << "; "
        << significance(b.pearson->p_value, opt.sig_strong, opt.sig_weak) << '\n';
  }
}

inline std::string test_line(const stat::TestResult& t) {
  std::string s = std::string(stat::to_string(t.method)) + ": statistic " +
                  (std::isfinite(t.statistic) ? fixed(t.statistic, 3)
                                              : (std::isinf(t.statistic) ? "inf" : "undefined")) +
                  ", df " + fixed(t.df1, 0);
  if (t.df2) s += ", " + fixed(*t.df2, 2);
  s += ", p " + (t.p_value ? fixed(*t.p_value, 4) : std::string("n/a"));
  return s;
}

inline void posthoc(std::ostream& out, const stat::PosthocResult& r,
                    const std::vector<std::string>& units) {
  out << "pairwise adjusted p (" << stat::to_string(r.method) << ", alpha " << fixed(r.alpha)
      << ")\n";
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{""};
  for (const auto& u : units) head.push_back(u);
  cells.push_back(head);
  for (std::size_t i = 0; i < units.size(); ++i) {
    std::vector<std::string> line{units[i]};
    for (std::size_t j = 0; j < units.size(); ++j) line.push_back(i == j ? "-" : fixed(r.pairwise[i][j], 4));
    cells.push_back(std::move(line));
  }
  table(out, cells);
  out << "homogeneous subsets:";
  for (const auto& s : r.homogeneous_subsets) {
    out << " {";
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? ", " : "") << units[s[i]];
    out << "}";
  }
  out << '\n';
}

inline void posthoc(std::ostream& out, const PosthocBlock& b) {
  out << "scheme " << to_string(b.scheme) << '\n';
  if (b.anova) out << "  " << test_line(*b.anova) << '\n';
  if (b.welch) out << "  " << test_line(*b.welch) << '\n';
  if (b.kruskal_wallis) out << "  " << test_line(*b.kruskal_wallis) << '\n';
  posthoc(out, b.result, b.units);
}

inline void boxplots(std::ostream& out, const std::vector<BoxplotEntry>& entries) {
  std::vector<std::vector<std::string>> cells{
      {"Unit", "Panel", "n", "Median", "Q1", "Q3", "Whisker lo", "Whisker hi", "Outliers"}};
  for (const auto& b : entries) {
    const auto& s = b.summary;
    cells.push_back({b.unit, to_string(b.panel), std::to_string(s.n), fixed(s.median), fixed(s.q1),
                     fixed(s.q3), fixed(s.whisker_low), fixed(s.whisker_high),
                     std::to_string(s.outliers.size())});
  }
  table(out, cells);
}

inline void write(std::ostream& out, const ReportDocument& doc, const ReportOptions& opt) {
  rows(out, doc.rows);
  out << '\n';
  correlations(out, doc.correlations, opt);
  for (const auto& p : doc.posthoc) {
    out << '\n';
    posthoc(out, p);
  }
  if (!doc.boxplots.empty()) {
    out << '\n';
    boxplots(out, doc.boxplots);
  }
}

}  // namespace text

}  // namespace fraccite
