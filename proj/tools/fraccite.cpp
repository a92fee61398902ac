// fraccite: command-line front end.
//
//   fraccite report   --corpus C [--journal-rates J] [--field-rates F] [--format table|records]
//   fraccite boxplot  --corpus C [--journal-rates J]
//   fraccite posthoc  --corpus C --scheme fractional|journal-ratio|field-ratio --method M --alpha A
//   fraccite fif      --corpus C --journal KEY --year T
//   fraccite validate --corpus C
//
// Exit status: 0 on success (warnings go to stderr), 1 on any hard error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fraccite/fraccite.hpp"

namespace {

using fraccite::Dataset;
using fraccite::RateSet;
using nlohmann::json;

struct Common {
  std::string corpus;
  std::string journal_rates;
  std::string field_rates;
  std::string format = "table";
  double alpha = 0.05;
  std::string method = "tukey";
  std::optional<int> year_from;
  std::optional<int> year_to;
};

void add_common(CLI::App* cmd, Common& c, bool rates) {
  cmd->add_option("--corpus", c.corpus, "Line-delimited corpus file")->required()->check(CLI::ExistingFile);
  if (rates) {
    cmd->add_option("--journal-rates", c.journal_rates, "Rates file with journal-table records")
        ->check(CLI::ExistingFile);
    cmd->add_option("--field-rates", c.field_rates, "Rates file with field-table records")
        ->check(CLI::ExistingFile);
  }
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"table", "records"}))
      ->capture_default_str();
}

void add_filter(CLI::App* cmd, Common& c) {
  cmd->add_option("--year-from", c.year_from, "Only publications from this year on");
  cmd->add_option("--year-to", c.year_to, "Only publications up to this year");
}

// Embedded rate records serve as defaults; explicit rates files replace the
// corresponding table.
RateSet resolve_rates(const Dataset& data, const Common& c) {
  RateSet rates = data.rates;
  if (!c.journal_rates.empty()) rates.journal = fraccite::load_rates(c.journal_rates).journal;
  if (!c.field_rates.empty()) rates.field = fraccite::load_rates(c.field_rates).field;
  return rates;
}

void emit_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

fraccite::ReportOptions options_from(const Common& c) {
  fraccite::ReportOptions opt;
  opt.alpha = c.alpha;
  opt.method = fraccite::stat::parse_posthoc_method(c.method);
  opt.year_from = c.year_from;
  opt.year_to = c.year_to;
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional citation counting and normalization indicators"};
  app.require_subcommand(1);

  Common common;
  std::string sort = "mean-citation-score";
  bool ascending = false;
  bool no_posthoc = false;
  double sig_strong = 0.01, sig_weak = 0.05;
  std::string scheme = "fractional";
  std::string journal;
  int year = 0;

  auto* report = app.add_subcommand("report", "Indicator table with correlation blocks");
  add_common(report, common, true);
  add_filter(report, common);
  report->add_option("--sort", sort, "Sort column")->capture_default_str();
  report->add_flag("--ascending", ascending, "Sort ascending");
  report->add_option("--alpha", common.alpha, "Post-hoc significance level")->capture_default_str();
  report->add_option("--method", common.method, "Post-hoc method")
      ->check(CLI::IsMember({"bonferroni", "tukey", "scheffe"}))
      ->capture_default_str();
  report->add_flag("--no-posthoc", no_posthoc, "Skip post-hoc comparisons");
  report->add_option("--sig-strong", sig_strong, "Stronger significance mark")->capture_default_str();
  report->add_option("--sig-weak", sig_weak, "Weaker significance mark")->capture_default_str();

  auto* boxplot = app.add_subcommand("boxplot", "Per-unit box-plot summaries for plotting");
  add_common(boxplot, common, true);
  add_filter(boxplot, common);

  auto* posthoc = app.add_subcommand("posthoc", "Pairwise comparisons and homogeneous subsets");
  add_common(posthoc, common, true);
  add_filter(posthoc, common);
  posthoc->add_option("--scheme", scheme, "Per-paper normalization")
      ->check(CLI::IsMember({"fractional", "journal-ratio", "field-ratio"}))
      ->capture_default_str();
  posthoc->add_option("--method", common.method, "Post-hoc method")
      ->check(CLI::IsMember({"bonferroni", "tukey", "scheffe"}))
      ->capture_default_str();
  posthoc->add_option("--alpha", common.alpha, "Significance level")->capture_default_str();

  auto* fif = app.add_subcommand("fif", "Fractionally counted journal impact factor");
  add_common(fif, common, false);
  fif->add_option("--journal", journal, "Journal key")->required();
  fif->add_option("--year", year, "Citation year t")->required();

  auto* validate = app.add_subcommand("validate", "Check a corpus and list every violation");
  add_common(validate, common, false);

  CLI11_PARSE(app, argc, argv);
  const bool as_records = common.format == "records";

  try {
    if (validate->parsed()) {
      std::ifstream in(common.corpus);
      auto data = fraccite::parse_dataset(in, common.corpus);
      auto violations = fraccite::validate(data.corpus);
      for (const auto* t : {&data.rates.journal, &data.rates.field}) {
        auto more = fraccite::validate(*t);
        violations.insert(violations.end(), more.begin(), more.end());
      }
      for (const auto& v : violations) {
        if (as_records) {
          std::cout << json{{"record", "violation"}, {"rule", fraccite::to_string(v.rule)},
                            {"entity", v.entity}, {"detail", v.detail}}
                           .dump()
                    << '\n';
        } else {
          std::cout << v.describe() << '\n';
        }
      }
      if (!as_records && violations.empty()) std::cout << "ok\n";
      return violations.empty() ? 0 : 1;
    }

    const auto data = fraccite::load_dataset(common.corpus);

    if (fif->parsed()) {
      const double value = fraccite::fractional_impact_factor(data.corpus, journal, year);
      if (as_records) {
        std::cout << json{{"record", "fif"}, {"journal", journal}, {"year", year}, {"value", value}}.dump()
                  << '\n';
      } else {
        std::cout << "fractional impact factor " << journal << " " << year << ": "
                  << fraccite::text::fixed(value, 4) << '\n';
      }
      return 0;
    }

    const auto rates = resolve_rates(data, common);
    auto opt = options_from(common);

    if (report->parsed()) {
      opt.sort = fraccite::parse_sort_column(sort);
      opt.descending = !ascending;
      opt.include_posthoc = !no_posthoc;
      opt.sig_strong = sig_strong;
      opt.sig_weak = sig_weak;
      const auto doc = fraccite::build_report(data.corpus, rates, opt);
      emit_warnings(doc.warnings);
      if (as_records) {
        fraccite::records::write(std::cout, doc);
      } else {
        fraccite::text::write(std::cout, doc, opt);
      }
      return 0;
    }

    std::vector<std::string> warnings;
    const auto units = fraccite::select_units(data.corpus, opt, warnings);

    if (boxplot->parsed()) {
      const auto entries = fraccite::boxplots(data.corpus, units, rates, warnings);
      emit_warnings(warnings);
      if (as_records) {
        for (const auto& b : entries) std::cout << fraccite::records::boxplot(b).dump() << '\n';
      } else {
        fraccite::text::boxplots(std::cout, entries);
      }
      return 0;
    }

    if (posthoc->parsed()) {
      auto block = fraccite::posthoc_block(data.corpus, units, rates, fraccite::parse_scheme(scheme),
                                           opt.method, opt.alpha, warnings);
      emit_warnings(warnings);
      if (!block) {
        std::cerr << "error: post-hoc comparison not possible\n";
        return 1;
      }
      if (as_records) {
        std::cout << fraccite::records::posthoc(*block).dump() << '\n';
      } else {
        fraccite::text::posthoc(std::cout, *block);
      }
      return 0;
    }
  } catch (const fraccite::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
