// rankprof: finite-horizon first-order rank profiles of regular languages.
//
// Exit codes: 0 success, 1 error, 2 partial result (rows skipped at a cap),
// 3 cycle extraction requested for an aperiodic language.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rankprof/errors.hpp"
#include "rankprof/formula.hpp"
#include "rankprof/language.hpp"
#include "rankprof/profiles.hpp"
#include "rankprof/report_io.hpp"

namespace {

using namespace rankprof;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPartial = 2;
constexpr int kExitNoWitness = 3;

struct CommonFlags {
  std::string format = "json";
  std::string output;
  std::optional<std::uint64_t> budget;
  std::uint64_t ball_cap = kDefaultBallCap;
  bool serial = false;
};

ProfileOptions profile_options(const CommonFlags& flags) {
  ProfileOptions opt;
  opt.ball_cap = flags.ball_cap;
  opt.parallel = !flags.serial;
  if (const char* env = std::getenv("RANKPROF_BUDGET")) {
    try {
      opt.type_budget = std::stoull(env);
    } catch (const std::exception&) {
      throw Error(std::string("RANKPROF_BUDGET is not a number: '") + env + "'");
    }
  }
  if (flags.budget) opt.type_budget = *flags.budget;
  return opt;
}

void emit(const CommonFlags& flags, const std::string& text) {
  if (flags.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(flags.output);
  if (!out) throw Error("cannot write '" + flags.output + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool tabular) {
  if (tabular)
    cmd->add_option("--format", flags.format, "json, csv or plot")
        ->check(CLI::IsMember({"json", "csv", "plot"}));
  cmd->add_option("--output,-o", flags.output, "write to this file instead of stdout");
  cmd->add_option("--budget", flags.budget, "type-engine step budget (overrides RANKPROF_BUDGET)");
  cmd->add_option("--ball-cap", flags.ball_cap, "refuse balls with |alphabet|^(n+1) above this");
  cmd->add_flag("--serial", flags.serial, "type words on one thread");
}

std::string formula_text(const Formula& phi) {
  return to_sexpr(phi) + "\n; rank=" + std::to_string(quantifier_rank(phi)) +
         " size=" + std::to_string(tree_size(phi)) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-horizon first-order rank profiles of regular languages"};
  app.require_subcommand(1);
  CommonFlags flags;
  int exit_code = kExitOk;

  // profile
  std::string lang;
  std::size_t min_n = 2, max_n = 10, q_max = 0;
  auto* profile = app.add_subcommand("profile", "exact rank profile with certified bounds");
  profile->add_option("--lang", lang, "regex:<re> | file:<dfa.json> | builtin:<name>")->required();
  profile->add_option("--max-n", max_n, "largest horizon");
  profile->add_option("--min-n", min_n, "smallest horizon");
  profile->add_option("--q-max", q_max, "global rank search limit (0 = default)");
  add_common(profile, flags, true);

  // synth
  auto* synth = app.add_subcommand("synth", "print a synthesized formula as an s-expression");
  synth->require_subcommand(1);
  std::size_t dist_d = 0, length_m = 0, classifier_n = 0;
  std::string word_text, alphabet_text, classifier_lang;
  auto* s_dist = synth->add_subcommand("dist", "distance formula, free in v0 and v1");
  s_dist->add_option("--d", dist_d)->required();
  auto* s_len = synth->add_subcommand("length", "exact-length sentence");
  s_len->add_option("--m", length_m)->required();
  auto* s_word = synth->add_subcommand("exact-word", "exact-word sentence");
  s_word->add_option("--word", word_text, "symbols, or @eps")->required();
  s_word->add_option("--alphabet", alphabet_text, "alphabet symbols (default: letters of the word)");
  auto* s_cls = synth->add_subcommand("classifier", "classifier of a language on the ball");
  s_cls->add_option("--lang", classifier_lang)->required();
  s_cls->add_option("--n", classifier_n)->required();
  for (auto* sub : {s_dist, s_len, s_word, s_cls}) add_common(sub, flags, false);

  // extract
  auto* extract = app.add_subcommand("extract", "syntactic cycle witness of a nonaperiodic language");
  extract->add_option("--lang", lang)->required();
  add_common(extract, flags, false);

  // separator
  std::string k_lang, h_lang;
  auto* separator = app.add_subcommand("separator", "separator profile of two disjoint languages");
  separator->set_help_flag("--help", "Print this help message and exit");  // frees --h
  separator->add_option("--k", k_lang)->required();
  separator->add_option("--h", h_lang)->required();
  separator->add_option("--max-n", max_n);
  separator->add_option("--min-n", min_n);
  add_common(separator, flags, true);

  // verify
  auto* verify = app.add_subcommand("verify", "certify exact profiles against the proven bounds");
  verify->add_option("--lang", lang)->required();
  verify->add_option("--max-n", max_n);
  verify->add_option("--min-n", min_n);
  add_common(verify, flags, true);

  // defect
  std::size_t defect_q = 0, defect_n = 0;
  auto* defect = app.add_subcommand("defect", "defect set of a language at rank q and horizon n");
  defect->add_option("--lang", lang)->required();
  defect->add_option("--q", defect_q)->required();
  defect->add_option("--n", defect_n)->required();
  add_common(defect, flags, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (profile->parsed()) {
      Profiler profiler(profile_options(flags));
      Language l = language_from_spec(lang);
      ProfileReport report = profiler.classify(l, {min_n, max_n, q_max});
      if (flags.format == "csv")
        emit(flags, to_csv(report));
      else if (flags.format == "plot")
        emit(flags, to_plot(report));
      else
        emit(flags, to_json(report).dump(2));
      if (!report.violations.empty()) return kExitError;
      if (report.any_skipped()) exit_code = kExitPartial;
    } else if (synth->parsed()) {
      Formula phi = Formula::truth();
      if (s_dist->parsed()) {
        phi = synth_dist(dist_d);
      } else if (s_len->parsed()) {
        phi = synth_length(length_m);
      } else if (s_word->parsed()) {
        std::string symbols = alphabet_text;
        if (symbols.empty()) {
          if (word_text != kEpsilonToken) symbols = word_text;
          std::sort(symbols.begin(), symbols.end());
          symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
          if (symbols.empty()) symbols = "a";
        }
        phi = synth_exact_word(Word::parse(Alphabet(symbols), word_text));
      } else {
        Profiler profiler(profile_options(flags));
        Language l = language_from_spec(classifier_lang);
        std::vector<Word> members;
        for (const auto& w : profiler.ball(l.alphabet(), classifier_n))
          if (l.contains(w)) members.push_back(w);
        phi = synth_horizon_classifier(std::move(members), classifier_n);
      }
      emit(flags, formula_text(phi));
    } else if (extract->parsed()) {
      Language l = language_from_spec(lang);
      try {
        emit(flags, to_json(extract_cycle_witness(l.dfa())).dump(2));
      } catch (const NoWitness& e) {
        std::cerr << "rankprof: " << l.description() << ": " << e.what() << '\n';
        return kExitNoWitness;
      }
    } else if (separator->parsed()) {
      Profiler profiler(profile_options(flags));
      Language k = language_from_spec(k_lang);
      Language h = language_from_spec(h_lang);
      SeparatorTable table{k.description(), h.description(),
                           Alphabet::merged(k.alphabet(), h.alphabet()).symbols(), {}};
      for (std::size_t n = min_n; n <= max_n; ++n)
        table.rows.push_back({n, profiler.sigma(k, h, n), universal_upper_bound(n)});
      emit(flags, flags.format == "json" ? to_json(table).dump(2) : to_csv(table));
    } else if (verify->parsed()) {
      Profiler profiler(profile_options(flags));
      Language l = language_from_spec(lang);
      VerifyTable table = certify_bounds(profiler, l, {min_n, max_n, 0});
      emit(flags, flags.format == "json" ? to_json(table).dump(2) : to_csv(table));
      if (!table.all_ok()) return kExitError;
      if (table.any_skipped()) exit_code = kExitPartial;
    } else if (defect->parsed()) {
      Profiler profiler(profile_options(flags));
      Language l = language_from_spec(lang);
      DefectSet d = profiler.defect_set(l, defect_q, defect_n);
      emit(flags, to_json(d, l.monoid()).dump(2));
    }
  } catch (const ParseError& e) {
    std::cerr << "rankprof: parse error: " << e.what() << '\n';
    return kExitError;
  } catch (const CostCapExceeded& e) {
    std::cerr << "rankprof: cost cap: " << e.what() << '\n';
    return kExitError;
  } catch (const HorizonTooLarge& e) {
    std::cerr << "rankprof: size cap: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "rankprof: " << e.what() << '\n';
    return kExitError;
  }
  return exit_code;
}
