// Command-line front end: analysis, languages, recognizers, inverses, conjugation
// trajectories and endomorphism enumeration for substitution subshifts.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "subdyn/conjugation.hpp"
#include "subdyn/enumeration.hpp"
#include "subdyn/error.hpp"
#include "subdyn/io.hpp"
#include "subdyn/spectra.hpp"

namespace {

using json = nlohmann::json;
using namespace subdyn;

struct RunConfig {
  std::string format = "text";
  std::size_t horizon = 10000;
  std::size_t verify_len = 0;
  std::size_t max_radius = 16;
  std::size_t shift_bound = 32;
  std::size_t coverage_factor = 4;
  double tolerance = 1e-9;
  std::size_t steps = 40;
  unsigned threads = 1;
  std::size_t node_budget = 200'000'000;
  bool override_eigenvalue = false;
  bool json() const { return format == "json"; }
};

void emit(const RunConfig& cfg, const json& record, const std::string& text) {
  if (cfg.json()) {
    std::cout << record.dump() << "\n";
  } else {
    std::cout << text;
  }
}

LanguagePtr load_language(const std::string& path) { return make_language(parse_substitution(read_text(path))); }

Rational tolerance_of(const RunConfig& cfg) {
  if (!(cfg.tolerance > 0)) fail(ErrorKind::argument, "--tolerance must be positive");
  return Rational(cfg.tolerance);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_analyze(const RunConfig& cfg, const std::string& path) {
  const LanguagePtr lang = load_language(path);
  const Substitution& s = lang->substitution();
  const CountMatrix m = associated_matrix(s);
  const IntegerPolynomial p = char_poly(m);
  const EigenvalueEstimate lambda = dominant_eigenvalue(m, tolerance_of(cfg));
  const bool aperiodic = is_aperiodic_heuristic(*lang, 1024);
  const InvariantReport balance = invariants(from_substitution(lang), cfg.horizon);
  std::optional<std::size_t> radius;
  if (aperiodic) radius = build_recognizer(lang, cfg.max_radius, cfg.coverage_factor).radius();

  std::ostringstream matrix;
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    matrix << "  [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      matrix << (j ? " " : "") << m(i, j);
      row.push_back(m(i, j));
    }
    matrix << "]\n";
    rows.push_back(row);
  }
  const bool pisot = is_pisot(m, false);
  const bool pisot_strict = is_pisot(m, true);

  std::ostringstream text;
  text << "letters: " << s.size() << "\n"
       << "matrix:\n" << matrix.str()
       << "char_poly: " << format_polynomial(p) << "\n"
       << "lambda: " << format_estimate(lambda) << "\n"
       << "primitive: yes\n"
       << "uniform: " << yes_no(is_uniform(s)) << "\n"
       << "injective: " << yes_no(is_injective(s)) << "\n"
       << "aperiodic_heuristic: " << yes_no(aperiodic) << "\n"
       << "pisot: " << yes_no(pisot) << "\n"
       << "pisot_strict: " << yes_no(pisot_strict) << "\n"
       << "generator_power: " << lang->generator_power() << " (seed " << s.alphabet().name(lang->seed()) << ")\n"
       << "balance: Z=" << balance.z << " D=" << balance.d_observed << " D_bounded=" << to_string(balance.d_bounded)
       << " horizon=" << balance.horizon << "\n"
       << "recognizer_radius: " << (radius ? std::to_string(*radius) : "none") << "\n";
  json record = {{"command", "analyze"},
                 {"letters", s.size()},
                 {"matrix", rows},
                 {"char_poly", format_polynomial(p)},
                 {"lambda", {{"lower", static_cast<double>(lambda.lower)},
                             {"upper", static_cast<double>(lambda.upper)},
                             {"exact", lambda.exact()}}},
                 {"primitive", true},
                 {"uniform", is_uniform(s)},
                 {"injective", is_injective(s)},
                 {"aperiodic_heuristic", aperiodic},
                 {"pisot", pisot},
                 {"pisot_strict", pisot_strict},
                 {"generator_power", lang->generator_power()},
                 {"Z", balance.z},
                 {"D", balance.d_observed},
                 {"D_bounded", to_string(balance.d_bounded)},
                 {"horizon", balance.horizon},
                 {"recognizer_radius", radius ? json(*radius) : json(nullptr)}};
  emit(cfg, record, text.str());
  return 0;
}

int cmd_language(const RunConfig& cfg, const std::string& path, std::size_t length) {
  const LanguagePtr lang = load_language(path);
  const auto& words = lang->words(length);
  std::string text = "# |B_" + std::to_string(length) + "| = " + std::to_string(words.size()) + "\n";
  json list = json::array();
  for (const Word& w : words) {
    text += format_word(w, lang->alphabet()) + "\n";
    list.push_back(format_word(w, lang->alphabet()));
  }
  emit(cfg, {{"command", "language"}, {"length", length}, {"count", words.size()}, {"words", list}}, text);
  return 0;
}

int cmd_recognize(const RunConfig& cfg, const std::string& path, const std::string& word) {
  const LanguagePtr lang = load_language(path);
  const Recognizer r = build_recognizer(lang, cfg.max_radius, cfg.coverage_factor);
  std::string text = format_recognizer(r);
  json record = {{"command", "recognize"}, {"radius", r.radius()}, {"table", format_recognizer(r)}};
  if (!word.empty()) {
    const Word decoded = decode(r, parse_word(word, lang->alphabet()));
    text += "decode: " + format_word(decoded, lang->alphabet()) + "\n";
    record["decode"] = format_word(decoded, lang->alphabet());
  }
  emit(cfg, record, text);
  return 0;
}

int cmd_invert(const RunConfig& cfg, const std::string& path) {
  const LanguagePtr lang = load_language(path);
  const Recognizer r = build_recognizer(lang, cfg.max_radius, cfg.coverage_factor);
  const DillTable inv = almost_inverse(r);
  emit(cfg,
       {{"command", "invert"}, {"in_radius", inv.in_radius()}, {"entries", inv.table().size()},
        {"table", format_dill_table(inv)}},
       format_dill_table(inv));
  return 0;
}

int cmd_conjugate(const RunConfig& cfg, const std::string& tau_path, const std::string& rho_path,
                  const std::string& map_path) {
  const LanguagePtr tau = load_language(tau_path);
  const LanguagePtr rho = load_language(rho_path);
  const DillTable f = parse_dill_table(read_text(map_path), tau, rho);
  TrajectoryOptions options;
  options.max_steps = cfg.steps;
  options.horizon = std::min<std::size_t>(cfg.horizon, 4096);
  options.max_radius = cfg.max_radius;
  options.coverage_factor = cfg.coverage_factor;
  const Trajectory t = trajectory(f, tau, rho, options);

  std::string text = format_trajectory(t);
  char ceiling[64];
  std::snprintf(ceiling, sizeof ceiling, "ceiling: I<=%.3f\n", t.in_radius_ceiling);
  text += ceiling;
  json steps = json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"I", s.table.in_radius()}, {"O", s.table.out_radius()}, {"Z", s.report.z},
                     {"D", s.report.d_observed}, {"hash", format_hash(s.hash)}});
  }
  json record = {{"command", "conjugate"}, {"steps", steps}, {"ceiling", t.in_radius_ceiling}};
  if (t.cycle) {
    record["cycle"] = {{"entry", t.cycle->entry}, {"period", t.cycle->period}};
    const Representative rep = reduce_to_representative(t, 512, cfg.shift_bound);
    const std::string relation = rep.side == ShiftSide::left ? "f = s^" + std::to_string(rep.k) + " o g"
                                                             : "g = s^" + std::to_string(rep.k) + " o f";
    text += "representative: " + relation + "\n" + format_dill_table(rep.g);
    record["representative"] = {{"relation", relation}, {"k", rep.k}, {"table", format_dill_table(rep.g)}};
  } else {
    record["cycle"] = nullptr;
  }
  emit(cfg, record, text);
  return 0;
}

int report_classes(const RunConfig& cfg, const std::string& command, const LanguagePtr& tau, const LanguagePtr& rho) {
  EnumerationOptions options;
  options.verify_len = cfg.verify_len;
  options.node_budget = cfg.node_budget;
  options.threads = cfg.threads;
  std::string text;
  json per_radius = json::array();
  MorphismClassSet last;
  for (std::size_t r = 0; r <= cfg.max_radius; ++r) {
    last = enumerate_block_maps(tau, rho, r, options);
    text += "# radius " + std::to_string(r) + ": " + std::to_string(last.classes.size()) + " classes (verified to " +
            std::to_string(last.verify_len) + ")\n";
    per_radius.push_back({{"radius", r}, {"classes", last.classes.size()}, {"verified_to", last.verify_len}});
  }
  json classes = json::array();
  for (std::size_t i = 0; i < last.classes.size(); ++i) {
    const MorphismClass& c = last.classes[i];
    std::string shifts;
    for (std::size_t k : c.shifts) shifts += (shifts.empty() ? "" : ",") + std::to_string(k);
    text += "# class " + std::to_string(i) + ": size=" + std::to_string(c.shifts.size()) +
            " min_radius=" + std::to_string(c.representative.radius) + " shifts=" + shifts +
            " verified_to=" + std::to_string(last.verify_len) + "\n" + format_block_rule(c.representative);
    classes.push_back({{"size", c.shifts.size()}, {"min_radius", c.representative.radius}, {"shifts", c.shifts},
                       {"table", format_block_rule(c.representative)}});
  }
  text += "classes=" + std::to_string(last.classes.size()) + " radius=" + std::to_string(cfg.max_radius) +
          " verified_to=" + std::to_string(last.verify_len) + "\n";
  emit(cfg,
       {{"command", command}, {"per_radius", per_radius}, {"classes", classes}, {"count", last.classes.size()},
        {"radius", cfg.max_radius}, {"verified_to", last.verify_len}},
       text);
  return 0;
}

int cmd_morphisms(const RunConfig& cfg, const std::string& tau_path, const std::string& rho_path) {
  const LanguagePtr tau = load_language(tau_path);
  const LanguagePtr rho = load_language(rho_path);
  const auto match = same_dominant_eigenvalue(associated_matrix(tau->substitution()),
                                              associated_matrix(rho->substitution()), tolerance_of(cfg));
  if (!match.equal) {
    if (!cfg.override_eigenvalue) {
      fail(ErrorKind::precondition, "dominant eigenvalues differ; pass --override to search anyway");
    }
    std::cerr << "warning: dominant eigenvalues differ; expecting no morphisms\n";
  }
  return report_classes(cfg, "morphisms", tau, rho);
}

int cmd_example_family(const RunConfig& cfg, std::size_t m, std::size_t n, const std::string& variant,
                       bool substitution_only) {
  FamilyVariant v = FamilyVariant::uniform;
  if (variant == "nonuniform") {
    v = FamilyVariant::nonuniform;
  } else if (variant != "uniform") {
    fail(ErrorKind::argument, "--variant must be uniform or nonuniform");
  }
  const Substitution s = build_example_family(m, n, v);
  emit(cfg, {{"command", "example-family"}, {"substitution", format_substitution(s)}}, format_substitution(s));
  if (substitution_only) return 0;
  const LanguagePtr lang = make_language(s);
  return report_classes(cfg, "endos", lang, lang);
}

int exit_code(ErrorKind kind) { return kind == ErrorKind::budget ? 3 : 2; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morphisms between primitive substitution subshifts"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--max-radius", cfg.max_radius, "Largest radius searched")->check(CLI::NonNegativeNumber);
    sub->add_option("--coverage-factor", cfg.coverage_factor, "Recognizer prefix length factor")
        ->check(CLI::PositiveNumber);
  };

  std::string path;
  std::string path2;
  std::string path3;
  std::string word;
  std::size_t length = 2;
  std::size_t fam_m = 3;
  std::size_t fam_n = 4;
  std::string variant = "uniform";
  bool substitution_only = false;

  auto* analyze = app.add_subcommand("analyze", "Matrix, spectrum, predicates and balance of a substitution");
  analyze->add_option("substitution", path)->required();
  analyze->add_option("--horizon", cfg.horizon)->check(CLI::Range(2, 100000000));
  analyze->add_option("--tolerance", cfg.tolerance, "Eigenvalue bracket width");
  add_common(analyze);

  auto* language = app.add_subcommand("language", "List B_n of the subshift");
  language->add_option("substitution", path)->required();
  language->add_option("--length,-n", length)->check(CLI::NonNegativeNumber);

  auto* recognize = app.add_subcommand("recognize", "Recognizer window table");
  recognize->add_option("substitution", path)->required();
  recognize->add_option("--decode", word, "Decode a word of the language");
  add_common(recognize);

  auto* invert = app.add_subcommand("invert", "Almost inverse of the substitution as a dill table");
  invert->add_option("substitution", path)->required();
  add_common(invert);

  auto* conjugate = app.add_subcommand("conjugate", "Conjugation trajectory of a map X_tau -> X_rho");
  conjugate->add_option("tau", path)->required();
  conjugate->add_option("rho", path2)->required();
  conjugate->add_option("map", path3)->required();
  conjugate->add_option("--steps", cfg.steps)->check(CLI::NonNegativeNumber);
  conjugate->add_option("--horizon", cfg.horizon)->check(CLI::Range(2, 100000000));
  conjugate->add_option("--shift-bound", cfg.shift_bound)->check(CLI::NonNegativeNumber);
  add_common(conjugate);

  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--verify-len", cfg.verify_len, "Admissibility check length (default 4*gap(r+1)+r)");
    sub->add_option("--threads", cfg.threads)->check(CLI::Range(1, 256));
    sub->add_option("--node-budget", cfg.node_budget)->check(CLI::PositiveNumber);
  };
  auto* endos = app.add_subcommand("endos", "Endomorphisms up to shift");
  endos->add_option("substitution", path)->required();
  endos->add_option("--max-radius", cfg.max_radius)->check(CLI::NonNegativeNumber);
  add_search(endos);

  auto* morphisms = app.add_subcommand("morphisms", "Block maps X_tau -> X_rho up to shift");
  morphisms->add_option("tau", path)->required();
  morphisms->add_option("rho", path2)->required();
  morphisms->add_option("--max-radius", cfg.max_radius)->check(CLI::NonNegativeNumber);
  morphisms->add_option("--tolerance", cfg.tolerance);
  morphisms->add_flag("--override", cfg.override_eigenvalue, "Search even if the eigenvalues differ");
  add_search(morphisms);

  auto* family = app.add_subcommand("example-family", "Substitutions with many large-radius endomorphisms");
  family->add_option("--m", fam_m)->check(CLI::PositiveNumber);
  family->add_option("--n", fam_n);
  family->add_option("--variant", variant);
  family->add_option("--max-radius", cfg.max_radius)->check(CLI::NonNegativeNumber);
  family->add_flag("--substitution-only", substitution_only);
  add_search(family);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(cfg, path);
    if (*language) return cmd_language(cfg, path, length);
    if (*recognize) return cmd_recognize(cfg, path, word);
    if (*invert) return cmd_invert(cfg, path);
    if (*conjugate) return cmd_conjugate(cfg, path, path2, path3);
    if (*endos) {
      const LanguagePtr lang = load_language(path);
      return report_classes(cfg, "endos", lang, lang);
    }
    if (*morphisms) return cmd_morphisms(cfg, path, path2);
    if (*family) {
      if (family->count("--max-radius") == 0) cfg.max_radius = fam_n;
      // The recurrence-gap default is hopeless here (gap(5) is in the tens of thousands).
      if (family->count("--verify-len") == 0) cfg.verify_len = 256;
      return cmd_example_family(cfg, fam_m, fam_n, variant, substitution_only);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
