#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kbonacci/kbonacci.hpp"

namespace kbonacci::cli {

enum ExitCode : int { ok = 0, verify_failed = 1, usage = 2, resource = 3 };

struct ExperimentConfig {
  std::string command;
  std::size_t k = 3;
  double alpha = 1.0;
  std::size_t depth = 12;
  unsigned n = 0;  // 0: the command's default range
  unsigned n_max = 8;
  std::size_t window = 100000;
  std::uint64_t budget = Substitution::default_budget;
  std::uint64_t seed = 1;
  std::size_t samples = 20;
  double tol = 1e-3;
  unsigned threads = 1;
  std::string mode = "closed-form";
  std::string table = "summary";
  std::string beta_grid;
  std::string config_file;
  std::string substitution_file;
  std::string out;

  /// Every setting that can change the output, in a fixed order.
  std::string describe() const {
    std::ostringstream os;
    os << "command=" << command << " k=" << k << " alpha=" << alpha << " depth=" << depth << " n=" << n
       << " n_max=" << n_max << " window=" << window << " budget=" << budget << " seed=" << seed
       << " samples=" << samples << " tol=" << tol << " mode=" << mode << " table=" << table
       << " beta_grid=" << (beta_grid.empty() ? "default" : beta_grid)
       << " config=" << (config_file.empty() ? "sampled" : config_file)
       << " substitution=" << (substitution_file.empty() ? "k-bonacci" : substitution_file);
    return os.str();
  }
};

inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string num(long double x) { return num(static_cast<double>(x)); }

template <class T>
inline std::string num(T x) requires std::is_integral_v<T> {
  return std::to_string(x);
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void comment(const std::string& text) { os_ << "# " << text << '\n'; }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

namespace detail {

inline Substitution load_substitution(const ExperimentConfig& c) {
  if (c.substitution_file.empty()) return kbonacci(c.k, c.budget);
  std::ifstream in(c.substitution_file);
  if (!in) throw precondition_error("cannot open substitution file " + c.substitution_file);
  return parse_substitution(in, c.budget);
}

inline std::vector<Configuration> load_configurations(const ExperimentConfig& c, const LanguageIndex& lang) {
  if (c.config_file.empty()) return sample_configurations(lang, c.samples, c.seed);
  std::ifstream in(c.config_file);
  if (!in) throw precondition_error("cannot open configuration file " + c.config_file);
  std::vector<Configuration> out;
  for (const Configuration& x : read_configurations(in, lang.alphabet_size())) out.push_back(certify(lang, x));
  return out;
}

/// Index deep enough to scan delta of s^n(x) for every sample.
inline std::size_t scan_depth(const LanguageIndex& lang, const std::vector<Configuration>& xs, unsigned n) {
  std::size_t depth = 64;
  for (const Configuration& x : xs)
    depth = std::max<std::size_t>(depth, delta_after_power(lang, x, std::max(n, 1u)) + 2);
  return depth;
}

inline std::vector<double> parse_grid(const std::string& text) {
  if (text.empty()) return default_beta_grid();
  if (text.rfind("geom:", 0) == 0) {
    double lo = 0, hi = 0;
    std::size_t count = 0;
    if (std::sscanf(text.c_str(), "geom:%lf:%lf:%zu", &lo, &hi, &count) != 3 || !(lo > 0) || !(hi > lo) || count == 0)
      throw precondition_error("beta grid must be geom:<lo>:<hi>:<count>");
    return default_beta_grid(count, lo, hi);
  }
  std::vector<double> grid;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw precondition_error("bad beta value '" + item + "'");
    }
    if (grid.back() < 0) throw precondition_error("beta must be nonnegative");
  }
  if (grid.empty()) throw precondition_error("empty beta grid");
  return grid;
}

inline std::string join_words(const std::vector<Word>& ws) {
  std::string out;
  for (const Word& w : ws) out += (out.empty() ? "" : " ") + to_string(w);
  return out;
}

}  // namespace detail

inline void run_lang(const ExperimentConfig& c, CsvWriter& csv) {
  const Substitution s = detail::load_substitution(c);
  const LanguageIndex lang(s, c.depth + 1);
  csv.row({"n", "complexity", "left_special", "right_special", "bispecial", "bispecial_words"});
  csv.row({"0", "1", "", "", "", ""});
  for (std::size_t n = 1; n <= c.depth; ++n) {
    const SpecialWords sw = lang.special_words(n);
    csv.row({num(n), num(lang.complexity(n)), num(sw.left.size()), num(sw.right.size()), num(sw.bispecial.size()),
             detail::join_words(sw.bispecial)});
  }
}

inline void run_delta(const ExperimentConfig& c, CsvWriter& csv) {
  const Substitution s = kbonacci(c.k, c.budget);
  const LanguageIndex small(s, 64);
  const auto xs = detail::load_configurations(c, small);
  const LanguageIndex lang(s, detail::scan_depth(small, xs, c.n_max));
  csv.row({"k", "x_id", "n", "delta", "delta_after_power", "delta_scan", "shifts_checked", "shift_mismatches"});
  for (std::size_t id = 0; id < xs.size(); ++id) {
    const Configuration& x = xs[id];
    for (unsigned n = 1; n <= c.n_max; ++n) {
      const std::uint64_t closed = delta_after_power(lang, x, n);
      const std::uint64_t terms = n >= c.k ? s.image_length(n, x.at(0)) : 1;
      const auto scan = delta_scan(lang, x.image(s, n), terms);
      std::size_t mismatches = 0;
      if (n >= c.k)
        for (std::uint64_t j = 0; j < terms; ++j) mismatches += delta_shifted(lang, x, n, j) != scan[j];
      csv.row({num(c.k), num(id), num(n), num(delta(lang, x).value()), num(closed), num(scan[0]),
               num(n >= c.k ? terms : 0), num(mismatches)});
    }
  }
}

inline void run_recog(const ExperimentConfig& c, CsvWriter& csv) {
  const auto omega = FixedPointStream(kbonacci(c.k, c.budget));
  const unsigned lo = c.n ? c.n : static_cast<unsigned>(c.k);
  const unsigned hi = c.n ? c.n : static_cast<unsigned>(c.k) + 3;
  csv.row({"k", "n", "window", "cut_points", "occurrences", "unexpected", "missing", "nested", "holds"});
  for (unsigned n = lo; n <= hi; ++n) {
    const RecognizabilityReport r = verify_recognizability(omega, n, c.window);
    const auto here = cut_points(omega, n, c.window).points;
    const auto next = cut_points(omega, n + 1, c.window).points;
    const bool nested = std::includes(here.begin(), here.end(), next.begin(), next.end());
    csv.row({num(c.k), num(n), num(c.window), num(here.size()), num(r.occurrences.size()), num(r.unexpected.size()),
             num(r.missing.size()), nested ? "1" : "0", r.holds() ? "1" : "0"});
  }
}

inline void run_spectral(const ExperimentConfig& c, CsvWriter& csv) {
  const Substitution s = kbonacci(c.k, c.budget);
  const unsigned n_max = c.n ? c.n : 60;
  if (c.table == "growth") {
    const GrowthDecomposition g = growth_decomposition(s, n_max);
    csv.row({"n", "letter", "length", "remainder"});
    for (const GrowthRow& r : g.rows) csv.row({num(r.n), num(static_cast<unsigned>(r.letter)), num(r.length), num(r.remainder)});
    return;
  }
  if (c.table != "summary") throw precondition_error("table must be summary or growth");
  const SpectralData d = spectral_data(c.k, n_max);
  const auto mu = letter_frequencies(c.k);
  csv.row({"quantity", "index", "value"});
  csv.row({"lambda", "", num(d.lambda)});
  csv.row({"polynomial_residual", "", num(std::fabs(perron_polynomial(c.k, d.lambda)))});
  csv.row({"eigen_residual", "", num(eigen_residual(s.incidence(), d.v, d.lambda))});
  if (c.k == 3) csv.row({"cardan", "", num(tribonacci_cardan())});
  for (std::size_t l = 0; l < c.k; ++l) csv.row({"v", num(l), num(d.v[l])});
  for (std::size_t l = 0; l < c.k; ++l) csv.row({"gamma", num(l), num(d.gamma[l])});
  for (std::size_t l = 0; l < c.k; ++l) csv.row({"mu", num(l), num(mu[l])});
  csv.row({"theta_hat", "", num(d.theta_hat)});
}

inline void run_renorm(const ExperimentConfig& c, CsvWriter& csv) {
  RenormMode mode;
  if (c.mode == "closed-form") {
    mode = RenormMode::closed_form;
  } else if (c.mode == "brute-force") {
    mode = RenormMode::brute_force;
  } else {
    throw precondition_error("mode must be closed-form or brute-force");
  }
  const Substitution s = kbonacci(c.k, c.budget);
  const LanguageIndex small(s, 64);
  const auto xs = detail::load_configurations(c, small);
  const std::size_t depth = mode == RenormMode::brute_force ? 2 * detail::scan_depth(small, xs, c.n_max) : 64;
  const LanguageIndex lang(s, depth);
  const SpectralData d = spectral_data(c.k);
  const Potential v = Potential::standard(c.k, c.alpha);
  for (std::size_t id = 0; id < xs.size(); ++id)
    csv.comment("x_id=" + num(id) + " " + xs[id].to_text() + " U=" + num(fixed_point_U(d, lang, xs[id])));
  csv.row({"k", "alpha", "n", "x_id", "value", "method"});
  for (std::size_t id = 0; id < xs.size(); ++id) {
    const RenormResult r = renorm_series(lang, v, xs[id], 0, c.n_max, mode);
    for (std::size_t i = 0; i < r.n.size(); ++i) {
      const bool fallback = mode == RenormMode::closed_form && r.n[i] < c.k;
      csv.row({num(c.k), num(c.alpha), num(r.n[i]), num(id), num(r.value[i]),
               to_string(fallback ? RenormMode::brute_force : mode)});
    }
  }
}

inline void run_pressure(const ExperimentConfig& c, CsvWriter& csv) {
  const Substitution s = kbonacci(c.k, c.budget);
  const LanguageIndex lang(s, c.depth + 1);
  const Potential v = Potential::standard(c.k, c.alpha);
  const CylinderSums sums = cylinder_sums(lang, v, c.depth, c.threads);
  const PressureCurve curve = pressure_curve(sums, c.alpha, detail::parse_grid(c.beta_grid));
  csv.row({"k", "alpha", "n", "beta", "P_low", "P_high"});
  for (std::size_t i = 0; i < curve.beta.size(); ++i)
    csv.row({num(c.k), num(c.alpha), num(c.depth), num(curve.beta[i]), num(curve.low[i]), num(curve.high[i])});
  const BetaCReport r = find_beta_c(curve, c.tol);
  if (r.crossed) {
    csv.comment("beta_c=" + num(r.beta_c) + " bracket=[" + num(r.bracket_lo) + "," + num(r.bracket_hi) + "]");
  } else {
    csv.comment("beta_c: no crossing of tol=" + num(c.tol) + " at depth " + num(c.depth) + "; min P_high=" +
                num(r.min_high) + " floor log(#L_n)/n=" + num(r.floor));
  }
  csv.comment(std::string("convex=") + (r.convex ? "1" : "0") + " nonincreasing=" + (r.nonincreasing ? "1" : "0") +
              " ordered=" + (curve.ordered() ? "1" : "0") + " nonnegative=" + (curve.nonnegative() ? "1" : "0"));
}

struct SuiteResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// The property suites behind `verify`, for one alphabet size.
inline std::vector<SuiteResult> verify_suites(std::size_t k, std::uint64_t seed, unsigned threads) {
  std::vector<SuiteResult> out;
  const Substitution s = kbonacci(k);
  const auto omega = std::make_shared<const FixedPointStream>(s);
  auto suite = [&out](const std::string& name, const std::function<std::string(bool&)>& body) {
    bool passed = true;
    std::string detail;
    try {
      detail = body(passed);
    } catch (const std::exception& e) {
      passed = false;
      detail = std::string("error: ") + e.what();
    }
    out.push_back({name, passed, detail});
  };

  suite("language", [&](bool& passed) {
    const LanguageIndex lang(s, 31);
    std::size_t bad = 0;
    for (std::size_t n = 1; n <= 30; ++n) bad += lang.complexity(n) != (k - 1) * n + 1;
    for (std::size_t n = 1; n <= 12; ++n) {
      for (const Word& w : lang.factors(n)) {
        const std::span<const Letter> ws(w);
        if (!lang.contains(ws.first(n - 1)) || !lang.contains(ws.subspan(1))) ++bad;
        bool right = false, left = false;
        for (std::size_t a = 0; a < k; ++a) {
          Word r = w, l{static_cast<Letter>(a)};
          r.push_back(static_cast<Letter>(a));
          l.insert(l.end(), w.begin(), w.end());
          right = right || lang.contains(r);
          left = left || lang.contains(l);
        }
        bad += !right + !left;
      }
    }
    passed = bad == 0;
    return "complexity (k-1)n+1 for n<=30; factorial and extendable to length 12; failures=" + num(bad);
  });

  suite("substitution", [&](bool& passed) {
    std::size_t bad = 0;
    for (unsigned n = 0; n <= 12; ++n) bad += !check_recurrence(s, n);
    const IncidenceMatrix m = s.incidence();
    for (unsigned n = 0; n <= 20; ++n) {
      const auto sums = m.power(n).column_sums();
      for (std::size_t a = 0; a < k; ++a)
        bad += sums[a] != s.power_image(n, static_cast<Letter>(a)).size() ||
               sums[a] != s.image_length(n, static_cast<Letter>(a));
    }
    const auto pre = omega->prefix(1000);
    bad += !is_prefix(pre, s.power_image(20, 0));
    passed = bad == 0;
    return "recurrence n<=12; lengths vs incidence powers n<=20; fixed-point coherence; failures=" + num(bad);
  });

  const LanguageIndex small(s, 64);
  const auto xs = sample_configurations(small, 20, seed);

  suite("closed-forms", [&](bool& passed) {
    const LanguageIndex lang(s, detail::scan_depth(small, xs, 8));
    std::size_t checks = 0, bad = 0;
    for (const Configuration& x : xs) {
      for (unsigned n = 1; n <= 8; ++n) {
        const Word pre = maximal_prefix_after_power(lang, x, n);
        const std::uint64_t closed = delta_after_power(lang, x, n);
        const std::uint64_t terms = n >= k ? s.image_length(n, x.at(0)) : 1;
        const auto scan = delta_scan(lang, x.image(s, n), terms);
        ++checks;
        bad += closed != scan[0] || pre.size() != closed || !is_prefix(pre, x.image(s, n).prefix(pre.size()));
        if (n < k) continue;
        for (std::uint64_t j = 0; j < terms; ++j, ++checks) bad += delta_shifted(lang, x, n, j) != scan[j];
      }
    }
    passed = bad == 0;
    return "delta after s^n and its shifts vs language scan; checks=" + num(checks) + " mismatches=" + num(bad);
  });

  suite("recognizability", [&](bool& passed) {
    std::size_t bad = 0;
    for (unsigned n = static_cast<unsigned>(k); n <= k + 3; ++n) {
      bad += !verify_recognizability(*omega, n, 100000).holds();
      const auto here = cut_points(*omega, n, 100000).points;
      const auto next = cut_points(*omega, n + 1, 100000).points;
      bad += !std::includes(here.begin(), here.end(), next.begin(), next.end());
    }
    passed = bad == 0;
    return "occurrences of s^n(0) = cut points for n in [k,k+3], window 1e5, nested; failures=" + num(bad);
  });

  suite("spectral", [&](bool& passed) {
    const SpectralData d = spectral_data(k);
    const long double poly = std::fabs(perron_polynomial(k, d.lambda));
    const long double eig = eigen_residual(s.incidence(), d.v, d.lambda);
    double ratio = 0;
    for (std::size_t l = 0; l < k; ++l)
      ratio = std::max(ratio, static_cast<double>(std::fabs(d.gamma[l] / d.gamma[0] - d.v[l] / d.v[0])));
    const auto mu = letter_frequencies(k);
    const auto emp = empirical_frequencies(*omega, 100000);
    double freq = 0;
    for (std::size_t a = 0; a < k; ++a) freq = std::max(freq, std::fabs(mu[a] - emp[a]));
    double cardan = 0;
    if (k == 3) cardan = static_cast<double>(std::fabs(d.lambda - tribonacci_cardan()));
    passed = poly < 1e-12L && eig < 1e-10L && ratio < 1e-8 && freq < 2e-3 && cardan < 1e-12;
    return "poly=" + num(poly) + " eigen=" + num(eig) + " gamma/v=" + num(ratio) + " freq=" + num(freq) +
           (k == 3 ? " cardan=" + num(cardan) : "");
  });

  const SpectralData d = spectral_data(k);

  suite("fixed-point", [&](bool& passed) {
    const auto ys = sample_configurations(small, 50, seed + 1);
    const double worst = verify_fixed_point(d, small, ys);
    passed = worst < 1e-9;
    return "max |RU-U| over 50 samples=" + num(worst);
  });

  suite("convergence", [&](bool& passed) {
    const Potential v0 = Potential::standard(k, 1.0);
    double worst = 0;
    for (const Configuration& x : xs)
      worst = std::max(worst, std::fabs(renorm_power(small, v0, x, 25, RenormMode::closed_form) - fixed_point_U(d, small, x)));
    passed = worst < 1e-3;
    return "max |R^25 V0 - U| over 20 samples=" + num(worst);
  });

  suite("bispecial-ladder", [&](bool& passed) {
    const LanguageIndex lang(s, 202);
    const LadderCompleteness lc = ladder_completeness(lang, 200);
    unsigned top = 0;
    while (ladder_lengths(s, top + 1).back() <= 200) ++top;
    const BispecialLadder l = bispecial_ladder(lang, top);
    const OverlapCheck oc = check_overlaps(l);
    const auto ratios = overlap_ratios(ladder_lengths(s, 31));
    const double dist = std::fabs(ratios[30] - 1.0 / static_cast<double>(d.lambda));
    passed = lc.exact() && l.all_bispecial && l.lengths_consistent && oc.violations == 0 && dist < 1e-6;
    return "bispecials<=200=" + num(lc.bispecials.size()) + " extra=" + num(lc.extra.size()) + " missing=" +
           num(lc.missing.size()) + " overlap violations=" + num(oc.violations) + " |ratio_30-1/lambda|=" + num(dist);
  });

  if (k == 3) {
    suite("appendix", [&](bool& passed) {
      const AppendixReport r = tribonacci_appendix_checks(30);
      passed = r.passed();
      return "unique de-substitution words=" + num(r.desubstitution.words_checked) + " failures=" +
             num(r.desubstitution.not_unique.size() + r.desubstitution.preimage_outside.size()) +
             " 000,002 absent and 001 present=" + (r.passed() ? "yes" : "no");
    });
  }

  suite("pressure", [&](bool& passed) {
    std::size_t depth = 1;
    while (std::pow(static_cast<double>(k), static_cast<double>(depth + 1)) <= 1e5) ++depth;
    const LanguageIndex lang(s, depth + 1);
    const CylinderSums sums = cylinder_sums(lang, Potential::standard(k, 1.0), depth, threads);
    const PressureCurve c = pressure_curve(sums, 1.0, default_beta_grid());
    const bool exact0 = c.low[0] == std::log(static_cast<double>(k)) && c.high[0] == c.low[0];
    passed = exact0 && c.ordered() && c.nonnegative() && c.convex() && c.nonincreasing();
    return "depth=" + num(depth) + " exact at beta=0, ordered, nonnegative, convex, nonincreasing=" +
           (passed ? "yes" : "no");
  });
  return out;
}

inline int run_verify(const ExperimentConfig& c, CsvWriter& csv) {
  csv.row({"suite", "status", "detail"});
  bool all = true;
  for (const SuiteResult& r : verify_suites(c.k, c.seed, c.threads)) {
    all = all && r.passed;
    csv.row({r.name, r.passed ? "pass" : "FAIL", r.detail});
  }
  return all ? ok : verify_failed;
}

/// Parses `args` (without the program name) and runs one subcommand. CSV goes
/// to --out or `out`; diagnostics go to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-bonacci substitutions: languages, delta, renormalization and pressure"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  ExperimentConfig c;
  app.set_config("--params", "", "flat key=value file with option defaults");
  app.add_option("--k", c.k, "alphabet size")->check(CLI::Range(2, 12));
  app.add_option("--alpha", c.alpha, "exponent of delta in the potential")->check(CLI::PositiveNumber);
  app.add_option("--depth", c.depth, "lang: index depth; pressure: cylinder depth")->check(CLI::Range(1, 400));
  app.add_option("--n", c.n, "single power (recog, spectral n_max)");
  app.add_option("--n-max", c.n_max, "largest power")->check(CLI::Range(0, 60));
  app.add_option("--window", c.window, "fixed-point window length")->check(CLI::Range(1, 100'000'000));
  app.add_option("--budget", c.budget, "letter budget for materialized words")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "seed for sampled configurations");
  app.add_option("--samples", c.samples, "number of sampled configurations")->check(CLI::Range(1, 10000));
  app.add_option("--tol", c.tol, "pressure threshold for beta_c")->check(CLI::NonNegativeNumber);
  app.add_option("--threads", c.threads, "worker threads for the cylinder sweep")->check(CLI::Range(1, 256));
  app.add_option("--mode", c.mode, "closed-form or brute-force")->check(CLI::IsMember({"closed-form", "brute-force"}));
  app.add_option("--table", c.table, "spectral table: summary or growth")->check(CLI::IsMember({"summary", "growth"}));
  app.add_option("--beta-grid", c.beta_grid, "comma-separated betas or geom:<lo>:<hi>:<count>");
  app.add_option("--config", c.config_file, "configuration file (head=... tail=...)");
  app.add_option("--substitution", c.substitution_file, "substitution file for lang");
  app.add_option("--out", c.out, "output path (default stdout)");
  for (const char* name : {"lang", "delta", "recog", "spectral", "renorm", "pressure", "verify"})
    app.add_subcommand(name)->fallthrough();
  app.get_subcommand("lang")->description("factor complexity and special words");
  app.get_subcommand("delta")->description("delta closed forms against language scans");
  app.get_subcommand("recog")->description("occurrences of s^n(0) against cut points");
  app.get_subcommand("spectral")->description("Perron root, eigenvector, growth table");
  app.get_subcommand("renorm")->description("R^n V(x) series and the fixed point U");
  app.get_subcommand("pressure")->description("pressure bounds on a beta grid");
  app.get_subcommand("verify")->description("run every property suite; exit 1 on failure");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << "run with --help for usage\n";
    return usage;
  }
  c.command = app.get_subcommands().front()->get_name();

  std::ostringstream buffer;
  CsvWriter csv(buffer);
  int code = ok;
  try {
    csv.comment(c.describe());
    if (c.command == "lang") run_lang(c, csv);
    else if (c.command == "delta") run_delta(c, csv);
    else if (c.command == "recog") run_recog(c, csv);
    else if (c.command == "spectral") run_spectral(c, csv);
    else if (c.command == "renorm") run_renorm(c, csv);
    else if (c.command == "pressure") run_pressure(c, csv);
    else code = run_verify(c, csv);
  } catch (const budget_error& e) {
    err << "resource limit: " << e.what() << '\n';
    return resource;
  } catch (const index_depth_error& e) {
    err << "resource limit: " << e.what() << '\n';
    return resource;
  } catch (const error& e) {
    err << "invalid input: " << e.what() << '\n';
    return usage;
  }

  if (c.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(c.out, std::ios::binary);
    if (!file) {
      err << "cannot write " << c.out << '\n';
      return usage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace kbonacci::cli
