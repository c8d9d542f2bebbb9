// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "kbonacci/kbonacci.hpp"

using namespace kbonacci;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double time_limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < time_limit;
  const bool ok = o.passed && in_time;
  if (!ok) ++failures;
  std::printf("%s criterion %2d  %s: %s [%.2f s, limit %.0f s%s]\n", ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              time_limit, in_time ? "" : ", too slow");
  std::fflush(stdout);
}

std::size_t scan_depth(const LanguageIndex& lang, const std::vector<Configuration>& xs, unsigned n) {
  std::size_t depth = 64;
  for (const Configuration& x : xs) depth = std::max<std::size_t>(depth, delta_after_power(lang, x, n) + 2);
  return depth;
}

}  // namespace

int main() {
  constexpr std::uint64_t seed = 2024;

  criterion(1, "fixed point RU = U (k=2,3,4; 50 configurations; tol 1e-9)", 10, [] {
    double worst = 0;
    for (std::size_t k = 2; k <= 4; ++k) {
      const LanguageIndex lang(kbonacci::kbonacci(k), 64);
      worst = std::max(worst, verify_fixed_point(spectral_data(k), lang, sample_configurations(lang, 50, seed + k)));
    }
    return Outcome{worst < 1e-9, "max |RU-U| = " + fmt(worst)};
  });

  criterion(2, "R^25 V0 -> U, closed form (k=2,3; 20 configurations; tol 1e-3)", 60, [] {
    double worst = 0;
    for (std::size_t k = 2; k <= 3; ++k) {
      const LanguageIndex lang(kbonacci::kbonacci(k), 64);
      const SpectralData d = spectral_data(k);
      const Potential v0 = Potential::standard(k, 1.0);
      for (const Configuration& x : sample_configurations(lang, 20, seed + 10 + k))
        worst = std::max(worst, std::fabs(renorm_power(lang, v0, x, 25, RenormMode::closed_form) - fixed_point_U(d, lang, x)));
    }
    return Outcome{worst < 1e-3, "max |R^25 V0 - U| = " + fmt(worst)};
  });

  criterion(3, "trichotomy alpha=2 / 0.5 / 1 (k=3; 20 configurations)", 120, [] {
    const std::size_t k = 3;
    const LanguageIndex lang(kbonacci::kbonacci(k), 64);
    const SpectralData d = spectral_data(k);
    const FixedPointStream omega(kbonacci::kbonacci(k));
    const auto xs = sample_configurations(lang, 20, seed + 20);
    const double mu0 = letter_frequencies(k)[0];
    const Potential v2 = Potential::standard(k, 2.0), vh = Potential::standard(k, 0.5);
    const Potential vg(1.0, LocalTable::constant(k, 1, 1.0) + LocalTable::indicator(k, {0}), LocalTable::constant(k, 1, 0.0));
    double max2 = 0, min_half = 1e300, worst_slope = 0, worst_g = 0;
    for (const Configuration& x : xs) {
      max2 = std::max(max2, renorm_power(lang, v2, x, 25, RenormMode::closed_form));
      const ConvergenceStudy st = convergence_study(lang, d, omega, vh, x, 50);
      min_half = std::min(min_half, st.series.value.back());
      worst_slope = std::max(worst_slope, std::fabs(st.growth_slope - st.expected_slope) / st.expected_slope);
      worst_g = std::max(worst_g, std::fabs(renorm_power(lang, vg, x, 25, RenormMode::closed_form) - (1 + mu0) * fixed_point_U(d, lang, x)));
    }
    const bool ok = max2 < 1e-6 && min_half > 1e4 && worst_slope <= 0.1 && worst_g < 2e-3;
    return Outcome{ok, "alpha=2 max R^25 V = " + fmt(max2) + "; alpha=0.5 min R^50 V = " + fmt(min_half) +
                           ", slope error " + fmt(100 * worst_slope) + "%; alpha=1 g=1+1_[0] max |R^25 V - (1+mu0)U| = " +
                           fmt(worst_g)};
  });

  criterion(4, "closed-form delta vs language scan (k=2,3,4; n in [k,8]; all j)", 60, [] {
    std::size_t checks = 0, mismatches = 0;
    for (std::size_t k = 2; k <= 4; ++k) {
      const Substitution s = kbonacci::kbonacci(k);
      const LanguageIndex small(s, 64);
      const auto xs = sample_configurations(small, 20, seed + 30 + k);
      const LanguageIndex lang(s, scan_depth(small, xs, 8));
      for (const Configuration& x : xs) {
        for (unsigned n = static_cast<unsigned>(k); n <= 8; ++n) {
          const Configuration y = x.image(s, n);
          const std::uint64_t terms = s.image_length(n, x.at(0));
          const auto scan = delta_scan(lang, y, terms);
          const Word pre = maximal_prefix_after_power(lang, x, n);
          ++checks;
          mismatches += pre.size() != delta_after_power(lang, x, n) || pre != y.prefix(pre.size());
          for (std::uint64_t j = 0; j < terms; ++j, ++checks) mismatches += delta_shifted(lang, x, n, j) != scan[j];
        }
      }
    }
    return Outcome{mismatches == 0 && checks >= 1000, fmt(static_cast<double>(checks)) + " checks, " +
                                                          std::to_string(mismatches) + " mismatches"};
  });

  criterion(5, "recognizability and nesting (k=2,3,4; n in [k,k+3]; window 1e5)", 30, [] {
    std::size_t bad = 0, scans = 0;
    for (std::size_t k = 2; k <= 4; ++k) {
      const FixedPointStream omega(kbonacci::kbonacci(k));
      for (unsigned n = static_cast<unsigned>(k); n <= k + 3; ++n, ++scans) {
        bad += !verify_recognizability(omega, n, 100000).holds();
        const auto a = cut_points(omega, n, 100000).points, b = cut_points(omega, n + 1, 100000).points;
        bad += !std::includes(a.begin(), a.end(), b.begin(), b.end());
      }
    }
    return Outcome{bad == 0, std::to_string(scans) + " scans, " + std::to_string(bad) + " failures"};
  });

  criterion(6, "complexity kn+1 (k=2..5; n<=30)", 30, [] {
    std::size_t bad = 0, checked = 0;
    std::string observed;
    for (std::size_t k = 2; k <= 5; ++k) {
      const LanguageIndex lang(kbonacci::kbonacci(k), 30);
      for (std::size_t n = 1; n <= 30; ++n, ++checked) bad += lang.complexity(n) != k * n + 1;
      observed += (observed.empty() ? "" : ", ") + std::string("k=") + std::to_string(k) + " n=5: " +
                  std::to_string(lang.complexity(5)) + " vs " + std::to_string(5 * k + 1);
    }
    return Outcome{bad == 0, std::to_string(bad) + "/" + std::to_string(checked) + " lengths differ (" + observed + ")"};
  });

  criterion(7, "spectral closed forms (k<=12 residual 1e-12; Cardan 1e-12; vS=lambda v 1e-10)", 10, [] {
    long double poly = 0, eig = 0;
    for (std::size_t k = 2; k <= 12; ++k) {
      const long double l = perron_root(k);
      poly = std::max(poly, std::fabs(perron_polynomial(k, l)));
      eig = std::max(eig, eigen_residual(kbonacci::kbonacci(k).incidence(), left_eigenvector(k, l), l));
    }
    const long double l3 = perron_root(3);
    const long double cardan = std::fabs(l3 - tribonacci_cardan());
    const auto v = left_eigenvector(3, l3);
    const long double display = std::max({std::fabs(v[0] - l3), std::fabs(v[1] - (l3 + 1) / l3), std::fabs(v[2] - 1)});
    const bool ok = poly < 1e-12L && cardan < 1e-12L && eig < 1e-10L && display < 1e-12L;
    return Outcome{ok, "poly " + fmt(static_cast<double>(poly)) + ", Cardan " + fmt(static_cast<double>(cardan)) +
                           ", eigen " + fmt(static_cast<double>(eig)) + ", k=3 v vs (lambda,(lambda+1)/lambda,1) " +
                           fmt(static_cast<double>(display))};
  });

  criterion(8, "bispecials up to length 200 = ladder; |b_30|/|b_31| within 1e-6 of 1/lambda (k=2,3)", 60, [] {
    bool ok = true;
    std::string detail;
    for (std::size_t k = 2; k <= 3; ++k) {
      const LanguageIndex lang(kbonacci::kbonacci(k), 202);
      const LadderCompleteness lc = ladder_completeness(lang, 200);
      const double dist = std::fabs(overlap_ratios(ladder_lengths(kbonacci::kbonacci(k), 31))[30] - 1 / static_cast<double>(perron_root(k)));
      ok = ok && lc.exact() && dist < 1e-6;
      detail += (detail.empty() ? "" : "; ") + std::string("k=") + std::to_string(k) + ": " +
                std::to_string(lc.bispecials.size()) + " bispecials, " + std::to_string(lc.extra.size() + lc.missing.size()) +
                " off-ladder, ratio error " + fmt(dist);
    }
    return Outcome{ok, detail};
  });

  criterion(9, "Tribonacci unique de-substitution up to length 30; 000,002 not in L; 001 in L", 30, [] {
    const AppendixReport r = tribonacci_appendix_checks(30);
    const std::size_t fails = r.desubstitution.not_unique.size() + r.desubstitution.preimage_outside.size();
    return Outcome{r.passed(), std::to_string(r.desubstitution.words_checked) + " words, " + std::to_string(fails) +
                                   " failures; 000:" + (r.contains_000 ? "in" : "out") + " 002:" +
                                   (r.contains_002 ? "in" : "out") + " 001:" + (r.contains_001 ? "in" : "out")};
  });

  criterion(10, "pressure bounds (k=2, alpha=1, n in {8,10,12,14}, tol 1e-3)", 600, [] {
    const std::size_t k = 2;
    const double tol = 1e-3;
    bool shape = true;
    double width14 = 0, floor14 = 0;
    std::vector<BetaCReport> reports;
    std::vector<PressureCurve> curves;
    for (std::size_t n : {8, 10, 12, 14}) {
      const LanguageIndex lang(kbonacci::kbonacci(k), n + 1);
      const CylinderSums sums = cylinder_sums(lang, Potential::standard(k, 1.0), n);
      const PressureCurve c = pressure_curve(sums, 1.0, default_beta_grid());
      shape = shape && c.ordered() && c.nonnegative() && c.convex() && c.nonincreasing() &&
              c.low[0] == std::log(2.0) && c.high[0] == std::log(2.0);
      reports.push_back(find_beta_c(c, tol));
      curves.push_back(c);
      if (n == 14) {
        const PressureBounds b = pressure_bounds(sums, 5.0);
        width14 = b.high - b.low;
        floor14 = c.floor;
      }
    }
    const bool width_ok = width14 < 0.05;
    bool crossed = std::all_of(reports.begin(), reports.end(), [](const BetaCReport& r) { return r.crossed; });
    bool monotone = crossed, plateau = crossed;
    if (crossed) {
      for (std::size_t i = 1; i < reports.size(); ++i) monotone = monotone && reports[i].beta_c <= reports[i - 1].beta_c;
      for (std::size_t i = 0; i < reports.size(); ++i) {
        const double b2 = 2 * reports[i].beta_c;
        const LanguageIndex lang(kbonacci::kbonacci(k), curves[i].n + 1);
        plateau = plateau && pressure_bounds(lang, Potential::standard(k, 1.0), b2, curves[i].n).high <= tol;
      }
    }
    std::string detail = std::string("ordered/exact at 0/nonnegative/convex ") + (shape ? "ok" : "FAILED") +
                         "; width at beta=5, n=14 = " + fmt(width14) + (width_ok ? " ok" : " (needs < 0.05)") +
                         "; beta_c crossing " + (crossed ? "found" : "absent") + ", min P_high by n:";
    for (const BetaCReport& r : reports) detail += " " + fmt(r.min_high);
    if (!crossed) detail += " (floor log(#L_n)/n at n=14 = " + fmt(floor14) + " > tol)";
    if (crossed) detail += std::string("; beta_c nonincreasing ") + (monotone ? "ok" : "no") + ", plateau " + (plateau ? "ok" : "no");
    return Outcome{shape && width_ok && crossed && monotone && plateau, detail};
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

