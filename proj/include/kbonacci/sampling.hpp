#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kbonacci/configuration.hpp"
#include "kbonacci/language.hpp"
#include "kbonacci/recognition.hpp"
#include "kbonacci/substitution.hpp"

namespace kbonacci {

/// Distinct certified configurations outside the subshift. Half of the heads
/// are random words of 1..5 letters, half are factors of the fixed point of
/// 1..12 letters plus one random letter, so delta takes a spread of values.
/// The tail is constant or periodic with period at most 3. Deterministic for
/// a given seed.
inline std::vector<Configuration> sample_configurations(const LanguageIndex& lang, std::size_t count, std::uint64_t seed) {
  const std::size_t k = lang.alphabet_size();
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng() % (hi - lo + 1)); };
  const FixedPointStream omega(lang.substitution());
  const auto text = omega.prefix(1024);
  std::vector<Configuration> out;
  std::set<std::string> seen;
  for (std::size_t attempt = 0; out.size() < count; ++attempt) {
    if (attempt > 100 * count + 1000) throw precondition_error("could not sample enough distinct configurations");
    Word head;
    if (rng() % 2 == 0) {
      head.resize(pick(1, 5));
      for (Letter& a : head) a = static_cast<Letter>(pick(0, k - 1));
    } else {
      const std::size_t len = pick(1, 12);
      const auto from = text.subspan(pick(0, text.size() - len), len);
      head.assign(from.begin(), from.end());
      head.push_back(static_cast<Letter>(pick(0, k - 1)));
    }
    Word period(pick(1, 3));
    for (Letter& a : period) a = static_cast<Letter>(pick(0, k - 1));
    Configuration x = period.size() == 1 ? Configuration::constant(k, head, period[0])
                                         : Configuration::periodic(k, head, period);
    try {
      x = certify(lang, x);
    } catch (const index_depth_error&) {
      continue;
    }
    if (seen.insert(x.to_text()).second) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace kbonacci
