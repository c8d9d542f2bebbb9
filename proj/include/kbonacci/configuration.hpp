#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kbonacci/errors.hpp"
#include "kbonacci/substitution.hpp"
#include "kbonacci/word.hpp"

namespace kbonacci {

/// x = head c c c ...
struct ConstTail {
  Letter letter;
};

/// x = head u u u ...
struct PeriodicTail {
  Word period;
};

/// x = shift^offset(omega); the head is a materialized prefix of that orbit point.
struct OrbitTail {
  std::uint64_t offset;
};

using Tail = std::variant<ConstTail, PeriodicTail, OrbitTail>;

/// A point of the full shift A_k^N given by a finite head and an infinite tail rule.
class Configuration {
 public:
  Configuration(std::size_t k, Word head, Tail tail, std::shared_ptr<const FixedPointStream> omega = nullptr)
      : k_(k), head_(std::move(head)), tail_(std::move(tail)), omega_(std::move(omega)) {
    for (Letter a : head_)
      if (a >= k_) throw precondition_error("configuration letter outside the alphabet");
    if (auto* c = std::get_if<ConstTail>(&tail_); c && c->letter >= k_)
      throw precondition_error("tail letter outside the alphabet");
    if (auto* p = std::get_if<PeriodicTail>(&tail_)) {
      if (p->period.empty()) throw precondition_error("periodic tail needs a nonempty period");
      for (Letter a : p->period)
        if (a >= k_) throw precondition_error("tail letter outside the alphabet");
    }
    if (auto* o = std::get_if<OrbitTail>(&tail_)) {
      if (!omega_) throw precondition_error("orbit configuration needs the fixed point");
      if (omega_->substitution().alphabet_size() != k_) throw precondition_error("fixed point alphabet mismatch");
      const auto orbit = omega_->prefix(static_cast<std::size_t>(o->offset) + head_.size());
      for (std::size_t i = 0; i < head_.size(); ++i)
        if (orbit[o->offset + i] != head_[i]) throw precondition_error("orbit head disagrees with the fixed point");
    }
  }

  static Configuration constant(std::size_t k, Word head, Letter c) {
    return Configuration(k, std::move(head), ConstTail{c});
  }
  static Configuration periodic(std::size_t k, Word head, Word period) {
    return Configuration(k, std::move(head), PeriodicTail{std::move(period)});
  }
  static Configuration orbit(std::shared_ptr<const FixedPointStream> omega, std::uint64_t offset) {
    const std::size_t k = omega->substitution().alphabet_size();
    return Configuration(k, {}, OrbitTail{offset}, std::move(omega));
  }

  std::size_t alphabet_size() const { return k_; }
  const Word& head() const { return head_; }
  const Tail& tail() const { return tail_; }
  const std::shared_ptr<const FixedPointStream>& omega() const { return omega_; }
  bool in_subshift() const { return std::holds_alternative<OrbitTail>(tail_); }

  Letter at(std::uint64_t i) const {
    if (i < head_.size()) return head_[i];
    const std::uint64_t t = i - head_.size();
    if (auto* c = std::get_if<ConstTail>(&tail_)) return c->letter;
    if (auto* p = std::get_if<PeriodicTail>(&tail_)) return p->period[t % p->period.size()];
    return omega_->at(std::get<OrbitTail>(tail_).offset + i);
  }

  Word prefix(std::size_t length) const {
    Word out(head_.begin(), head_.begin() + static_cast<std::ptrdiff_t>(std::min(length, head_.size())));
    if (auto* o = std::get_if<OrbitTail>(&tail_)) {
      if (length > head_.size()) {
        const auto orbit = omega_->prefix(static_cast<std::size_t>(o->offset) + length);
        out.insert(out.end(), orbit.begin() + static_cast<std::ptrdiff_t>(o->offset + head_.size()),
                   orbit.begin() + static_cast<std::ptrdiff_t>(o->offset + length));
      }
      return out;
    }
    out.reserve(length);
    for (std::size_t i = out.size(); i < length; ++i) out.push_back(at(i));
    return out;
  }

  /// The same point with a head of at least `length` letters.
  Configuration with_head_length(std::size_t length) const {
    if (length <= head_.size()) return *this;
    if (auto* o = std::get_if<OrbitTail>(&tail_)) return Configuration(k_, prefix(length), *o, omega_);
    Configuration out = shifted(length);  // tail phase after `length` letters
    out.head_ = prefix(length);
    return out;
  }

  /// shift^j(x).
  Configuration shifted(std::uint64_t j) const {
    Configuration out = *this;
    if (j <= head_.size()) {
      out.head_.erase(out.head_.begin(), out.head_.begin() + static_cast<std::ptrdiff_t>(j));
      if (auto* o = std::get_if<OrbitTail>(&out.tail_)) o->offset += j;
      return out;
    }
    const std::uint64_t t = j - head_.size();
    out.head_.clear();
    if (auto* p = std::get_if<PeriodicTail>(&out.tail_)) {
      const std::size_t r = static_cast<std::size_t>(t % p->period.size());
      std::rotate(p->period.begin(), p->period.begin() + static_cast<std::ptrdiff_t>(r), p->period.end());
    } else if (auto* o = std::get_if<OrbitTail>(&out.tail_)) {
      o->offset += j;
    }
    return out;
  }

  /// s^n(x). Orbit points need `s` to be the substitution fixing omega.
  Configuration image(const Substitution& s, unsigned n) const {
    if (s.alphabet_size() != k_) throw precondition_error("substitution alphabet mismatch");
    Word head = s.power_apply(n, head_);
    if (auto* c = std::get_if<ConstTail>(&tail_)) {
      const Word& period = s.power_image(n, c->letter);
      if (period.size() == 1) return Configuration(k_, std::move(head), ConstTail{period[0]});
      return Configuration(k_, std::move(head), PeriodicTail{period});
    }
    if (auto* p = std::get_if<PeriodicTail>(&tail_)) {
      return Configuration(k_, std::move(head), PeriodicTail{s.power_apply(n, p->period)});
    }
    if (!(omega_->substitution() == s)) throw precondition_error("orbit point is fixed by a different substitution");
    const auto offset = std::get<OrbitTail>(tail_).offset;
    const std::uint64_t image_offset = s.image_length(n, omega_->prefix(static_cast<std::size_t>(offset)));
    return Configuration(k_, std::move(head), OrbitTail{image_offset}, omega_);
  }

  std::string to_text() const {
    std::string out = "head=" + to_string(head_) + " tail=";
    if (auto* c = std::get_if<ConstTail>(&tail_)) return out + "const:" + std::to_string(c->letter);
    if (auto* p = std::get_if<PeriodicTail>(&tail_)) return out + "periodic:" + to_string(p->period);
    return out + "orbit:" + std::to_string(std::get<OrbitTail>(tail_).offset);
  }

 private:
  std::size_t k_;
  Word head_;
  Tail tail_;
  std::shared_ptr<const FixedPointStream> omega_;
};

/// Parses `head=<digits> tail=const:<digit>|periodic:<digits>|orbit:<offset>`.
inline Configuration parse_configuration(std::string_view line, std::size_t k,
                                         std::shared_ptr<const FixedPointStream> omega = nullptr) {
  std::istringstream in{std::string(line)};
  std::string token, head_text, tail_text;
  bool have_head = false, have_tail = false;
  while (in >> token) {
    if (token.rfind("head=", 0) == 0) {
      head_text = token.substr(5);
      have_head = true;
    } else if (token.rfind("tail=", 0) == 0) {
      tail_text = token.substr(5);
      have_tail = true;
    } else {
      throw precondition_error("unexpected token '" + token + "' in configuration");
    }
  }
  if (!have_head || !have_tail) throw precondition_error("configuration needs head= and tail=");
  Word head = parse_word(head_text, k);
  const auto colon = tail_text.find(':');
  if (colon == std::string::npos) throw precondition_error("tail must be const:, periodic: or orbit:");
  const std::string kind = tail_text.substr(0, colon);
  const std::string value = tail_text.substr(colon + 1);
  if (kind == "const") {
    const Word c = parse_word(value, k);
    if (c.size() != 1) throw precondition_error("const tail takes exactly one letter");
    return Configuration(k, std::move(head), ConstTail{c[0]});
  }
  if (kind == "periodic") return Configuration(k, std::move(head), PeriodicTail{parse_word(value, k)});
  if (kind == "orbit") {
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
      throw precondition_error("orbit offset must be a nonnegative integer");
    return Configuration(k, std::move(head), OrbitTail{std::stoull(value)}, std::move(omega));
  }
  throw precondition_error("unknown tail kind '" + kind + "'");
}

/// One configuration per line; blank lines and lines starting with '#' are skipped.
inline std::vector<Configuration> read_configurations(std::istream& in, std::size_t k,
                                                      std::shared_ptr<const FixedPointStream> omega = nullptr) {
  std::vector<Configuration> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_configuration(line, k, omega));
  }
  return out;
}

}  // namespace kbonacci
