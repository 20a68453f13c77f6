#include "rankprof/language.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "rankprof/errors.hpp"

namespace rankprof {

Language::Language(const Dfa& dfa, std::string description)
    : dfa_(dfa.is_minimal() ? dfa : dfa.minimized()), description_(std::move(description)) {}

const FiniteMonoid& Language::monoid() const {
  std::call_once(lazy_->once, [this] {
    lazy_->monoid = std::make_unique<FiniteMonoid>(transition_monoid(dfa_));
  });
  return *lazy_->monoid;
}

Language Language::complement() const {
  return Language(dfa_.complement(), "complement(" + description_ + ")");
}

Language Language::over(const Alphabet& wider) const {
  if (wider == alphabet()) return *this;
  return Language(dfa_.over(wider), description_);
}

Language builtin_mod(std::size_t p, const std::set<std::size_t>& residues) {
  if (p == 0) throw Error("modulus must be positive");
  std::vector<bool> acc(p, false);
  std::string listed;
  for (auto r : residues) {
    if (r >= p) throw Error("residue " + std::to_string(r) + " is not below modulus " + std::to_string(p));
    acc[r] = true;
    listed += (listed.empty() ? "" : ",") + std::to_string(r);
  }
  std::vector<State> delta(p);
  for (std::size_t s = 0; s < p; ++s) delta[s] = static_cast<State>((s + 1) % p);
  return Language(Dfa(Alphabet("a"), p, 0, std::move(acc), std::move(delta)),
                  "builtin:mod:" + std::to_string(p) + ":{" + listed + "}");
}

Language builtin_even() {
  Language l = builtin_mod(2, {0});
  return Language(l.dfa(), "builtin:even");
}

Language builtin_threshold(std::size_t t) {
  std::vector<bool> acc(t + 1, false);
  acc[t] = true;
  std::vector<State> delta(t + 1);
  for (std::size_t s = 0; s <= t; ++s) delta[s] = static_cast<State>(std::min(s + 1, t));
  return Language(Dfa(Alphabet("a"), t + 1, 0, std::move(acc), std::move(delta)),
                  "builtin:threshold:" + std::to_string(t));
}

Language builtin_exact(const std::vector<std::string>& words) {
  std::string symbols;
  for (const auto& w : words)
    if (w != kEpsilonToken) symbols += w;
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  Alphabet alphabet(symbols.empty() ? "a" : symbols);
  const std::size_t k = alphabet.size();

  // Trie with an explicit sink at state 0.
  std::vector<std::vector<State>> next{std::vector<State>(k, 0), std::vector<State>(k, 0)};
  std::vector<bool> acc{false, false};
  std::string listed;
  for (const auto& text : words) {
    Word w = Word::parse(alphabet, text);
    State s = 1;
    for (Letter a : w.letters()) {
      if (next[s][a] == 0) {
        next[s][a] = static_cast<State>(next.size());
        next.emplace_back(k, 0);
        acc.push_back(false);
      }
      s = next[s][a];
    }
    acc[s] = true;
    listed += (listed.empty() ? "" : ",") + w.str();
  }
  std::vector<State> delta;
  for (const auto& row : next) delta.insert(delta.end(), row.begin(), row.end());
  return Language(Dfa(alphabet, next.size(), 1, std::move(acc), std::move(delta)).minimized(),
                  "builtin:exact:" + listed);
}

namespace {

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  return value;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

Language parse_builtin(std::string_view spec, std::string_view full) {
  if (spec == "even") return builtin_even();
  if (spec.starts_with("threshold:"))
    return builtin_threshold(parse_count(spec.substr(10), "threshold"));
  if (spec.starts_with("mod:")) {
    std::string_view rest = spec.substr(4);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw Error("expected builtin:mod:p:R, got '" + std::string(full) + "'");
    std::size_t p = parse_count(rest.substr(0, colon), "modulus");
    std::string_view residues = rest.substr(colon + 1);
    if (residues.starts_with("{") && residues.ends_with("}")) residues = residues.substr(1, residues.size() - 2);
    std::set<std::size_t> r;
    if (!residues.empty())
      for (const auto& part : split(residues, ',')) r.insert(parse_count(part, "residue"));
    return builtin_mod(p, r);
  }
  if (spec.starts_with("exact:")) return builtin_exact(split(spec.substr(6), ','));
  throw Error("unknown builtin language '" + std::string(full) + "'");
}

}  // namespace

Language language_from_spec(std::string_view spec) {
  if (spec.starts_with("regex:")) {
    return Language(parse_regex(spec.substr(6)), std::string(spec));
  }
  if (spec.starts_with("file:")) {
    std::string path(spec.substr(5));
    std::ifstream in(path);
    if (!in) throw Error("cannot open DFA file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return Language(read_dfa_json(buf.str()), std::string(spec));
  }
  if (spec.starts_with("builtin:")) return parse_builtin(spec.substr(8), spec);
  throw Error("language spec must start with regex:, file: or builtin: ('" + std::string(spec) + "')");
}

}  // namespace rankprof
