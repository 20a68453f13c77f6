#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rankprof/words.hpp"

namespace rankprof {

using State = std::uint32_t;

/// Complete deterministic automaton. delta is row-major: states x alphabet.
class Dfa {
 public:
  /// Validates that delta is total and indices are in range.
  Dfa(Alphabet alphabet, std::size_t state_count, State start, std::vector<bool> accepting,
      std::vector<State> delta);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return state_count_; }
  State start() const noexcept { return start_; }
  bool accepting(State s) const { return accepting_[s]; }
  const std::vector<bool>& accepting_states() const noexcept { return accepting_; }
  State step(State s, Letter a) const { return delta_[s * alphabet_.size() + a]; }
  const std::vector<State>& delta() const noexcept { return delta_; }

  State run(State from, const Word& w) const;

  /// Throws AlphabetMismatch when w is over another alphabet.
  bool accepts(const Word& w) const;

  /// Reachable part, Moore partition refinement, states renumbered in
  /// breadth-first order from the start state (letters in alphabet order).
  Dfa minimized() const;

  Dfa complement() const;

  /// Same language over a larger alphabet; new letters go to a sink.
  Dfa over(const Alphabet& wider) const;

  /// Every state is reachable and no two states are Nerode-equivalent.
  bool is_minimal() const;

 private:
  Alphabet alphabet_;
  std::size_t state_count_;
  State start_;
  std::vector<bool> accepting_;
  std::vector<State> delta_;
};

bool membership(const Dfa& d, const Word& w);

/// Grammar: literals, `|`, juxtaposition, `*`, parentheses, `@eps`, `@empty`.
/// Whitespace is ignored. Returns the minimal complete DFA. The alphabet is
/// the sorted set of literals unless one is given; a pattern without
/// literals defaults to {a}. Throws ParseError with the offending position.
Dfa parse_regex(std::string_view pattern, std::optional<Alphabet> alphabet = std::nullopt);

/// DFA document: {"alphabet": ["a","b"], "states": n, "start": s,
/// "accept": [..], "delta": [[..], ..]} with one row per state.
Dfa read_dfa_json(std::string_view text);
std::string write_dfa_json(const Dfa& d);

/// Recursive backtracking matcher, independent of the automaton pipeline.
bool regex_matches_naive(std::string_view pattern, std::string_view subject);

/// Shortlex-least word accepted by both automata (same alphabet), if any.
std::optional<Word> intersection_witness(const Dfa& a, const Dfa& b);

}  // namespace rankprof
