#pragma once

#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rankprof/automata.hpp"
#include "rankprof/monoid.hpp"

namespace rankprof {

/// A regular language held as its minimal complete DFA, with the syntactic
/// monoid built on first use.
class Language {
 public:
  Language(const Dfa& dfa, std::string description);

  const Dfa& dfa() const noexcept { return dfa_; }
  const Alphabet& alphabet() const noexcept { return dfa_.alphabet(); }
  const std::string& description() const noexcept { return description_; }
  bool contains(const Word& w) const { return dfa_.accepts(w); }

  /// Throws HorizonTooLarge past the monoid cap.
  const FiniteMonoid& monoid() const;

  Language complement() const;
  /// Same language over a larger alphabet.
  Language over(const Alphabet& wider) const;

 private:
  Dfa dfa_;
  std::string description_;
  struct Lazy {
    std::once_flag once;
    std::unique_ptr<FiniteMonoid> monoid;
  };
  std::shared_ptr<Lazy> lazy_ = std::make_shared<Lazy>();
};

/// {a^m : m even}.
Language builtin_even();
/// {a^m : m mod p in residues}.
Language builtin_mod(std::size_t p, const std::set<std::size_t>& residues);
/// {a^m : m >= t}.
Language builtin_threshold(std::size_t t);
/// Finite language; alphabet is the sorted set of letters used ({a} if none).
Language builtin_exact(const std::vector<std::string>& words);

/// Parses `regex:<pattern>`, `file:<path>` (DFA document), or
/// `builtin:even`, `builtin:mod:p:R` (R as `0,2` or `{0,2}`),
/// `builtin:threshold:t`, `builtin:exact:w1,w2,...` (`@eps` allowed).
Language language_from_spec(std::string_view spec);

}  // namespace rankprof
