#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rankprof/words.hpp"

namespace rankprof {

/// Variable v<k> is represented by k.
using Var = std::uint32_t;

enum class FormulaKind { kLess, kEqual, kLetter, kNot, kAnd, kOr, kExists, kForall, kTrue, kFalse };

/// FO[<] formula over word positions, held as a tree (no shared subterms).
class Formula {
 public:
  static Formula less(Var x, Var y);
  static Formula equal(Var x, Var y);
  static Formula letter(char symbol, Var x);
  static Formula negation(Formula child);
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);
  static Formula exists(Var v, Formula child);
  static Formula forall(Var v, Formula child);
  static Formula truth();
  static Formula falsity();

  FormulaKind kind() const noexcept { return kind_; }
  /// First/second variable of an atom, or the bound variable of a quantifier.
  Var var(std::size_t i = 0) const { return vars_[i]; }
  char symbol() const noexcept { return symbol_; }
  const std::vector<Formula>& children() const noexcept { return children_; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  Formula(FormulaKind kind) : kind_(kind) {}

  FormulaKind kind_;
  Var vars_[2] = {0, 0};
  char symbol_ = 0;
  std::vector<Formula> children_;
};

/// Maximum nesting depth of quantifiers.
std::size_t quantifier_rank(const Formula& phi);

/// Node count of the formula tree; n-ary connectives count once.
std::size_t tree_size(const Formula& phi);

std::set<Var> free_variables(const Formula& phi);

/// S-expression form: (lt x y) (eq x y) (letter a x) (not f) (and f...)
/// (or f...) (exists v f) (forall v f) (true) (false).
std::string to_sexpr(const Formula& phi);

/// Inverse of to_sexpr; throws ParseError.
Formula parse_sexpr(std::string_view text);

std::string var_name(Var v);

/// Variable -> 1-based position.
using Assignment = std::map<Var, std::size_t>;

/// Memoizing model checker bound to one word.
///
/// Subformulas are hash-consed up to renaming of variables, so repeated
/// pieces (e.g. the distance formulas nested inside each other) share one
/// memo table. Several formulas may be checked against the same instance.
class ModelChecker {
 public:
  explicit ModelChecker(Word w);
  ~ModelChecker();
  ModelChecker(ModelChecker&&) noexcept;
  ModelChecker& operator=(ModelChecker&&) noexcept;

  /// Throws UnboundVariable when a free variable is missing from env, and
  /// Error for positions outside 1..|w|.
  bool holds(const Formula& phi, const Assignment& env = {});

  /// Formula compiled against this checker, for repeated queries.
  struct Query {
    std::uint32_t id = 0;
    std::vector<Var> free;
  };
  Query prepare(const Formula& phi);
  bool holds(const Query& query, const Assignment& env);

  const Word& word() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Tarskian satisfaction; on the empty word exists is false, forall true.
bool evaluate(const Word& w, const Formula& phi, const Assignment& env = {});

/// Deterministic synthesis of the distance, length and exact-word formulas.
///
/// Each call starts a fresh variable counter, so output is reproducible.
/// The macros first/last/succ are expanded in place.
Formula synth_dist(std::size_t d);                 // free in v0, v1
Formula synth_length(std::size_t m);               // sentence
Formula synth_exact_word(const Word& w);           // sentence
/// Disjunction of exact-word sentences; members must have length <= n.
Formula synth_horizon_classifier(std::vector<Word> members, std::size_t n);

}  // namespace rankprof
