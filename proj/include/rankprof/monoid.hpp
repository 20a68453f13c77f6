#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rankprof/automata.hpp"

namespace rankprof {

using Element = std::uint32_t;

inline constexpr std::size_t kDefaultMonoidCap = 5000;

/// Transition monoid of a complete DFA. Element 0 is the identity; elements
/// are numbered in shortlex order of their witnesses, and each witness is the
/// shortlex-least word mapping to its element. For a minimal DFA this is the
/// syntactic monoid of the language.
class FiniteMonoid {
 public:
  std::size_t size() const noexcept { return actions_.size(); }
  Element identity() const noexcept { return 0; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }

  /// State transformation of an element (apply the witness word).
  const std::vector<State>& action(Element e) const { return actions_[e]; }
  const Word& witness(Element e) const { return witnesses_[e]; }
  bool is_accepting(Element e) const { return accepting_[e]; }
  std::vector<Element> accepting_elements() const;

  /// e followed by the letter a.
  Element times_letter(Element e, Letter a) const { return letter_table_[e * alphabet_.size() + a]; }

  /// Product e * f: act by e, then by f.
  Element multiply(Element e, Element f) const;

  /// Image of a word under the canonical morphism.
  Element image(const Word& w) const;

  /// Whether m_left * e * m_right lies in the accepting set.
  bool accepts_in_context(Element m_left, Element e, Element m_right) const {
    return final_states_[actions_[m_right][actions_[e][actions_[m_left][start_]]]];
  }

 private:
  friend FiniteMonoid transition_monoid(const Dfa& d, std::size_t cap);

  struct VecHash {
    std::size_t operator()(const std::vector<State>& v) const noexcept;
  };

  Alphabet alphabet_{"a"};
  State start_ = 0;
  std::vector<bool> final_states_;
  std::vector<std::vector<State>> actions_;
  std::vector<Word> witnesses_;
  std::vector<bool> accepting_;
  std::vector<Element> letter_table_;
  std::unordered_map<std::vector<State>, Element, VecHash> index_;
};

/// Closure of the letter actions under composition, breadth first in
/// shortlex order. Throws HorizonTooLarge past cap elements.
FiniteMonoid transition_monoid(const Dfa& d, std::size_t cap = kDefaultMonoidCap);

/// Power sequence of an element: a^{h+p} = a^h with h >= 1 and p >= 1 least.
struct EventualCycle {
  Element element = 0;
  std::size_t index = 1;
  std::size_t period = 1;
  std::vector<Element> powers;  // a^1 .. a^{h+p-1}
};

EventualCycle eventual_cycle(const FiniteMonoid& m, Element a);

/// Every element has period 1.
bool is_aperiodic(const FiniteMonoid& m);

/// Contexted cycle: membership of r x^{h+i+tp} s differs from that of
/// r x^{h+j+tp} s for every t >= 0.
struct CycleWitness {
  Word r;
  Word x;
  Word s;
  std::size_t h = 1;
  std::size_t p = 2;
  std::size_t i = 0;
  std::size_t j = 1;
  /// True when the i-residue words are in the language (j-residue words are not).
  bool i_accepted = true;
  Element element = 0;

  std::size_t context_length() const noexcept { return r.size() + s.size(); }  // C
  std::size_t block_length() const noexcept { return x.size(); }               // ell
  /// Least horizon at which lower_bound_B is defined.
  std::size_t first_defined_horizon() const;
};

/// Witness for one periodic element: residues i < j and the context pair
/// minimizing |r|+|s|, then (i, j), then shortlex r, then shortlex s.
/// Returns nullopt when the element has period 1.
std::optional<CycleWitness> cycle_witness_for(const FiniteMonoid& m, Element a);

/// All witnesses, one per element of period >= 2, in element order.
std::vector<CycleWitness> all_cycle_witnesses(const FiniteMonoid& m);

/// The witness of the periodic element with the shortlex-least word x.
/// Throws NoWitness when the monoid is aperiodic.
CycleWitness extract_cycle_witness(const Dfa& d, std::size_t cap = kDefaultMonoidCap);

/// Checks membership alternation by direct DFA runs for t = 0..t_max.
bool verify_cycle_witness(const Dfa& d, const CycleWitness& w, std::size_t t_max = 2);

/// floor(log2(K - p + 1)) + 1 with K = floor((n - C) / ell), defined when
/// K - p + 1 >= max(h, 1).
std::optional<std::size_t> lower_bound_B(const CycleWitness& w, std::size_t n);

}  // namespace rankprof
