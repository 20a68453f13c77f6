#include "rankprof/monoid.hpp"

#include <algorithm>
#include <tuple>

#include "rankprof/ef_types.hpp"
#include "rankprof/errors.hpp"

namespace rankprof {

std::size_t FiniteMonoid::VecHash::operator()(const std::vector<State>& v) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (State s : v) {
    h ^= s;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<Element> FiniteMonoid::accepting_elements() const {
  std::vector<Element> out;
  for (Element e = 0; e < size(); ++e)
    if (accepting_[e]) out.push_back(e);
  return out;
}

Element FiniteMonoid::multiply(Element e, Element f) const {
  const auto& a = actions_[e];
  const auto& b = actions_[f];
  std::vector<State> c(a.size());
  for (std::size_t s = 0; s < a.size(); ++s) c[s] = b[a[s]];
  return index_.at(c);
}

Element FiniteMonoid::image(const Word& w) const {
  Element e = identity();
  for (Letter a : w.letters()) e = times_letter(e, a);
  return e;
}

FiniteMonoid transition_monoid(const Dfa& d, std::size_t cap) {
  FiniteMonoid m;
  m.alphabet_ = d.alphabet();
  m.start_ = d.start();
  m.final_states_ = d.accepting_states();
  const std::size_t n = d.state_count();
  const std::size_t k = d.alphabet().size();

  std::vector<State> identity(n);
  for (State s = 0; s < n; ++s) identity[s] = s;
  m.index_.emplace(identity, 0);
  m.actions_.push_back(std::move(identity));
  m.witnesses_.emplace_back(d.alphabet());

  for (std::size_t e = 0; e < m.actions_.size(); ++e) {
    for (Letter a = 0; a < k; ++a) {
      std::vector<State> next(n);
      for (State s = 0; s < n; ++s) next[s] = d.step(m.actions_[e][s], a);
      auto [it, inserted] = m.index_.emplace(next, static_cast<Element>(m.actions_.size()));
      if (inserted) {
        if (m.actions_.size() >= cap)
          throw HorizonTooLarge("transition monoid exceeds cap of " + std::to_string(cap) + " elements");
        m.actions_.push_back(std::move(next));
        std::vector<Letter> letters = m.witnesses_[e].letters();
        letters.push_back(a);
        m.witnesses_.emplace_back(d.alphabet(), std::move(letters));
      }
      m.letter_table_.push_back(it->second);
    }
  }
  for (const auto& act : m.actions_) m.accepting_.push_back(d.accepting(act[d.start()]));
  return m;
}

EventualCycle eventual_cycle(const FiniteMonoid& m, Element a) {
  EventualCycle c;
  c.element = a;
  std::vector<std::size_t> first_seen(m.size(), 0);  // exponent, 0 = unseen
  Element power = a;
  for (std::size_t exp = 1;; ++exp) {
    if (first_seen[power] != 0) {
      c.index = first_seen[power];
      c.period = exp - first_seen[power];
      return c;
    }
    first_seen[power] = exp;
    c.powers.push_back(power);
    power = m.multiply(power, a);
  }
}

bool is_aperiodic(const FiniteMonoid& m) {
  for (Element e = 0; e < m.size(); ++e)
    if (eventual_cycle(m, e).period != 1) return false;
  return true;
}

std::size_t CycleWitness::first_defined_horizon() const {
  return context_length() + block_length() * (std::max<std::size_t>(h, 1) + p - 1);
}

std::optional<CycleWitness> cycle_witness_for(const FiniteMonoid& m, Element a) {
  EventualCycle cyc = eventual_cycle(m, a);
  if (cyc.period < 2) return std::nullopt;
  const std::size_t h = cyc.index;
  const std::size_t p = cyc.period;
  auto cycle_elem = [&](std::size_t t) { return cyc.powers[h - 1 + t]; };

  std::optional<CycleWitness> best;
  auto better = [&](const CycleWitness& c) {
    if (!best) return true;
    auto key = [](const CycleWitness& w) {
      return std::make_tuple(w.context_length(), w.i, w.j, w.r.size());
    };
    if (key(c) != key(*best)) return key(c) < key(*best);
    if (c.r.letters() != best->r.letters()) return c.r.letters() < best->r.letters();
    return shortlex_less(c.s, best->s);
  };
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) {
      Element ei = cycle_elem(i);
      Element ej = cycle_elem(j);
      if (ei == ej) continue;
      // Witness lengths are nondecreasing in element order, so stop once
      // the context is longer than the best found.
      for (Element ml = 0; ml < m.size(); ++ml) {
        if (best && m.witness(ml).size() > best->context_length()) break;
        for (Element mr = 0; mr < m.size(); ++mr) {
          if (best && m.witness(ml).size() + m.witness(mr).size() > best->context_length()) break;
          bool in_i = m.accepts_in_context(ml, ei, mr);
          bool in_j = m.accepts_in_context(ml, ej, mr);
          if (in_i == in_j) continue;
          CycleWitness c{m.witness(ml), m.witness(a), m.witness(mr), h, p, i, j, in_i, a};
          if (better(c)) best = std::move(c);
        }
      }
    }
  if (!best)
    throw InternalError("no separating context for a periodic element; monoid is not syntactic");
  return best;
}

std::vector<CycleWitness> all_cycle_witnesses(const FiniteMonoid& m) {
  std::vector<CycleWitness> out;
  for (Element e = 0; e < m.size(); ++e)
    if (auto w = cycle_witness_for(m, e)) out.push_back(std::move(*w));
  return out;
}

CycleWitness extract_cycle_witness(const Dfa& d, std::size_t cap) {
  FiniteMonoid m = transition_monoid(d, cap);
  // Elements are numbered in shortlex order of their witnesses.
  for (Element e = 0; e < m.size(); ++e)
    if (auto w = cycle_witness_for(m, e)) return std::move(*w);
  throw NoWitness("syntactic monoid is aperiodic: no cycle witness exists");
}

bool verify_cycle_witness(const Dfa& d, const CycleWitness& w, std::size_t t_max) {
  if (w.x.empty() || w.p < 2) return false;
  for (std::size_t t = 0; t <= t_max; ++t) {
    Word wi = concat(concat(w.r, power(w.x, w.h + w.i + t * w.p)), w.s);
    Word wj = concat(concat(w.r, power(w.x, w.h + w.j + t * w.p)), w.s);
    if (d.accepts(wi) != w.i_accepted || d.accepts(wj) == w.i_accepted) return false;
  }
  return true;
}

std::optional<std::size_t> lower_bound_B(const CycleWitness& w, std::size_t n) {
  const std::size_t c = w.context_length();
  if (n < c || w.block_length() == 0) return std::nullopt;
  const std::size_t k = (n - c) / w.block_length();
  if (k + 1 < w.p) return std::nullopt;
  const std::size_t span = k - w.p + 1;
  if (span < std::max<std::size_t>(w.h, 1)) return std::nullopt;
  return floor_log2(span) + 1;
}

}  // namespace rankprof
