#include <algorithm>
#include <deque>
#include <map>

#include <json.hpp>

#include "rankprof/automata.hpp"
#include "rankprof/errors.hpp"

namespace rankprof {

Dfa::Dfa(Alphabet alphabet, std::size_t state_count, State start, std::vector<bool> accepting,
         std::vector<State> delta)
    : alphabet_(std::move(alphabet)),
      state_count_(state_count),
      start_(start),
      accepting_(std::move(accepting)),
      delta_(std::move(delta)) {
  if (state_count_ == 0) throw Error("DFA needs at least one state");
  if (start_ >= state_count_) throw Error("DFA start state out of range");
  if (accepting_.size() != state_count_) throw Error("DFA accepting vector has wrong size");
  if (delta_.size() != state_count_ * alphabet_.size())
    throw Error("DFA transition table is not total: expected " +
                std::to_string(state_count_ * alphabet_.size()) + " entries, got " +
                std::to_string(delta_.size()));
  for (State t : delta_)
    if (t >= state_count_) throw Error("DFA transition target out of range");
}

State Dfa::run(State from, const Word& w) const {
  State s = from;
  for (Letter a : w.letters()) s = step(s, a);
  return s;
}

bool Dfa::accepts(const Word& w) const {
  if (!(w.alphabet() == alphabet_))
    throw AlphabetMismatch("word " + w.str() + " is over {" + w.alphabet().symbols() +
                           "}, automaton over {" + alphabet_.symbols() + "}");
  return accepting_[run(start_, w)];
}

bool membership(const Dfa& d, const Word& w) { return d.accepts(w); }

Dfa Dfa::minimized() const {
  const std::size_t k = alphabet_.size();
  // Reachable states in BFS order.
  std::vector<std::int64_t> order_of(state_count_, -1);
  std::vector<State> reach{start_};
  order_of[start_] = 0;
  for (std::size_t i = 0; i < reach.size(); ++i)
    for (Letter a = 0; a < k; ++a) {
      State t = step(reach[i], a);
      if (order_of[t] < 0) {
        order_of[t] = static_cast<std::int64_t>(reach.size());
        reach.push_back(t);
      }
    }

  // Moore refinement on the reachable states.
  const std::size_t n = reach.size();
  std::vector<std::uint32_t> block(n);
  for (std::size_t i = 0; i < n; ++i) block[i] = accepting_[reach[i]] ? 1 : 0;
  std::size_t blocks = 0;
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> signature_ids;
    std::vector<std::uint32_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint32_t> sig{block[i]};
      for (Letter a = 0; a < k; ++a) sig.push_back(block[order_of[step(reach[i], a)]]);
      auto [it, _] = signature_ids.emplace(std::move(sig), static_cast<std::uint32_t>(signature_ids.size()));
      next[i] = it->second;
    }
    std::size_t count = signature_ids.size();
    block = std::move(next);
    if (count == blocks) break;
    blocks = count;
  }

  // Renumber blocks in BFS order from the start block.
  std::vector<std::int64_t> new_id(blocks, -1);
  std::vector<std::size_t> representative;
  new_id[block[0]] = 0;
  representative.push_back(0);
  for (std::size_t i = 0; i < representative.size(); ++i)
    for (Letter a = 0; a < k; ++a) {
      auto t = block[order_of[step(reach[representative[i]], a)]];
      if (new_id[t] < 0) {
        new_id[t] = static_cast<std::int64_t>(representative.size());
        // any member of block t works as representative
        for (std::size_t j = 0; j < n; ++j)
          if (block[j] == t) {
            representative.push_back(j);
            break;
          }
      }
    }
  std::vector<bool> acc(blocks);
  std::vector<State> delta(blocks * k);
  for (std::size_t b = 0; b < blocks; ++b) {
    State s = reach[representative[b]];
    acc[b] = accepting_[s];
    for (Letter a = 0; a < k; ++a)
      delta[b * k + a] = static_cast<State>(new_id[block[order_of[step(s, a)]]]);
  }
  return Dfa(alphabet_, blocks, 0, std::move(acc), std::move(delta));
}

Dfa Dfa::complement() const {
  std::vector<bool> acc(accepting_);
  acc.flip();
  return Dfa(alphabet_, state_count_, start_, std::move(acc), delta_);
}

Dfa Dfa::over(const Alphabet& wider) const {
  if (wider == alphabet_) return *this;
  for (char c : alphabet_.symbols())
    if (!wider.contains(c))
      throw AlphabetMismatch("alphabet {" + wider.symbols() + "} does not contain '" + c + "'");
  const std::size_t k = wider.size();
  const State sink = static_cast<State>(state_count_);
  std::vector<bool> acc(accepting_);
  acc.push_back(false);
  std::vector<State> delta((state_count_ + 1) * k, sink);
  for (State s = 0; s < state_count_; ++s)
    for (Letter a = 0; a < k; ++a)
      if (auto old = alphabet_.index_of(wider.symbol(a))) delta[s * k + a] = step(s, *old);
  return Dfa(wider, state_count_ + 1, start_, std::move(acc), std::move(delta)).minimized();
}

bool Dfa::is_minimal() const {
  // Pairwise distinguishability by the table-filling algorithm; also requires reachability.
  const std::size_t n = state_count_;
  const std::size_t k = alphabet_.size();
  std::vector<bool> seen(n, false);
  std::deque<State> queue{start_};
  seen[start_] = true;
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (Letter a = 0; a < k; ++a)
      if (!seen[step(s, a)]) {
        seen[step(s, a)] = true;
        queue.push_back(step(s, a));
      }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
  std::vector<bool> distinct(n * n, false);
  for (State p = 0; p < n; ++p)
    for (State q = 0; q < n; ++q) distinct[p * n + q] = accepting_[p] != accepting_[q];
  bool changed = true;
  while (changed) {
    changed = false;
    for (State p = 0; p < n; ++p)
      for (State q = 0; q < n; ++q) {
        if (distinct[p * n + q]) continue;
        for (Letter a = 0; a < k; ++a)
          if (distinct[step(p, a) * n + step(q, a)]) {
            distinct[p * n + q] = true;
            changed = true;
            break;
          }
      }
  }
  for (State p = 0; p < n; ++p)
    for (State q = p + 1; q < n; ++q)
      if (!distinct[p * n + q]) return false;
  return true;
}

Dfa read_dfa_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed DFA document: ") + e.what(), e.byte);
  }
  try {
    std::string symbols;
    for (const auto& s : doc.at("alphabet")) {
      auto sym = s.get<std::string>();
      if (sym.size() != 1) throw Error("alphabet entries must be single characters, got '" + sym + "'");
      symbols += sym;
    }
    Alphabet alphabet(symbols);
    auto states = doc.at("states").get<std::size_t>();
    auto start = doc.at("start").get<State>();
    std::vector<bool> acc(states, false);
    for (const auto& a : doc.at("accept")) {
      auto s = a.get<State>();
      if (s >= states) throw Error("accepting state " + std::to_string(s) + " out of range");
      acc[s] = true;
    }
    std::vector<State> delta;
    for (const auto& row : doc.at("delta")) {
      if (row.is_array()) {
        if (row.size() != alphabet.size()) throw Error("delta row has wrong width");
        for (const auto& t : row) delta.push_back(t.get<State>());
      } else {
        delta.push_back(row.get<State>());
      }
    }
    return Dfa(alphabet, states, start, std::move(acc), std::move(delta));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid DFA document: ") + e.what());
  }
}

std::string write_dfa_json(const Dfa& d) {
  nlohmann::ordered_json doc;
  doc["alphabet"] = nlohmann::ordered_json::array();
  for (char c : d.alphabet().symbols()) doc["alphabet"].push_back(std::string(1, c));
  doc["states"] = d.state_count();
  doc["start"] = d.start();
  doc["accept"] = nlohmann::ordered_json::array();
  for (State s = 0; s < d.state_count(); ++s)
    if (d.accepting(s)) doc["accept"].push_back(s);
  doc["delta"] = nlohmann::ordered_json::array();
  for (State s = 0; s < d.state_count(); ++s) {
    auto row = nlohmann::ordered_json::array();
    for (Letter a = 0; a < d.alphabet().size(); ++a) row.push_back(d.step(s, a));
    doc["delta"].push_back(std::move(row));
  }
  return doc.dump();
}

std::optional<Word> intersection_witness(const Dfa& a, const Dfa& b) {
  if (!(a.alphabet() == b.alphabet())) throw AlphabetMismatch("product of DFAs over different alphabets");
  const std::size_t k = a.alphabet().size();
  const std::size_t nb = b.state_count();
  auto pair_id = [nb](State p, State q) { return static_cast<std::size_t>(p) * nb + q; };
  std::vector<std::int64_t> parent(a.state_count() * nb, -2);
  std::vector<Letter> via(a.state_count() * nb, 0);
  std::deque<std::size_t> queue{pair_id(a.start(), b.start())};
  parent[queue.front()] = -1;
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    State p = static_cast<State>(cur / nb);
    State q = static_cast<State>(cur % nb);
    if (a.accepting(p) && b.accepting(q)) {
      std::vector<Letter> letters;
      for (std::size_t at = cur; parent[at] >= 0; at = static_cast<std::size_t>(parent[at]))
        letters.push_back(via[at]);
      std::reverse(letters.begin(), letters.end());
      return Word(a.alphabet(), std::move(letters));
    }
    for (Letter l = 0; l < k; ++l) {
      std::size_t nxt = pair_id(a.step(p, l), b.step(q, l));
      if (parent[nxt] == -2) {
        parent[nxt] = static_cast<std::int64_t>(cur);
        via[nxt] = l;
        queue.push_back(nxt);
      }
    }
  }
  return std::nullopt;
}

}  // namespace rankprof
