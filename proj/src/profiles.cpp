#include "rankprof/profiles.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "rankprof/errors.hpp"

namespace rankprof {

std::string to_string(Classification c) {
  return c == Classification::kBoundedStarFree ? "bounded-starfree" : "logarithmic-nonaperiodic";
}

std::string to_string(GlobalRankStatus s) {
  switch (s) {
    case GlobalRankStatus::kNotAttempted:
      return "not-attempted";
    case GlobalRankStatus::kFound:
      return "found";
    case GlobalRankStatus::kAboveLimit:
      return "above-limit";
    case GlobalRankStatus::kSkipped:
      return "skipped";
  }
  return "unknown";
}

bool ProfileReport::any_skipped() const {
  return std::any_of(rows.begin(), rows.end(), [](const ProfileRow& r) { return r.skipped; }) ||
         global_rank_status == GlobalRankStatus::kSkipped;
}

std::size_t universal_upper_bound(std::size_t n) { return ceil_log2(std::max<std::size_t>(n, 1)) + 4; }

Profiler::Profiler(ProfileOptions options)
    : options_(options), engine_(TypeEngine::Options{options.type_budget}) {}

const std::vector<Word>& Profiler::ball(const Alphabet& alphabet, std::size_t n) {
  auto key = std::make_pair(alphabet.symbols(), n);
  auto it = balls_.find(key);
  if (it == balls_.end()) it = balls_.emplace(key, enumerate_ball(alphabet, n, options_.ball_cap)).first;
  return it->second;
}

std::vector<TypeId> Profiler::ball_types(const Alphabet& alphabet, std::size_t n, std::size_t q) {
  auto key = std::make_tuple(alphabet.symbols(), n, q);
  if (auto it = typed_.find(key); it != typed_.end()) return it->second;
  const auto& words = ball(alphabet, n);
  std::vector<TypeId> types;
  if (alphabet.size() == 1) {
    types.reserve(words.size());
    for (const auto& w : words) types.push_back(engine_.rank_type_unary(w.size(), q, alphabet.symbol(0)));
  } else if (options_.parallel) {
    types = rankprof::ball_types(engine_, words, q);
  } else {
    types = ball_types_serial(engine_, words, q);
  }
  typed_.emplace(key, types);
  return types;
}

namespace {

// First class (in order of first occurrence over the ball) holding words of
// both kinds, reported as (first word of kind A, first word of kind B).
std::optional<WordPair> first_mixed_class(const std::vector<Word>& words, const std::vector<TypeId>& types,
                                          const std::vector<int>& side) {
  struct Seen {
    std::optional<std::size_t> a, b;
    std::size_t first;
  };
  std::unordered_map<std::uint32_t, Seen> classes;
  std::optional<std::size_t> best_first;
  std::optional<WordPair> best;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (side[i] < 0) continue;
    auto [it, inserted] = classes.try_emplace(types[i].value, Seen{std::nullopt, std::nullopt, i});
    Seen& s = it->second;
    auto& slot = side[i] == 0 ? s.a : s.b;
    if (!slot) slot = i;
    if (s.a && s.b && (!best_first || s.first < *best_first)) {
      best_first = s.first;
      best = WordPair{words[*s.a], words[*s.b]};
    }
  }
  return best;
}

}  // namespace

RhoResult Profiler::rho(const Language& l, std::size_t n) {
  const auto& words = ball(l.alphabet(), n);
  std::vector<int> side(words.size());
  bool any_in = false, any_out = false;
  for (std::size_t i = 0; i < words.size(); ++i) {
    bool in = l.contains(words[i]);
    side[i] = in ? 0 : 1;
    (in ? any_in : any_out) = true;
  }
  if (!any_in || !any_out) return {0, std::nullopt};

  // All words are rank-0 equivalent, so the rank-0 mixed pair is the first
  // member and the first nonmember.
  std::optional<WordPair> previous = first_mixed_class(words, std::vector<TypeId>(words.size()), side);
  const std::size_t limit = universal_upper_bound(n);
  for (std::size_t q = 1; q <= limit; ++q) {
    auto mixed = first_mixed_class(words, ball_types(l.alphabet(), n, q), side);
    if (!mixed) return {q, previous};
    previous = std::move(mixed);
  }
  throw InternalError("rank profile of " + l.description() + " at n=" + std::to_string(n) +
                      " exceeds the universal bound " + std::to_string(limit));
}

DefectSet Profiler::defect_set(const Language& l, std::size_t q, std::size_t n) {
  const auto& words = ball(l.alphabet(), n);
  const FiniteMonoid& m = l.monoid();
  std::vector<TypeId> types = q == 0 ? std::vector<TypeId>(words.size()) : ball_types(l.alphabet(), n, q);

  // Per class: first exhibited word for every syntactic element it meets.
  std::map<std::uint32_t, std::map<Element, std::size_t>> fibers;
  std::vector<std::uint32_t> class_order;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto [it, inserted] = fibers.try_emplace(types[i].value);
    if (inserted) class_order.push_back(types[i].value);
    it->second.try_emplace(m.image(words[i]), i);
  }
  DefectSet out{q, n, {}};
  std::set<std::pair<Element, Element>> seen;
  for (auto cls : class_order) {
    const auto& fiber = fibers[cls];
    for (const auto& [acc, wi] : fiber) {
      if (!m.is_accepting(acc)) continue;
      for (const auto& [rej, wj] : fiber) {
        if (m.is_accepting(rej)) continue;
        if (seen.emplace(acc, rej).second) out.pairs.push_back({acc, rej, words[wi], words[wj]});
      }
    }
  }
  return out;
}

std::size_t Profiler::rho_via_defect(const Language& l, std::size_t n) {
  const std::size_t limit = universal_upper_bound(n);
  for (std::size_t q = 0; q <= limit; ++q)
    if (defect_set(l, q, n).empty()) return q;
  throw InternalError("defect sets of " + l.description() + " at n=" + std::to_string(n) +
                      " stay nonempty past the universal bound");
}

SigmaResult Profiler::sigma(const Language& k_in, const Language& h_in, std::size_t n) {
  Alphabet alphabet = Alphabet::merged(k_in.alphabet(), h_in.alphabet());
  Language k = k_in.over(alphabet);
  Language h = h_in.over(alphabet);
  const auto& words = ball(alphabet, n);
  std::vector<int> side(words.size(), -1);
  bool any_k = false, any_h = false;
  for (std::size_t i = 0; i < words.size(); ++i) {
    bool in_k = k.contains(words[i]);
    bool in_h = h.contains(words[i]);
    if (in_k && in_h)
      throw NotDisjoint("languages are not disjoint: both contain " + words[i].str(), words[i].str());
    if (in_k) side[i] = 0, any_k = true;
    if (in_h) side[i] = 1, any_h = true;
  }
  SigmaResult out;
  out.global_common_word = intersection_witness(k.dfa(), h.dfa());
  out.globally_disjoint = !out.global_common_word.has_value();
  if (!any_k || !any_h) return out;

  std::optional<WordPair> previous = first_mixed_class(words, std::vector<TypeId>(words.size()), side);
  const std::size_t limit = universal_upper_bound(n);
  for (std::size_t q = 1; q <= limit; ++q) {
    auto mixed = first_mixed_class(words, ball_types(alphabet, n, q), side);
    if (!mixed) {
      out.value = q;
      out.witness = std::move(previous);
      return out;
    }
    previous = std::move(mixed);
  }
  throw InternalError("separator profile exceeds the universal bound at n=" + std::to_string(n));
}

std::optional<std::size_t> Profiler::min_global_rank(const Language& l, std::size_t q_max) {
  const FiniteMonoid& m = l.monoid();
  const Alphabet& alphabet = l.alphabet();
  for (std::size_t q = 0; q <= q_max; ++q) {
    // Reachable pairs (rank-q type, syntactic element) under appending letters.
    // Since rank-q equivalence is a congruence, l is a union of rank-q classes
    // exactly when every type meets a single syntactic element: two distinct
    // elements have a separating context, and that context keeps the two
    // words rank-q equivalent. So the search stops at the first type seen
    // with a second element, and otherwise visits each type once.
    struct TypeInfo {
      Word representative;
      Element element;
    };
    std::unordered_map<std::uint32_t, TypeInfo> infos;
    std::deque<Word> queue;
    bool conflict = false;

    auto visit = [&](const Word& w) {
      TypeId t = engine_.rank_type(w, q);
      Element e = m.image(w);
      auto [it, inserted] = infos.try_emplace(t.value, TypeInfo{w, e});
      if (!inserted) {
        if (it->second.element != e) {
          conflict = true;
          return;
        }
        // Right multiplication must not depend on the representative.
        for (Letter a = 0; a < alphabet.size(); ++a) {
          Word one(alphabet, {a});
          if (engine_.rank_type(concat(w, one), q) != engine_.rank_type(concat(it->second.representative, one), q))
            throw InternalError("rank-" + std::to_string(q) + " types of " + w.str() + " and " +
                                it->second.representative.str() + " disagree after appending a letter");
        }
        return;
      }
      if (infos.size() > options_.product_cap)
        throw HorizonTooLarge("global rank search at q=" + std::to_string(q) + " exceeds " +
                              std::to_string(options_.product_cap) + " types");
      queue.push_back(w);
    };

    visit(Word(alphabet));
    while (!queue.empty() && !conflict) {
      Word w = std::move(queue.front());
      queue.pop_front();
      for (Letter a = 0; a < alphabet.size() && !conflict; ++a) visit(concat(w, Word(alphabet, {a})));
    }
    if (!conflict) return q;
  }
  return std::nullopt;
}

ProfileReport Profiler::classify(const Language& l, const ClassifyOptions& options) {
  ProfileReport report;
  report.language = l.description();
  report.alphabet = l.alphabet().symbols();
  const FiniteMonoid& m = l.monoid();
  report.monoid_size = m.size();

  std::vector<CycleWitness> witnesses = all_cycle_witnesses(m);
  report.witness_count = witnesses.size();
  if (witnesses.empty()) {
    report.classification = Classification::kBoundedStarFree;
    report.global_rank_limit = options.q_max ? options.q_max : (l.alphabet().size() == 1 ? 6 : 3);
    try {
      report.global_rank = min_global_rank(l, report.global_rank_limit);
      report.global_rank_status = report.global_rank ? GlobalRankStatus::kFound : GlobalRankStatus::kAboveLimit;
    } catch (const CostCapExceeded&) {
      report.global_rank_status = GlobalRankStatus::kSkipped;
    } catch (const HorizonTooLarge&) {
      report.global_rank_status = GlobalRankStatus::kSkipped;
    }
  } else {
    report.classification = Classification::kLogarithmicNonaperiodic;
    report.witness = witnesses.front();
    report.first_defined_horizon = witnesses.front().first_defined_horizon();
  }

  std::optional<std::size_t> last_exact;
  for (std::size_t n = options.min_n; n <= options.max_n; ++n) {
    ProfileRow row;
    row.n = n;
    row.upper = universal_upper_bound(n);
    for (const auto& w : witnesses)
      if (auto b = lower_bound_B(w, n)) row.lower = std::max(row.lower.value_or(0), *b);
    try {
      RhoResult r = rho(l, n);
      row.exact = r.value;
      row.witness = std::move(r.witness);
    } catch (const CostCapExceeded& e) {
      row.skipped = true;
      row.skip_reason = e.what();
    } catch (const HorizonTooLarge& e) {
      row.skipped = true;
      row.skip_reason = e.what();
    }
    if (row.exact) {
      bool ok = *row.exact <= row.upper && (!row.lower || *row.lower <= *row.exact) &&
                (!last_exact || *last_exact <= *row.exact);
      if (!ok) report.violations.push_back(n);
      last_exact = row.exact;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace rankprof
