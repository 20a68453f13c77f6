#include <algorithm>

#include "rankprof/errors.hpp"
#include "rankprof/formula.hpp"

namespace rankprof {

namespace {

class Synthesizer {
 public:
  Var fresh() { return next_++; }

  Formula first(Var x) {
    Var y = fresh();
    return Formula::negation(Formula::exists(y, Formula::less(y, x)));
  }

  Formula last(Var x) {
    Var y = fresh();
    return Formula::negation(Formula::exists(y, Formula::less(x, y)));
  }

  Formula succ(Var x, Var y) {
    Var z = fresh();
    return Formula::conjunction(
        {Formula::less(x, y),
         Formula::negation(Formula::exists(z, Formula::conjunction({Formula::less(x, z), Formula::less(z, y)})))});
  }

  // Midpoint recursion: y is d successor steps right of x.
  Formula dist(std::size_t d, Var x, Var y) {
    if (d == 0) return Formula::equal(x, y);
    if (d == 1) return succ(x, y);
    Var z = fresh();
    Formula left = dist(d / 2, x, z);
    Formula right = dist(d - d / 2, z, y);
    return Formula::exists(z, Formula::conjunction({std::move(left), std::move(right)}));
  }

  Formula empty_domain() {
    Var x = fresh();
    return Formula::negation(Formula::exists(x, Formula::equal(x, x)));
  }

  Formula length(std::size_t m) {
    if (m == 0) return empty_domain();
    Var f = fresh();
    Var l = fresh();
    std::vector<Formula> parts;
    parts.push_back(first(f));
    parts.push_back(last(l));
    parts.push_back(dist(m - 1, f, l));
    return Formula::exists(f, Formula::exists(l, Formula::conjunction(std::move(parts))));
  }

  Formula exact_word(const Word& w) {
    if (w.empty()) return empty_domain();
    Var f = fresh();
    Var l = fresh();
    std::vector<Formula> parts;
    parts.push_back(first(f));
    parts.push_back(last(l));
    parts.push_back(dist(w.size() - 1, f, l));
    for (std::size_t i = 0; i < w.size(); ++i) {
      Var x = fresh();
      parts.push_back(Formula::exists(
          x, Formula::conjunction({dist(i, f, x), Formula::letter(w.alphabet().symbol(w[i]), x)})));
    }
    return Formula::exists(f, Formula::exists(l, Formula::conjunction(std::move(parts))));
  }

 private:
  Var next_ = 0;
};

}  // namespace

Formula synth_dist(std::size_t d) {
  Synthesizer s;
  Var x = s.fresh();
  Var y = s.fresh();
  return s.dist(d, x, y);
}

Formula synth_length(std::size_t m) { return Synthesizer().length(m); }

Formula synth_exact_word(const Word& w) { return Synthesizer().exact_word(w); }

Formula synth_horizon_classifier(std::vector<Word> members, std::size_t n) {
  std::sort(members.begin(), members.end(), ShortlexLess{});
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (const auto& w : members)
    if (w.size() > n)
      throw Error("classifier member " + w.str() + " is longer than horizon " + std::to_string(n));
  if (members.empty()) return Formula::falsity();
  Synthesizer s;
  if (members.size() == 1) return s.exact_word(members.front());
  std::vector<Formula> disjuncts;
  disjuncts.reserve(members.size());
  for (const auto& w : members) disjuncts.push_back(s.exact_word(w));
  return Formula::disjunction(std::move(disjuncts));
}

}  // namespace rankprof
