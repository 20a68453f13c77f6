#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "rankprof/automata.hpp"
#include "rankprof/errors.hpp"
#include "rankprof/language.hpp"
#include "rankprof/monoid.hpp"

using namespace rankprof;

namespace {

const std::vector<const char*> kPatterns = {
    "(aa)*",       "a*b*",          "(ab)*",       "(a|b)*a(a|b)*", "(b*ab*a)*b*", "a(a|b)*b",
    "(a|b)*abb",   "((a|b)(a|b))*", "a*|b*",        "(ab|ba)*",      "b*(ab*ab*)*", "@eps",
    "@empty",      "a(b|@eps)a",    "(aab)*(ba)*", "(a*b)*",        "aaa*",        "(aaa)*(b|@eps)",
};

bool nerode_distinct(const Dfa& d, State p, State q) {
  // Plain pair-table refinement, independent of the minimizer.
  std::size_t n = d.state_count(), k = d.alphabet().size();
  std::vector<bool> marked(n * n, false);
  for (State x = 0; x < n; ++x)
    for (State y = 0; y < n; ++y) marked[x * n + y] = d.accepting(x) != d.accepting(y);
  for (bool changed = true; changed;) {
    changed = false;
    for (State x = 0; x < n; ++x)
      for (State y = 0; y < n; ++y) {
        if (marked[x * n + y]) continue;
        for (Letter a = 0; a < k; ++a)
          if (marked[d.step(x, a) * n + d.step(y, a)]) {
            marked[x * n + y] = true;
            changed = true;
            break;
          }
      }
  }
  return marked[p * n + q];
}

}  // namespace

TEST(Regex, ExampleStateCounts) {
  EXPECT_EQ(parse_regex("(aa)*").state_count(), 2u);
  EXPECT_EQ(parse_regex("a*b*").state_count(), 3u);
  Dfa empty = parse_regex("@empty");
  EXPECT_EQ(empty.state_count(), 1u);
  EXPECT_FALSE(empty.accepts(Word::parse(empty.alphabet(), "")));
}

TEST(Regex, EvenMembership) {
  Dfa d = parse_regex("(aa)*");
  for (std::size_t m = 0; m <= 20; ++m) EXPECT_EQ(d.accepts(power(Word::parse(d.alphabet(), "a"), m)), m % 2 == 0);
}

TEST(Regex, MembershipExamples) {
  Dfa even = parse_regex("(aa)*");
  EXPECT_TRUE(membership(even, Word::parse(even.alphabet(), "")));
  EXPECT_FALSE(membership(even, Word::parse(even.alphabet(), "aaa")));
  Dfa ab = parse_regex("a*b*");
  EXPECT_FALSE(membership(ab, Word::parse(ab.alphabet(), "ba")));
  EXPECT_THROW(membership(ab, Word::parse(Alphabet("abc"), "a")), AlphabetMismatch);
}

TEST(Regex, AgreesWithBacktrackingMatcher) {
  for (const char* pattern : kPatterns) {
    Dfa d = parse_regex(pattern, Alphabet("ab"));
    for (const auto& w : enumerate_ball(d.alphabet(), 6))
      ASSERT_EQ(d.accepts(w), regex_matches_naive(pattern, w.empty() ? "" : w.str())) << pattern << " on " << w.str();
  }
}

TEST(Regex, SyntaxErrorsCarryPosition) {
  for (auto [pattern, pos] : std::vector<std::pair<const char*, std::size_t>>{{"(ab", 3}, {"a)", 1}, {"*a", 0}, {"a|", 2}, {"@foo", 0}}) {
    try {
      parse_regex(pattern);
      FAIL() << pattern;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.position(), pos) << pattern;
    }
  }
}

TEST(Dfa, MinimizedHasNoEquivalentStates) {
  for (const char* pattern : kPatterns) {
    Dfa d = parse_regex(pattern, Alphabet("ab"));
    EXPECT_TRUE(d.is_minimal()) << pattern;
    for (State p = 0; p < d.state_count(); ++p)
      for (State q = p + 1; q < d.state_count(); ++q) ASSERT_TRUE(nerode_distinct(d, p, q)) << pattern;
  }
}

TEST(Dfa, JsonRoundTrip) {
  Dfa d = parse_regex("(b*ab*a)*b*");
  Dfa back = read_dfa_json(write_dfa_json(d));
  EXPECT_EQ(back.delta(), d.delta());
  EXPECT_EQ(back.accepting_states(), d.accepting_states());
  Dfa flat = read_dfa_json(R"({"alphabet":["a"],"states":2,"start":0,"accept":[0],"delta":[1,0]})");
  EXPECT_EQ(flat.state_count(), 2u);
  EXPECT_THROW(read_dfa_json(R"({"alphabet":["a"],"states":2,"start":0,"accept":[0],"delta":[[1]]})"), Error);
  EXPECT_THROW(read_dfa_json(R"({"alphabet":["a"],"states":1,"start":0,"accept":[],"delta":[[3]]})"), Error);
}

TEST(Dfa, ComplementAndWidening) {
  Dfa d = parse_regex("(aa)*");
  Dfa wide = d.over(Alphabet("ab"));
  for (const auto& w : enumerate_ball(wide.alphabet(), 5)) {
    bool expected = w.str().find('b') == std::string::npos && (w.empty() || w.size() % 2 == 0);
    ASSERT_EQ(wide.accepts(w), expected) << w.str();
    ASSERT_NE(wide.complement().accepts(w), expected);
  }
}

TEST(Dfa, IntersectionWitnessIsShortlexLeast) {
  Alphabet ab("ab");
  auto w = intersection_witness(parse_regex("(a|b)*b", ab), parse_regex("a(a|b)*", ab));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->str(), "ab");
  EXPECT_FALSE(intersection_witness(parse_regex("(aa)*"), parse_regex("a(aa)*")));
}

TEST(Monoid, Examples) {
  FiniteMonoid even = transition_monoid(parse_regex("(aa)*"));
  EXPECT_EQ(even.size(), 2u);
  EXPECT_EQ(eventual_cycle(even, 1).period, 2u);
  EXPECT_FALSE(is_aperiodic(even));
  EXPECT_TRUE(is_aperiodic(transition_monoid(parse_regex("a*b*"))));
  FiniteMonoid trivial = transition_monoid(parse_regex("(a|b)*"));
  EXPECT_EQ(trivial.size(), 1u);
  EXPECT_TRUE(is_aperiodic(trivial));
  EXPECT_THROW(transition_monoid(parse_regex("(a|b)*a(a|b)(a|b)(a|b)(a|b)(a|b)"), 10), HorizonTooLarge);
}

TEST(Monoid, StructureInvariants) {
  for (const char* pattern : kPatterns) {
    Dfa d = parse_regex(pattern, Alphabet("ab"));
    FiniteMonoid m = transition_monoid(d);
    ASSERT_TRUE(m.witness(m.identity()).empty());
    for (Element e = 0; e < m.size(); ++e) {
      ASSERT_EQ(m.image(m.witness(e)), e);
      ASSERT_EQ(m.is_accepting(e), d.accepts(m.witness(e)));
      if (e > 0) ASSERT_TRUE(shortlex_less(m.witness(e - 1), m.witness(e)));
      for (Element f = 0; f < m.size(); ++f) {
        Element ef = m.multiply(e, f);
        ASSERT_LT(ef, m.size());
        ASSERT_EQ(m.image(concat(m.witness(e), m.witness(f))), ef);
      }
    }
    // Shortlex-least witness: no shorter word reaches the element.
    for (const auto& w : enumerate_ball(d.alphabet(), 5)) ASSERT_FALSE(shortlex_less(w, m.witness(m.image(w))));
  }
}

TEST(Monoid, SyntacticSeparation) {
  for (const char* pattern : kPatterns) {
    FiniteMonoid m = transition_monoid(parse_regex(pattern, Alphabet("ab")));
    if (m.size() > 24) continue;
    for (Element e = 0; e < m.size(); ++e)
      for (Element f = e + 1; f < m.size(); ++f) {
        bool separated = false;
        for (Element l = 0; l < m.size() && !separated; ++l)
          for (Element r = 0; r < m.size() && !separated; ++r)
            separated = m.accepts_in_context(l, e, r) != m.accepts_in_context(l, f, r);
        ASSERT_TRUE(separated) << pattern << " " << m.witness(e).str() << " " << m.witness(f).str();
      }
  }
}

TEST(Monoid, AperiodicIffSomeNontrivialSubgroup) {
  for (const char* pattern : kPatterns) {
    FiniteMonoid m = transition_monoid(parse_regex(pattern, Alphabet("ab")));
    // Brute force: some a with a^k = a^{k+p} for p >= 2 minimal, found by direct power listing.
    bool periodic = false;
    for (Element a = 0; a < m.size() && !periodic; ++a) {
      std::vector<Element> seen{a};
      Element x = a;
      while (true) {
        x = m.multiply(x, a);
        auto it = std::find(seen.begin(), seen.end(), x);
        if (it != seen.end()) {
          periodic = seen.end() - it >= 2;
          break;
        }
        seen.push_back(x);
      }
    }
    EXPECT_EQ(is_aperiodic(m), !periodic) << pattern;
  }
}

TEST(Monoid, EventualCycleIsMinimal) {
  FiniteMonoid m = transition_monoid(parse_regex("(aab)*(ba)*", Alphabet("ab")));
  for (Element a = 0; a < m.size(); ++a) {
    EventualCycle c = eventual_cycle(m, a);
    ASSERT_GE(c.index, 1u);
    ASSERT_EQ(c.powers.size(), c.index + c.period - 1);
    auto pow = [&](std::size_t k) {
      Element x = a;
      for (std::size_t t = 1; t < k; ++t) x = m.multiply(x, a);
      return x;
    };
    ASSERT_EQ(pow(c.index + c.period), pow(c.index));
    for (std::size_t p = 1; p < c.period; ++p) ASSERT_NE(pow(c.index + p), pow(c.index));
    if (c.index > 1) ASSERT_NE(pow(c.index - 1 + c.period), pow(c.index - 1));
  }
}

TEST(Witness, EvenExample) {
  CycleWitness w = extract_cycle_witness(parse_regex("(aa)*"));
  EXPECT_TRUE(w.r.empty());
  EXPECT_TRUE(w.s.empty());
  EXPECT_EQ(w.x.str(), "a");
  EXPECT_EQ(w.h, 1u);
  EXPECT_EQ(w.p, 2u);
  EXPECT_EQ(std::set<std::size_t>({w.i, w.j}), (std::set<std::size_t>{0, 1}));
  EXPECT_EQ(w.context_length(), 0u);
  EXPECT_EQ(w.block_length(), 1u);
  EXPECT_EQ(w.first_defined_horizon(), 2u);
}

TEST(Witness, ParityOfAs) {
  Dfa d = parse_regex("(b*ab*a)*b*");
  CycleWitness w = extract_cycle_witness(d);
  EXPECT_EQ(w.p, 2u);
  EXPECT_EQ(w.x.str(), "a");
  EXPECT_TRUE(verify_cycle_witness(d, w, 4));
}

TEST(Witness, AperiodicHasNone) {
  EXPECT_THROW(extract_cycle_witness(parse_regex("a*b*")), NoWitness);
  EXPECT_TRUE(all_cycle_witnesses(transition_monoid(parse_regex("a*b*"))).empty());
}

TEST(Witness, ValidForEveryPeriodicElement) {
  for (const char* pattern : kPatterns) {
    Dfa d = parse_regex(pattern, Alphabet("ab"));
    for (const auto& w : all_cycle_witnesses(transition_monoid(d))) {
      ASSERT_FALSE(w.x.empty());
      ASSERT_GE(w.p, 2u);
      ASSERT_NE(w.i, w.j);
      ASSERT_TRUE(verify_cycle_witness(d, w, 2)) << pattern << " x=" << w.x.str();
      auto word = [&](std::size_t e) { return concat(concat(w.r, power(w.x, e)), w.s); };
      ASSERT_EQ(d.accepts(word(w.h + w.i)), w.i_accepted);
    }
  }
}

TEST(LowerBound, ParityWitness) {
  CycleWitness w = extract_cycle_witness(parse_regex("(aa)*"));
  EXPECT_EQ(lower_bound_B(w, 9), std::optional<std::size_t>(4));
  EXPECT_EQ(lower_bound_B(w, 2), std::optional<std::size_t>(1));
  EXPECT_EQ(lower_bound_B(w, 1), std::nullopt);
  EXPECT_EQ(lower_bound_B(w, 0), std::nullopt);
}

TEST(LowerBound, DefinedExactlyFromN0) {
  for (const char* pattern : kPatterns) {
    for (const auto& w : all_cycle_witnesses(transition_monoid(parse_regex(pattern, Alphabet("ab"))))) {
      std::size_t n0 = w.first_defined_horizon();
      ASSERT_TRUE(lower_bound_B(w, n0)) << pattern;
      if (n0 > 0) ASSERT_FALSE(lower_bound_B(w, n0 - 1)) << pattern;
      for (std::size_t n = n0; n < n0 + 40; ++n) ASSERT_LE(*lower_bound_B(w, n), *lower_bound_B(w, n + 1));
    }
  }
}

TEST(Language, Builtins) {
  Language even = builtin_even();
  EXPECT_EQ(even.description(), "builtin:even");
  Language mod = language_from_spec("builtin:mod:3:{0,2}");
  Language mod2 = language_from_spec("builtin:mod:3:0,2");
  for (std::size_t m = 0; m <= 12; ++m) {
    Word a = power(Word::parse(Alphabet("a"), "a"), m);
    EXPECT_EQ(even.contains(a), m % 2 == 0);
    EXPECT_EQ(mod.contains(a), m % 3 != 1);
    EXPECT_EQ(mod2.contains(a), mod.contains(a));
    EXPECT_EQ(language_from_spec("builtin:threshold:3").contains(a), m >= 3);
  }
  Language exact = language_from_spec("builtin:exact:ab,@eps,b");
  for (const auto& w : enumerate_ball(exact.alphabet(), 3))
    EXPECT_EQ(exact.contains(w), w.empty() || w.str() == "ab" || w.str() == "b") << w.str();
  EXPECT_THROW(language_from_spec("builtin:nope"), Error);
  EXPECT_THROW(language_from_spec("regex:(a"), ParseError);
  EXPECT_THROW(language_from_spec("file:/nonexistent/dfa.json"), Error);
  EXPECT_THROW(language_from_spec("a*"), Error);
}
