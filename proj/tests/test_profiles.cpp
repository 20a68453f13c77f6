#include <gtest/gtest.h>

#include "rankprof/errors.hpp"
#include "rankprof/profiles.hpp"
#include "rankprof/report_io.hpp"

using namespace rankprof;

namespace {

const std::vector<const char*> kBinary = {"regex:a*b*", "regex:(ab)*", "regex:(a|b)*a(a|b)*", "regex:(b*ab*a)*b*",
                                          "regex:(a|b)*ab", "regex:a(a|b)*b"};
const std::vector<const char*> kUnary = {"builtin:even", "builtin:mod:3:{0,2}", "builtin:threshold:3",
                                         "builtin:exact:aa,aaaaa", "regex:@empty"};

std::size_t horizon_for(const Language& l) { return l.alphabet().size() == 1 ? 16 : 7; }

// rho computed pairwise from rank distances, as an independent oracle.
std::size_t rho_by_pairs(TypeEngine& engine, const Language& l, std::size_t n) {
  std::size_t best = 0;
  auto ball = enumerate_ball(l.alphabet(), n);
  for (const auto& u : ball)
    if (l.contains(u))
      for (const auto& v : ball)
        if (!l.contains(v)) best = std::max(best, rank_distance(engine, u, v).value);
  return best;
}

}  // namespace

TEST(Rho, Examples) {
  Profiler profiler;
  Language empty = language_from_spec("regex:@empty");
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(profiler.rho(empty, n).value, 0u);
  Language even = builtin_even();
  RhoResult r1 = profiler.rho(even, 1);
  EXPECT_EQ(r1.value, 1u);
  ASSERT_TRUE(r1.witness);
  EXPECT_EQ(r1.witness->first.str(), "@eps");
  EXPECT_EQ(r1.witness->second.str(), "a");
  EXPECT_EQ(profiler.rho(even, 2).value, 2u);
  for (std::size_t n = 2; n <= 16; ++n) {
    std::size_t v = profiler.rho(even, n).value;
    EXPECT_GE(v, floor_log2(n - 1) + 1);
    EXPECT_LE(v, universal_upper_bound(n));
  }
}

TEST(Rho, WitnessPairRealizesValue) {
  Profiler profiler;
  for (const char* spec : kBinary) {
    Language l = language_from_spec(spec);
    for (std::size_t n = 1; n <= 6; ++n) {
      RhoResult r = profiler.rho(l, n);
      if (r.value == 0) {
        EXPECT_FALSE(r.witness);
        continue;
      }
      ASSERT_TRUE(r.witness);
      EXPECT_TRUE(l.contains(r.witness->first));
      EXPECT_FALSE(l.contains(r.witness->second));
      EXPECT_EQ(rank_distance(profiler.engine(), r.witness->first, r.witness->second).value, r.value);
    }
  }
}

TEST(Rho, MatchesPairwiseRankDistance) {
  Profiler profiler;
  for (const char* spec : kBinary) {
    Language l = language_from_spec(spec);
    for (std::size_t n = 1; n <= 4; ++n) ASSERT_EQ(profiler.rho(l, n).value, rho_by_pairs(profiler.engine(), l, n)) << spec;
  }
}

TEST(Rho, RouteEqualityMonotonicityComplement) {
  Profiler profiler;
  std::vector<const char*> all = kBinary;
  all.insert(all.end(), kUnary.begin(), kUnary.end());
  for (const char* spec : all) {
    Language l = language_from_spec(spec);
    Language c = l.complement();
    std::size_t last = 0;
    for (std::size_t n = 1; n <= horizon_for(l); ++n) {
      std::size_t v = profiler.rho(l, n).value;
      ASSERT_EQ(profiler.rho_via_defect(l, n), v) << spec << " n=" << n;
      ASSERT_EQ(profiler.rho(c, n).value, v) << spec << " n=" << n;
      ASSERT_LE(v, universal_upper_bound(n));
      ASSERT_GE(v, last);
      last = v;
    }
  }
}

TEST(Rho, ParallelAndSerialAgree) {
  Profiler par({.parallel = true});
  Profiler ser({.parallel = false});
  for (const char* spec : kBinary) {
    Language l = language_from_spec(spec);
    for (std::size_t n = 1; n <= 6; ++n) {
      RhoResult a = par.rho(l, n), b = ser.rho(l, n);
      ASSERT_EQ(a.value, b.value);
      ASSERT_EQ(a.witness.has_value(), b.witness.has_value());
      if (a.witness) ASSERT_EQ(a.witness->first.str() + a.witness->second.str(), b.witness->first.str() + b.witness->second.str());
    }
  }
}

TEST(Rho, CapsAreReported) {
  Profiler small({.ball_cap = 100});
  EXPECT_THROW(small.rho(language_from_spec("regex:a*b*"), 8), HorizonTooLarge);
  Profiler poor({.type_budget = 10});
  EXPECT_THROW(poor.rho(language_from_spec("regex:(ab)*"), 6), CostCapExceeded);
}

TEST(Defect, Examples) {
  Profiler profiler;
  Language even = builtin_even();
  DefectSet d = profiler.defect_set(even, 1, 2);
  ASSERT_FALSE(d.empty());
  bool found = false;
  for (const auto& e : d.pairs) found |= e.member.str() == "aa" && e.nonmember.str() == "a";
  EXPECT_TRUE(found);
  EXPECT_TRUE(profiler.defect_set(even, 5, 2).empty());
  Language all = language_from_spec("regex:(a|b)*");
  for (std::size_t q = 0; q <= 3; ++q) EXPECT_TRUE(profiler.defect_set(all, q, 4).empty());
  EXPECT_EQ(profiler.rho_via_defect(all, 5), 0u);
  EXPECT_EQ(profiler.rho_via_defect(even, 2), 2u);
}

TEST(Defect, EntriesAreSound) {
  Profiler profiler;
  Language l = language_from_spec("regex:(b*ab*a)*b*");
  const FiniteMonoid& m = l.monoid();
  for (std::size_t q = 0; q <= 3; ++q) {
    DefectSet d = profiler.defect_set(l, q, 5);
    for (const auto& e : d.pairs) {
      ASSERT_LE(e.member.size(), 5u);
      ASSERT_LE(e.nonmember.size(), 5u);
      ASSERT_EQ(m.image(e.member), e.accepting);
      ASSERT_EQ(m.image(e.nonmember), e.rejecting);
      ASSERT_TRUE(m.is_accepting(e.accepting));
      ASSERT_FALSE(m.is_accepting(e.rejecting));
      ASSERT_TRUE(profiler.engine().equivalent(e.member, e.nonmember, q));
    }
  }
}

TEST(Sigma, Examples) {
  Profiler profiler;
  Language even = language_from_spec("regex:(aa)*");
  Language odd = language_from_spec("regex:a(aa)*");
  for (std::size_t n = 1; n <= 16; ++n) ASSERT_EQ(profiler.sigma(even, odd, n).value, profiler.rho(even, n).value);
  Language empty = language_from_spec("regex:@empty");
  EXPECT_EQ(profiler.sigma(empty, odd, 5).value, 0u);
  Language a = language_from_spec("regex:a");
  Language b = language_from_spec("regex:b");
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(profiler.sigma(a, b, n).value, 1u);
}

TEST(Sigma, NotDisjointNamesCommonWord) {
  Profiler profiler;
  try {
    profiler.sigma(language_from_spec("regex:a*"), language_from_spec("regex:aa*"), 3);
    FAIL();
  } catch (const NotDisjoint& e) {
    EXPECT_EQ(e.common_word(), "a");
  }
  // Disjoint on the ball but not globally: allowed, reported as metadata.
  SigmaResult s = profiler.sigma(language_from_spec("regex:a"), language_from_spec("builtin:exact:aaaaaaa,a"), 0);
  EXPECT_FALSE(s.globally_disjoint);
  ASSERT_TRUE(s.global_common_word);
  EXPECT_EQ(s.global_common_word->str(), "a");
}

TEST(Sigma, BoundedAndMonotone) {
  Profiler profiler;
  Language k = language_from_spec("regex:a*b*");
  Language h = language_from_spec("regex:(a|b)*ba(a|b)*");
  std::size_t last = 0;
  for (std::size_t n = 1; n <= 7; ++n) {
    std::size_t v = profiler.sigma(k, h, n).value;
    EXPECT_LE(v, universal_upper_bound(n));
    EXPECT_GE(v, last);
    last = v;
  }
}

TEST(GlobalRank, Examples) {
  Profiler profiler;
  EXPECT_EQ(profiler.min_global_rank(language_from_spec("regex:(a|b)*"), 3), std::optional<std::size_t>(0));
  EXPECT_EQ(profiler.min_global_rank(language_from_spec("regex:a*b*"), 3), std::optional<std::size_t>(2));
  EXPECT_EQ(profiler.min_global_rank(builtin_even(), 6), std::nullopt);
  // Unary thresholds: q* is at most ceil(log2 t) + 4.
  for (std::size_t t = 1; t <= 4; ++t) {
    auto q = profiler.min_global_rank(builtin_threshold(t), 6);
    ASSERT_TRUE(q);
    EXPECT_LE(*q, ceil_log2(t) + 4);
  }
}

TEST(GlobalRank, EqualsLimitOfProfile) {
  Profiler profiler;
  for (const char* spec : {"regex:a*b*", "regex:(a|b)*a(a|b)*", "regex:(a|b)*ab", "builtin:threshold:3"}) {
    Language l = language_from_spec(spec);
    auto q = profiler.min_global_rank(l, l.alphabet().size() == 1 ? 6 : 3);
    ASSERT_TRUE(q) << spec;
    std::size_t top = 0;
    for (std::size_t n = 0; n <= horizon_for(l); ++n) {
      std::size_t v = profiler.rho(l, n).value;
      ASSERT_LE(v, *q) << spec;
      top = std::max(top, v);
    }
    EXPECT_EQ(top, *q) << spec;
  }
}

// Rank-3 types over two letters number in the millions, so a language whose
// global rank is 3 cannot be certified by enumeration; the cap must say so.
TEST(GlobalRank, CapIsReported) {
  Profiler profiler({.product_cap = 20'000});
  EXPECT_THROW(profiler.min_global_rank(language_from_spec("regex:(ab)*"), 3), HorizonTooLarge);
  ProfileReport r = profiler.classify(language_from_spec("regex:(ab)*"), {2, 4, 0});
  EXPECT_EQ(r.global_rank_status, GlobalRankStatus::kSkipped);
  EXPECT_TRUE(r.any_skipped());
}

TEST(Classify, Examples) {
  Profiler profiler;
  ProfileReport even = profiler.classify(language_from_spec("regex:(aa)*"), {2, 16, 0});
  EXPECT_EQ(even.classification, Classification::kLogarithmicNonaperiodic);
  ASSERT_TRUE(even.witness);
  EXPECT_EQ(even.first_defined_horizon, std::optional<std::size_t>(2));
  EXPECT_EQ(even.rows.size(), 15u);
  EXPECT_TRUE(even.violations.empty());
  for (const auto& row : even.rows) {
    ASSERT_TRUE(row.exact && row.lower);
    EXPECT_LE(*row.lower, *row.exact);
    EXPECT_LE(*row.exact, row.upper);
  }
  ProfileReport ab = profiler.classify(language_from_spec("regex:a*b*"), {2, 6, 0});
  EXPECT_EQ(ab.classification, Classification::kBoundedStarFree);
  EXPECT_EQ(ab.global_rank_status, GlobalRankStatus::kFound);
  EXPECT_EQ(ab.global_rank, std::optional<std::size_t>(2));
  ProfileReport t3 = profiler.classify(builtin_threshold(3), {2, 16, 0});
  EXPECT_EQ(t3.classification, Classification::kBoundedStarFree);
  ASSERT_TRUE(t3.global_rank);
  EXPECT_LE(*t3.global_rank, 6u);
}

TEST(Classify, SkippedRowsKeepBounds) {
  Profiler profiler({.ball_cap = 1000});
  ProfileReport r = profiler.classify(language_from_spec("regex:(b*ab*a)*b*"), {2, 12, 0});
  ASSERT_TRUE(r.any_skipped());
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.upper, universal_upper_bound(row.n));
    if (row.skipped) {
      EXPECT_FALSE(row.exact);
      EXPECT_FALSE(row.skip_reason.empty());
      EXPECT_TRUE(row.lower);
    }
  }
}

TEST(Report, JsonAndCsvShapes) {
  Profiler profiler;
  ProfileReport r = profiler.classify(language_from_spec("regex:(aa)*"), {2, 4, 0});
  Json j = to_json(r);
  EXPECT_EQ(j["schema"], "rankprof.profile/1");
  EXPECT_EQ(j["classification"], "logarithmic-nonaperiodic");
  EXPECT_EQ(j["rows"].size(), 3u);
  EXPECT_EQ(to_plot(r), "n,exact,lower,upper\n2,2,1,5\n3,2,2,6\n4,3,2,6\n");
  EXPECT_EQ(to_csv(r).substr(0, to_csv(r).find('\n')), "n,exact,upper,lower,member,nonmember");
}

TEST(Report, CertifyBounds) {
  Profiler profiler;
  VerifyTable t = certify_bounds(profiler, builtin_even(), {2, 16, 0});
  EXPECT_TRUE(t.all_ok());
  EXPECT_FALSE(t.any_skipped());
  for (const auto& row : t.rows) EXPECT_EQ(row.via_defect, row.exact);
}
