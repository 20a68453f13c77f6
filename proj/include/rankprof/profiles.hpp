#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rankprof/ef_types.hpp"
#include "rankprof/language.hpp"
#include "rankprof/monoid.hpp"

namespace rankprof {

/// (member, nonmember) pair; for separators (word of K, word of H).
using WordPair = std::pair<Word, Word>;

struct RhoResult {
  std::size_t value = 0;
  /// Pair realizing the maximal rank distance; absent when the value is 0.
  std::optional<WordPair> witness;
};

/// Accepting/rejecting syntactic elements realized by q-equivalent words on
/// the ball, each with one exhibited word pair.
struct DefectSet {
  std::size_t q = 0;
  std::size_t n = 0;
  struct Entry {
    Element accepting;
    Element rejecting;
    Word member;
    Word nonmember;
  };
  std::vector<Entry> pairs;
  bool empty() const noexcept { return pairs.empty(); }
};

struct SigmaResult {
  std::size_t value = 0;
  std::optional<WordPair> witness;
  /// Result of the product-automaton emptiness check on all of Sigma*.
  bool globally_disjoint = true;
  std::optional<Word> global_common_word;
};

enum class Classification { kBoundedStarFree, kLogarithmicNonaperiodic };
std::string to_string(Classification c);

struct ProfileRow {
  std::size_t n = 0;
  std::optional<std::size_t> exact;
  bool skipped = false;
  std::string skip_reason;
  std::size_t upper = 0;
  std::optional<std::size_t> lower;
  std::optional<WordPair> witness;
};

enum class GlobalRankStatus { kNotAttempted, kFound, kAboveLimit, kSkipped };
std::string to_string(GlobalRankStatus s);

struct ProfileReport {
  std::string language;
  std::string alphabet;
  Classification classification = Classification::kBoundedStarFree;
  std::size_t monoid_size = 0;
  std::optional<CycleWitness> witness;
  /// Number of periodic elements whose witnesses feed the lower bound.
  std::size_t witness_count = 0;
  std::optional<std::size_t> first_defined_horizon;  // N0 of the best witness
  GlobalRankStatus global_rank_status = GlobalRankStatus::kNotAttempted;
  std::optional<std::size_t> global_rank;
  std::size_t global_rank_limit = 0;
  std::vector<ProfileRow> rows;
  /// Rows breaking lower <= exact <= upper or monotonicity.
  std::vector<std::size_t> violations;

  bool any_skipped() const;
};

struct ProfileOptions {
  std::uint64_t ball_cap = kDefaultBallCap;
  std::uint64_t type_budget = kDefaultTypeBudget;
  bool parallel = true;
  /// Upper limit on the number of (type, element) pairs explored by the
  /// global rank search at one rank.
  std::size_t product_cap = 200'000;
};

struct ClassifyOptions {
  std::size_t min_n = 2;
  std::size_t max_n = 10;
  /// Limit for the global rank search; 0 picks 6 for unary, 3 otherwise.
  std::size_t q_max = 0;
};

/// ceil(log2 n) + 4, the exact-word classifier rank bound.
std::size_t universal_upper_bound(std::size_t n);

/// Desk-scale exact profiles. Holds one type engine shared by all queries.
class Profiler {
 public:
  Profiler() : Profiler(ProfileOptions{}) {}
  explicit Profiler(ProfileOptions options);

  TypeEngine& engine() noexcept { return engine_; }
  const ProfileOptions& options() const noexcept { return options_; }

  /// Rank types of every word of the ball, in shortlex order of the ball.
  std::vector<TypeId> ball_types(const Alphabet& alphabet, std::size_t n, std::size_t q);
  const std::vector<Word>& ball(const Alphabet& alphabet, std::size_t n);

  /// Least rank separating members from nonmembers on the ball.
  RhoResult rho(const Language& l, std::size_t n);

  /// Same value through emptiness of defect sets.
  std::size_t rho_via_defect(const Language& l, std::size_t n);
  DefectSet defect_set(const Language& l, std::size_t q, std::size_t n);

  /// Throws NotDisjoint naming a common word of the ball.
  SigmaResult sigma(const Language& k, const Language& h, std::size_t n);

  /// Least q <= q_max making l a union of rank-q classes on all words.
  std::optional<std::size_t> min_global_rank(const Language& l, std::size_t q_max);

  ProfileReport classify(const Language& l, const ClassifyOptions& options);

 private:
  ProfileOptions options_;
  TypeEngine engine_;
  std::map<std::pair<std::string, std::size_t>, std::vector<Word>> balls_;
  std::map<std::tuple<std::string, std::size_t, std::size_t>, std::vector<TypeId>> typed_;
};

}  // namespace rankprof
