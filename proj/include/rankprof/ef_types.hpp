#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rankprof/words.hpp"

namespace rankprof {

/// Handle to an interned rank type. Equal handles from the same engine mean
/// equal types; across engines compare normal forms or fingerprints.
struct TypeId {
  std::uint32_t value = 0;
  friend auto operator<=>(const TypeId&, const TypeId&) = default;
};

/// One interned type: rank, atomic description of the pebbled positions,
/// and the set of rank-1 lower types reachable by placing one more pebble.
struct TypeNode {
  std::size_t rank = 0;
  std::string atomic;               // see encode_atomic() in ef_types.cpp
  std::vector<TypeId> successors;   // sorted, unique
  std::uint64_t fingerprint = 0;
};

inline constexpr std::uint64_t kDefaultTypeBudget = 100'000'000;

/// Version tag prefixed to every serialized normal form.
inline constexpr std::string_view kNormalFormVersion = "rt1";

/// Computes and interns rank-q types of words.
///
/// A pebbled word is cut at its pebbles into gaps; its rank-r type is a
/// function of the pebbled letters, the variable pattern and the rank-r
/// types of the gaps, so structures are memoized on that key. Word types are
/// memoized on content, which for one-letter alphabets is the length.
/// All public members are safe to call concurrently.
class TypeEngine {
 public:
  struct Options {
    /// Elementary steps (pebble placements actually explored) per call.
    std::uint64_t budget = kDefaultTypeBudget;
  };

  TypeEngine() : TypeEngine(Options{}) {}
  explicit TypeEngine(Options options);
  ~TypeEngine();

  TypeEngine(const TypeEngine&) = delete;
  TypeEngine& operator=(const TypeEngine&) = delete;

  /// Throws CostCapExceeded when the step budget is exhausted.
  TypeId rank_type(const Word& w, std::size_t q);

  /// Type of a^m over the one-letter alphabet {symbol}, cached on (m, q).
  TypeId rank_type_unary(std::size_t m, std::size_t q, char symbol = 'a');

  bool equivalent(const Word& u, const Word& v, std::size_t q) {
    return rank_type(u, q) == rank_type(v, q);
  }

  TypeNode node(TypeId id) const;
  std::size_t interned_count() const;

  /// Canonical serialization: `rt1` followed by the expanded type tree with
  /// successor sets ordered by their own serialization. Exponential in q.
  std::string normal_form(TypeId id) const;
  std::uint64_t fingerprint(TypeId id) const { return node(id).fingerprint; }

  std::uint64_t budget() const noexcept { return options_.budget; }

 private:
  struct Context;
  TypeId word_type(const std::string& symbols, std::size_t r, Context& ctx);
  TypeId structure_type(const std::string& symbols, const std::vector<std::uint32_t>& pebbles,
                        std::size_t r, Context& ctx);
  TypeId expand(const std::string& symbols, std::vector<std::uint32_t>& pebbles, std::size_t r,
                std::string atomic, Context& ctx);
  TypeId intern(std::size_t rank, std::string atomic, std::vector<TypeId> successors);
  void write_normal_form(TypeId id, std::string& out) const;

  Options options_;
  mutable std::shared_mutex mutex_;
  std::deque<TypeNode> nodes_;
  std::unordered_map<std::string, TypeId> table_;
  std::unordered_map<std::string, TypeId> word_memo_;
  std::unordered_map<std::string, TypeId> structure_memo_;
  std::unordered_map<std::uint64_t, TypeId> unary_memo_;
};

/// Unmemoized recursive type computation returning the normal form directly.
/// Serial reference for TypeEngine; cost (|w|+1)^q.
std::string rank_type_reference(const Word& w, std::size_t q);

/// Rank types of many words. The parallel version distributes words over
/// OpenMP threads; both return identical results.
std::vector<TypeId> ball_types(TypeEngine& engine, std::span<const Word> words, std::size_t q);
std::vector<TypeId> ball_types_serial(TypeEngine& engine, std::span<const Word> words, std::size_t q);

inline constexpr std::size_t kDefaultGameCap = 10;

/// Direct q-round Ehrenfeucht-Fraisse game search with memoization on pebble
/// configurations. Independent oracle for TypeEngine::equivalent.
/// Throws HorizonTooLarge when a word is longer than max_length.
bool equiv_by_game(const Word& u, const Word& v, std::size_t q,
                   std::size_t max_length = kDefaultGameCap);

/// Least q with u and v inequivalent.
struct RankDistance {
  std::size_t value = 0;
};

/// Throws Error when u == v, InternalError when the search passes the
/// exact-word bound max(1, ceil(log2 max(|u|,|v|,1)) + 4).
RankDistance rank_distance(TypeEngine& engine, const Word& u, const Word& v);

/// Sufficient test for x^m == x^m2 at rank q: true when m, m2 >= 2^q or the
/// words coincide, otherwise unknown. Throws Error for empty x.
std::optional<bool> power_equiv_shortcut(const Word& x, std::size_t m, std::size_t m2, std::size_t q);

/// ceil(log2 n) for n >= 1, 0 for n = 0.
std::size_t ceil_log2(std::size_t n);
/// floor(log2 n) for n >= 1.
std::size_t floor_log2(std::size_t n);

}  // namespace rankprof
