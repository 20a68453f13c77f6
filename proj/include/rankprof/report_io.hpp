#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rankprof/monoid.hpp"
#include "rankprof/profiles.hpp"

namespace rankprof {

inline constexpr const char* kProfileSchema = "rankprof.profile/1";
inline constexpr const char* kDefectSchema = "rankprof.defect/1";
inline constexpr const char* kWitnessSchema = "rankprof.witness/1";
inline constexpr const char* kSeparatorSchema = "rankprof.separator/1";
inline constexpr const char* kVerifySchema = "rankprof.verify/1";

using Json = nlohmann::ordered_json;

Json to_json(const CycleWitness& w);
Json to_json(const ProfileReport& r);
Json to_json(const DefectSet& d, const FiniteMonoid& m);

/// Header: n,exact,upper,lower,member,nonmember. Skipped rows carry
/// `skipped` in the exact column; absent values are empty.
std::string to_csv(const ProfileReport& r);

/// Header: n,exact,lower,upper. Absent values are `nan`.
std::string to_plot(const ProfileReport& r);

struct SeparatorRow {
  std::size_t n = 0;
  SigmaResult result;
  std::size_t upper = 0;
};

struct SeparatorTable {
  std::string k;
  std::string h;
  std::string alphabet;
  std::vector<SeparatorRow> rows;
};

Json to_json(const SeparatorTable& t);
/// Header: n,sigma,upper,k_word,h_word.
std::string to_csv(const SeparatorTable& t);

/// One bound-certification line per horizon.
struct VerifyRow {
  std::size_t n = 0;
  std::optional<std::size_t> exact;
  std::optional<std::size_t> via_defect;
  std::size_t upper = 0;
  std::optional<std::size_t> lower;
  bool skipped = false;
  bool ok = true;
};

struct VerifyTable {
  std::string language;
  std::string classification;
  std::vector<VerifyRow> rows;
  bool all_ok() const;
  bool any_skipped() const;
};

/// Recomputes the profile through both routes and checks every row against
/// the universal upper bound, the cycle lower bound and monotonicity.
VerifyTable certify_bounds(Profiler& profiler, const Language& l, const ClassifyOptions& options);

Json to_json(const VerifyTable& t);
/// Header: n,exact,via_defect,lower,upper,status.
std::string to_csv(const VerifyTable& t);

}  // namespace rankprof
