#include "rankprof/report_io.hpp"

#include <algorithm>
#include <sstream>

#include "rankprof/errors.hpp"

namespace rankprof {

namespace {

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json pair_json(const std::optional<WordPair>& p, const char* first, const char* second) {
  if (!p) return nullptr;
  Json j;
  j[first] = p->first.str();
  j[second] = p->second.str();
  return j;
}

std::string cell(const std::optional<std::size_t>& v, const char* absent = "") {
  return v ? std::to_string(*v) : std::string(absent);
}

}  // namespace

Json to_json(const CycleWitness& w) {
  Json j;
  j["schema"] = kWitnessSchema;
  j["r"] = w.r.str();
  j["x"] = w.x.str();
  j["s"] = w.s.str();
  j["h"] = w.h;
  j["p"] = w.p;
  j["i"] = w.i;
  j["j"] = w.j;
  j["accepted_residue"] = w.i_accepted ? w.i : w.j;
  j["C"] = w.context_length();
  j["ell"] = w.block_length();
  j["N0"] = w.first_defined_horizon();
  return j;
}

Json to_json(const ProfileReport& r) {
  Json j;
  j["schema"] = kProfileSchema;
  j["language"] = r.language;
  j["alphabet"] = r.alphabet;
  j["classification"] = to_string(r.classification);
  j["monoid_size"] = r.monoid_size;
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  j["witness_count"] = r.witness_count;
  j["N0"] = optional_json(r.first_defined_horizon);
  Json g;
  g["status"] = to_string(r.global_rank_status);
  g["rank"] = optional_json(r.global_rank);
  g["q_max"] = r.global_rank_limit;
  j["global_rank"] = g;
  j["rows"] = Json::array();
  for (const auto& row : r.rows) {
    Json jr;
    jr["n"] = row.n;
    jr["exact"] = optional_json(row.exact);
    jr["skipped"] = row.skipped;
    if (row.skipped) jr["skip_reason"] = row.skip_reason;
    jr["upper"] = row.upper;
    jr["lower"] = optional_json(row.lower);
    jr["witness"] = pair_json(row.witness, "member", "nonmember");
    j["rows"].push_back(std::move(jr));
  }
  j["violations"] = r.violations;
  j["bounds_hold"] = r.violations.empty();
  return j;
}

Json to_json(const DefectSet& d, const FiniteMonoid& m) {
  Json j;
  j["schema"] = kDefectSchema;
  j["q"] = d.q;
  j["n"] = d.n;
  j["pairs"] = Json::array();
  for (const auto& e : d.pairs) {
    Json p;
    p["accepting_element"] = m.witness(e.accepting).str();
    p["rejecting_element"] = m.witness(e.rejecting).str();
    p["member"] = e.member.str();
    p["nonmember"] = e.nonmember.str();
    j["pairs"].push_back(std::move(p));
  }
  return j;
}

std::string to_csv(const ProfileReport& r) {
  std::ostringstream out;
  out << "n,exact,upper,lower,member,nonmember\n";
  for (const auto& row : r.rows) {
    out << row.n << ',' << (row.skipped ? std::string("skipped") : cell(row.exact)) << ',' << row.upper
        << ',' << cell(row.lower) << ',' << (row.witness ? row.witness->first.str() : "") << ','
        << (row.witness ? row.witness->second.str() : "") << '\n';
  }
  return out.str();
}

std::string to_plot(const ProfileReport& r) {
  std::ostringstream out;
  out << "n,exact,lower,upper\n";
  for (const auto& row : r.rows)
    out << row.n << ',' << cell(row.exact, "nan") << ',' << cell(row.lower, "nan") << ',' << row.upper << '\n';
  return out.str();
}

Json to_json(const SeparatorTable& t) {
  Json j;
  j["schema"] = kSeparatorSchema;
  j["k"] = t.k;
  j["h"] = t.h;
  j["alphabet"] = t.alphabet;
  if (!t.rows.empty()) {
    const auto& meta = t.rows.front().result;
    j["globally_disjoint"] = meta.globally_disjoint;
    j["global_common_word"] = meta.global_common_word ? Json(meta.global_common_word->str()) : Json(nullptr);
  }
  j["rows"] = Json::array();
  for (const auto& row : t.rows) {
    Json jr;
    jr["n"] = row.n;
    jr["sigma"] = row.result.value;
    jr["upper"] = row.upper;
    jr["witness"] = pair_json(row.result.witness, "k_word", "h_word");
    j["rows"].push_back(std::move(jr));
  }
  return j;
}

std::string to_csv(const SeparatorTable& t) {
  std::ostringstream out;
  out << "n,sigma,upper,k_word,h_word\n";
  for (const auto& row : t.rows) {
    const auto& w = row.result.witness;
    out << row.n << ',' << row.result.value << ',' << row.upper << ',' << (w ? w->first.str() : "") << ','
        << (w ? w->second.str() : "") << '\n';
  }
  return out.str();
}

bool VerifyTable::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.ok; });
}

bool VerifyTable::any_skipped() const {
  return std::any_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.skipped; });
}

VerifyTable certify_bounds(Profiler& profiler, const Language& l, const ClassifyOptions& options) {
  ProfileReport report = profiler.classify(l, options);
  VerifyTable t;
  t.language = report.language;
  t.classification = to_string(report.classification);
  std::optional<std::size_t> last;
  for (const auto& row : report.rows) {
    VerifyRow v;
    v.n = row.n;
    v.exact = row.exact;
    v.upper = row.upper;
    v.lower = row.lower;
    v.skipped = row.skipped;
    if (row.exact) {
      try {
        v.via_defect = profiler.rho_via_defect(l, row.n);
      } catch (const CostCapExceeded&) {
        v.skipped = true;
      } catch (const HorizonTooLarge&) {
        v.skipped = true;
      }
      v.ok = *row.exact <= row.upper && (!row.lower || *row.lower <= *row.exact) &&
             (!v.via_defect || *v.via_defect == *row.exact) && (!last || *last <= *row.exact);
      last = row.exact;
    }
    t.rows.push_back(v);
  }
  return t;
}

Json to_json(const VerifyTable& t) {
  Json j;
  j["schema"] = kVerifySchema;
  j["language"] = t.language;
  j["classification"] = t.classification;
  j["rows"] = Json::array();
  for (const auto& r : t.rows) {
    Json jr;
    jr["n"] = r.n;
    jr["exact"] = optional_json(r.exact);
    jr["via_defect"] = optional_json(r.via_defect);
    jr["lower"] = optional_json(r.lower);
    jr["upper"] = r.upper;
    jr["status"] = r.skipped && !r.exact ? "skipped" : (r.ok ? "ok" : "violation");
    j["rows"].push_back(std::move(jr));
  }
  j["all_ok"] = t.all_ok();
  return j;
}

std::string to_csv(const VerifyTable& t) {
  std::ostringstream out;
  out << "n,exact,via_defect,lower,upper,status\n";
  for (const auto& r : t.rows)
    out << r.n << ',' << cell(r.exact) << ',' << cell(r.via_defect) << ',' << cell(r.lower) << ',' << r.upper
        << ',' << (r.skipped && !r.exact ? "skipped" : (r.ok ? "ok" : "violation")) << '\n';
  return out.str();
}

}  // namespace rankprof
