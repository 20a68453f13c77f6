#include "rankprof/ef_types.hpp"

#include <algorithm>
#include <exception>
#include <mutex>

#include "rankprof/errors.hpp"

namespace rankprof {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::string symbols_of(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter l : w.letters()) s.push_back(w.alphabet().symbol(l));
  return s;
}

// Atomic part of a pebbled word: "<slot of x0>,<slot of x1>,...;<letters of
// slots>", slots being the distinct pebbled positions in increasing order.
// Order, equality and letters among pebbles are all recoverable from it.
std::string encode_atomic(const std::string& symbols, const std::vector<std::uint32_t>& pebbles,
                          std::vector<std::uint32_t>* slots_out = nullptr) {
  std::vector<std::uint32_t> slots(pebbles);
  std::sort(slots.begin(), slots.end());
  slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
  std::string out;
  for (std::size_t i = 0; i < pebbles.size(); ++i) {
    if (i) out.push_back(',');
    auto idx = std::lower_bound(slots.begin(), slots.end(), pebbles[i]) - slots.begin();
    out += std::to_string(idx);
  }
  out.push_back(';');
  for (auto p : slots) out.push_back(symbols[p - 1]);
  if (slots_out) *slots_out = std::move(slots);
  return out;
}

void append_id(std::string& key, TypeId id) {
  key.append(reinterpret_cast<const char*>(&id.value), sizeof id.value);
}

}  // namespace

std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

std::size_t floor_log2(std::size_t n) {
  if (n == 0) throw Error("floor_log2(0) is undefined");
  std::size_t k = 0;
  while ((n >> (k + 1)) != 0) ++k;
  return k;
}

struct TypeEngine::Context {
  std::uint64_t steps = 0;
  std::uint64_t budget = 0;

  void tick() {
    if (++steps > budget)
      throw CostCapExceeded("rank-type computation exceeded budget of " + std::to_string(budget) +
                            " steps");
  }
};

TypeEngine::TypeEngine(Options options) : options_(options) {}
TypeEngine::~TypeEngine() = default;

TypeId TypeEngine::intern(std::size_t rank, std::string atomic, std::vector<TypeId> successors) {
  std::sort(successors.begin(), successors.end());
  successors.erase(std::unique(successors.begin(), successors.end()), successors.end());
  std::string key = std::to_string(rank) + ":" + atomic + "|";
  for (auto s : successors) append_id(key, s);
  {
    std::shared_lock lock(mutex_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  std::vector<std::uint64_t> child_prints;
  child_prints.reserve(successors.size());
  for (auto s : successors) child_prints.push_back(nodes_[s.value].fingerprint);
  std::sort(child_prints.begin(), child_prints.end());
  std::uint64_t h = fnv1a(kFnvOffset, std::to_string(rank) + ":" + atomic + "|");
  for (auto c : child_prints)
    h = fnv1a(h, std::string_view(reinterpret_cast<const char*>(&c), sizeof c));
  TypeId id{static_cast<std::uint32_t>(nodes_.size())};
  nodes_.push_back(TypeNode{rank, std::move(atomic), std::move(successors), h});
  table_.emplace(std::move(key), id);
  return id;
}

TypeId TypeEngine::expand(const std::string& symbols, std::vector<std::uint32_t>& pebbles,
                          std::size_t r, std::string atomic, Context& ctx) {
  if (r == 0) return intern(0, std::move(atomic), {});
  std::vector<TypeId> successors;
  successors.reserve(symbols.size());
  pebbles.push_back(0);
  for (std::uint32_t p = 1; p <= symbols.size(); ++p) {
    ctx.tick();
    pebbles.back() = p;
    successors.push_back(structure_type(symbols, pebbles, r - 1, ctx));
  }
  pebbles.pop_back();
  return intern(r, std::move(atomic), std::move(successors));
}

TypeId TypeEngine::word_type(const std::string& symbols, std::size_t r, Context& ctx) {
  std::string key = std::to_string(r) + ":" + symbols;
  {
    std::shared_lock lock(mutex_);
    if (auto it = word_memo_.find(key); it != word_memo_.end()) return it->second;
  }
  std::vector<std::uint32_t> pebbles;
  TypeId id = expand(symbols, pebbles, r, encode_atomic(symbols, pebbles), ctx);
  std::unique_lock lock(mutex_);
  word_memo_.emplace(std::move(key), id);
  return id;
}

TypeId TypeEngine::structure_type(const std::string& symbols, const std::vector<std::uint32_t>& pebbles,
                                  std::size_t r, Context& ctx) {
  std::vector<std::uint32_t> slots;
  std::string atomic = encode_atomic(symbols, pebbles, &slots);
  if (r == 0) return intern(0, std::move(atomic), {});
  if (pebbles.empty()) return word_type(symbols, r, ctx);

  std::string key = std::to_string(r) + ":" + atomic + "|";
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= slots.size(); ++i) {
    std::size_t end = i < slots.size() ? slots[i] - 1 : symbols.size();
    append_id(key, word_type(symbols.substr(begin, end - begin), r, ctx));
    begin = end + 1;
  }
  {
    std::shared_lock lock(mutex_);
    if (auto it = structure_memo_.find(key); it != structure_memo_.end()) return it->second;
  }
  std::vector<std::uint32_t> work(pebbles);
  TypeId id = expand(symbols, work, r, std::move(atomic), ctx);
  std::unique_lock lock(mutex_);
  structure_memo_.emplace(std::move(key), id);
  return id;
}

TypeId TypeEngine::rank_type(const Word& w, std::size_t q) {
  Context ctx{0, options_.budget};
  return word_type(symbols_of(w), q, ctx);
}

TypeId TypeEngine::rank_type_unary(std::size_t m, std::size_t q, char symbol) {
  std::uint64_t key = (static_cast<std::uint64_t>(static_cast<unsigned char>(symbol)) << 56) |
                      (static_cast<std::uint64_t>(q) << 40) | m;
  {
    std::shared_lock lock(mutex_);
    if (auto it = unary_memo_.find(key); it != unary_memo_.end()) return it->second;
  }
  Context ctx{0, options_.budget};
  TypeId id = word_type(std::string(m, symbol), q, ctx);
  std::unique_lock lock(mutex_);
  unary_memo_.emplace(key, id);
  return id;
}

TypeNode TypeEngine::node(TypeId id) const {
  std::shared_lock lock(mutex_);
  return nodes_.at(id.value);
}

std::size_t TypeEngine::interned_count() const {
  std::shared_lock lock(mutex_);
  return nodes_.size();
}

void TypeEngine::write_normal_form(TypeId id, std::string& out) const {
  TypeNode n = node(id);
  std::vector<std::string> children;
  children.reserve(n.successors.size());
  for (auto s : n.successors) {
    std::string c;
    write_normal_form(s, c);
    children.push_back(std::move(c));
  }
  std::sort(children.begin(), children.end());
  out += "(" + std::to_string(n.rank) + ":" + n.atomic + "[";
  for (const auto& c : children) out += c;
  out += "])";
}

std::string TypeEngine::normal_form(TypeId id) const {
  std::string out(kNormalFormVersion);
  write_normal_form(id, out);
  return out;
}

namespace {

std::string reference_tree(const std::string& symbols, std::vector<std::uint32_t>& pebbles, std::size_t r) {
  std::vector<std::string> children;
  if (r > 0) {
    pebbles.push_back(0);
    for (std::uint32_t p = 1; p <= symbols.size(); ++p) {
      pebbles.back() = p;
      children.push_back(reference_tree(symbols, pebbles, r - 1));
    }
    pebbles.pop_back();
  }
  std::sort(children.begin(), children.end());
  children.erase(std::unique(children.begin(), children.end()), children.end());
  std::string out = "(" + std::to_string(r) + ":" + encode_atomic(symbols, pebbles) + "[";
  for (const auto& c : children) out += c;
  out += "])";
  return out;
}

}  // namespace

std::string rank_type_reference(const Word& w, std::size_t q) {
  std::vector<std::uint32_t> pebbles;
  return std::string(kNormalFormVersion) + reference_tree(symbols_of(w), pebbles, q);
}

std::vector<TypeId> ball_types(TypeEngine& engine, std::span<const Word> words, std::size_t q) {
  std::vector<TypeId> out(words.size());
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(words.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      out[i] = engine.rank_type(words[i], q);
    } catch (...) {
#pragma omp critical(rankprof_ball_types)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<TypeId> ball_types_serial(TypeEngine& engine, std::span<const Word> words, std::size_t q) {
  std::vector<TypeId> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(engine.rank_type(w, q));
  return out;
}

RankDistance rank_distance(TypeEngine& engine, const Word& u, const Word& v) {
  if (u == v) throw Error("rank distance is undefined for equal words");
  std::size_t longest = std::max({u.size(), v.size(), std::size_t{1}});
  std::size_t limit = std::max<std::size_t>(1, ceil_log2(longest) + 4);
  for (std::size_t q = 1; q <= limit; ++q)
    if (!engine.equivalent(u, v, q)) return {q};
  throw InternalError("rank distance of " + u.str() + " and " + v.str() + " exceeds " +
                      std::to_string(limit));
}

std::optional<bool> power_equiv_shortcut(const Word& x, std::size_t m, std::size_t m2, std::size_t q) {
  if (x.empty()) throw Error("block power needs a nonempty base word");
  if (m == m2) return true;
  if (q < 63) {
    std::size_t threshold = std::size_t{1} << q;
    if (m >= threshold && m2 >= threshold) return true;
  }
  return std::nullopt;
}

}  // namespace rankprof
