#include <algorithm>
#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "rankprof/errors.hpp"
#include "rankprof/formula.hpp"

namespace rankprof {

namespace {

constexpr std::int32_t kBound = -1;
constexpr std::size_t kDenseMemoLimit = std::size_t{1} << 20;
constexpr std::size_t kInlineSlots = 32;

// Subformula modulo variable renaming. Free variables are numbered by
// first occurrence; child_maps send each child slot to a parent slot, or to
// kBound for the variable a quantifier binds.
struct CNode {
  FormulaKind kind;
  char symbol = 0;
  std::uint32_t arity = 0;
  std::vector<std::uint32_t> atom_args;
  std::vector<std::uint32_t> children;
  std::vector<std::vector<std::int32_t>> child_maps;
};

struct Compiled {
  std::uint32_t id;
  std::vector<Var> free;
};

}  // namespace

struct ModelChecker::Impl {
  Word word;
  std::vector<CNode> nodes;
  std::unordered_map<std::string, std::uint32_t> interned;
  std::vector<std::vector<std::int8_t>> dense;  // -1 unknown, 0/1 value
  std::vector<std::unordered_map<std::uint64_t, bool>> sparse;
  unsigned pos_bits = 1;

  explicit Impl(Word w) : word(std::move(w)) {
    while ((std::size_t{1} << pos_bits) <= word.size()) ++pos_bits;
  }

  std::uint32_t intern(CNode node) {
    std::string key;
    key.push_back(static_cast<char>(node.kind));
    key.push_back(node.symbol);
    auto put = [&key](std::uint32_t v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
    put(node.arity);
    put(static_cast<std::uint32_t>(node.atom_args.size()));
    for (auto a : node.atom_args) put(a);
    put(static_cast<std::uint32_t>(node.children.size()));
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      put(node.children[i]);
      for (auto m : node.child_maps[i]) put(static_cast<std::uint32_t>(m));
    }
    auto [it, inserted] = interned.emplace(std::move(key), static_cast<std::uint32_t>(nodes.size()));
    if (inserted) {
      nodes.push_back(std::move(node));
      dense.emplace_back();
      sparse.emplace_back();
    }
    return it->second;
  }

  static std::uint32_t slot_of(std::vector<Var>& free, Var v) {
    auto it = std::find(free.begin(), free.end(), v);
    if (it != free.end()) return static_cast<std::uint32_t>(it - free.begin());
    free.push_back(v);
    return static_cast<std::uint32_t>(free.size() - 1);
  }

  Compiled compile(const Formula& phi) {
    CNode node;
    node.kind = phi.kind();
    std::vector<Var> free;
    switch (phi.kind()) {
      case FormulaKind::kLess:
      case FormulaKind::kEqual:
        node.atom_args = {slot_of(free, phi.var(0)), slot_of(free, phi.var(1))};
        break;
      case FormulaKind::kLetter:
        node.symbol = phi.symbol();
        node.atom_args = {slot_of(free, phi.var(0))};
        break;
      case FormulaKind::kTrue:
      case FormulaKind::kFalse:
        break;
      case FormulaKind::kExists:
      case FormulaKind::kForall: {
        Compiled child = compile(phi.children()[0]);
        std::vector<std::int32_t> map;
        for (Var v : child.free)
          map.push_back(v == phi.var(0) ? kBound : static_cast<std::int32_t>(slot_of(free, v)));
        node.children.push_back(child.id);
        node.child_maps.push_back(std::move(map));
        break;
      }
      case FormulaKind::kNot:
      case FormulaKind::kAnd:
      case FormulaKind::kOr:
        for (const auto& c : phi.children()) {
          Compiled child = compile(c);
          std::vector<std::int32_t> map;
          for (Var v : child.free) map.push_back(static_cast<std::int32_t>(slot_of(free, v)));
          node.children.push_back(child.id);
          node.child_maps.push_back(std::move(map));
        }
        break;
    }
    node.arity = static_cast<std::uint32_t>(free.size());
    return {intern(std::move(node)), std::move(free)};
  }

  // Memo slot for (node, vals): dense index, packed sparse key, or none.
  bool lookup(std::uint32_t id, const std::uint32_t* vals, bool& value) {
    const CNode& node = nodes[id];
    std::size_t base = word.size() + 1;
    std::size_t cells = 1;
    for (std::uint32_t i = 0; i < node.arity && cells <= kDenseMemoLimit; ++i) cells *= base;
    if (cells <= kDenseMemoLimit) {
      auto& table = dense[id];
      if (table.empty()) return false;
      std::int8_t v = table[dense_index(node, vals)];
      if (v < 0) return false;
      value = v != 0;
      return true;
    }
    if (node.arity * pos_bits > 64) return false;
    auto& table = sparse[id];
    auto it = table.find(pack(node, vals));
    if (it == table.end()) return false;
    value = it->second;
    return true;
  }

  void store(std::uint32_t id, const std::uint32_t* vals, bool value) {
    const CNode& node = nodes[id];
    std::size_t base = word.size() + 1;
    std::size_t cells = 1;
    for (std::uint32_t i = 0; i < node.arity && cells <= kDenseMemoLimit; ++i) cells *= base;
    if (cells <= kDenseMemoLimit) {
      auto& table = dense[id];
      if (table.empty()) table.assign(cells, -1);
      table[dense_index(node, vals)] = value ? 1 : 0;
      return;
    }
    if (node.arity * pos_bits > 64) return;
    sparse[id][pack(node, vals)] = value;
  }

  std::size_t dense_index(const CNode& node, const std::uint32_t* vals) const {
    std::size_t idx = 0;
    for (std::uint32_t i = 0; i < node.arity; ++i) idx = idx * (word.size() + 1) + vals[i];
    return idx;
  }

  std::uint64_t pack(const CNode& node, const std::uint32_t* vals) const {
    std::uint64_t key = 0;
    for (std::uint32_t i = 0; i < node.arity; ++i) key = (key << pos_bits) | vals[i];
    return key;
  }

  bool eval_child(const CNode& node, std::size_t c, const std::uint32_t* vals, std::uint32_t bound) {
    const auto& map = node.child_maps[c];
    std::array<std::uint32_t, kInlineSlots> inline_buf;
    std::vector<std::uint32_t> heap_buf;
    std::uint32_t* buf = inline_buf.data();
    if (map.size() > kInlineSlots) {
      heap_buf.resize(map.size());
      buf = heap_buf.data();
    }
    for (std::size_t i = 0; i < map.size(); ++i) buf[i] = map[i] == kBound ? bound : vals[map[i]];
    return eval(node.children[c], buf);
  }

  bool eval(std::uint32_t id, const std::uint32_t* vals) {
    const CNode& node = nodes[id];
    switch (node.kind) {
      case FormulaKind::kTrue:
        return true;
      case FormulaKind::kFalse:
        return false;
      case FormulaKind::kLess:
        return vals[node.atom_args[0]] < vals[node.atom_args[1]];
      case FormulaKind::kEqual:
        return vals[node.atom_args[0]] == vals[node.atom_args[1]];
      case FormulaKind::kLetter:
        return word.alphabet().symbol(word[vals[node.atom_args[0]] - 1]) == node.symbol;
      default:
        break;
    }
    bool value = false;
    if (lookup(id, vals, value)) return value;
    // nodes is not mutated during evaluation, so the reference stays valid.
    switch (node.kind) {
      case FormulaKind::kNot:
        value = !eval_child(node, 0, vals, 0);
        break;
      case FormulaKind::kAnd:
        value = true;
        for (std::size_t c = 0; c < node.children.size() && value; ++c)
          value = eval_child(node, c, vals, 0);
        break;
      case FormulaKind::kOr:
        value = false;
        for (std::size_t c = 0; c < node.children.size() && !value; ++c)
          value = eval_child(node, c, vals, 0);
        break;
      case FormulaKind::kExists:
        value = false;
        for (std::uint32_t p = 1; p <= word.size() && !value; ++p) value = eval_child(node, 0, vals, p);
        break;
      case FormulaKind::kForall:
        value = true;
        for (std::uint32_t p = 1; p <= word.size() && value; ++p) value = eval_child(node, 0, vals, p);
        break;
      default:
        break;
    }
    store(id, vals, value);
    return value;
  }
};

ModelChecker::ModelChecker(Word w) : impl_(std::make_unique<Impl>(std::move(w))) {}
ModelChecker::~ModelChecker() = default;
ModelChecker::ModelChecker(ModelChecker&&) noexcept = default;
ModelChecker& ModelChecker::operator=(ModelChecker&&) noexcept = default;

const Word& ModelChecker::word() const noexcept { return impl_->word; }

bool ModelChecker::holds(const Formula& phi, const Assignment& env) { return holds(prepare(phi), env); }

ModelChecker::Query ModelChecker::prepare(const Formula& phi) {
  Compiled top = impl_->compile(phi);
  return {top.id, std::move(top.free)};
}

bool ModelChecker::holds(const Query& query, const Assignment& env) {
  std::array<std::uint32_t, kInlineSlots> inline_buf;
  std::vector<std::uint32_t> heap_buf;
  std::uint32_t* vals = inline_buf.data();
  if (query.free.size() > kInlineSlots) {
    heap_buf.resize(query.free.size());
    vals = heap_buf.data();
  }
  for (std::size_t k = 0; k < query.free.size(); ++k) {
    Var v = query.free[k];
    auto it = env.find(v);
    if (it == env.end()) throw UnboundVariable("free variable " + var_name(v) + " is not assigned");
    if (it->second < 1 || it->second > impl_->word.size())
      throw Error("position " + std::to_string(it->second) + " of " + var_name(v) +
                  " is outside 1.." + std::to_string(impl_->word.size()));
    vals[k] = static_cast<std::uint32_t>(it->second);
  }
  return impl_->eval(query.id, vals);
}

bool evaluate(const Word& w, const Formula& phi, const Assignment& env) {
  ModelChecker checker(w);
  return checker.holds(phi, env);
}

}  // namespace rankprof
