#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <set>

#include "rankprof/automata.hpp"
#include "rankprof/errors.hpp"

namespace rankprof {

namespace {

enum class Op { kEmpty, kEps, kLiteral, kConcat, kUnion, kStar };

struct Regex {
  Op op;
  char symbol = 0;
  std::unique_ptr<Regex> left;
  std::unique_ptr<Regex> right;
};

using RegexPtr = std::unique_ptr<Regex>;

RegexPtr make(Op op, RegexPtr l = nullptr, RegexPtr r = nullptr, char sym = 0) {
  auto node = std::make_unique<Regex>();
  node->op = op;
  node->symbol = sym;
  node->left = std::move(l);
  node->right = std::move(r);
  return node;
}

bool is_special(char c) { return c == '|' || c == '*' || c == '(' || c == ')' || c == '@'; }

class RegexParser {
 public:
  explicit RegexParser(std::string_view text) : text_(text) {}

  RegexPtr parse() {
    RegexPtr r = alternation();
    skip();
    if (pos_ < text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return r;
  }

  const std::set<char>& literals() const { return literals_; }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool at_atom_start() {
    skip();
    return pos_ < text_.size() && (text_[pos_] == '(' || text_[pos_] == '@' || !is_special(text_[pos_]));
  }

  RegexPtr alternation() {
    RegexPtr r = concatenation();
    while (peek('|')) {
      ++pos_;
      r = make(Op::kUnion, std::move(r), concatenation());
    }
    return r;
  }

  RegexPtr concatenation() {
    if (!at_atom_start()) throw ParseError("expected an expression", pos_);
    RegexPtr r = starred();
    while (at_atom_start()) r = make(Op::kConcat, std::move(r), starred());
    return r;
  }

  RegexPtr starred() {
    RegexPtr r = atom();
    while (peek('*')) {
      ++pos_;
      r = make(Op::kStar, std::move(r));
    }
    return r;
  }

  RegexPtr atom() {
    skip();
    std::size_t at = pos_;
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RegexPtr r = alternation();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return r;
    }
    if (c == '@') {
      if (text_.substr(pos_, 4) == "@eps") {
        pos_ += 4;
        return make(Op::kEps);
      }
      if (text_.substr(pos_, 6) == "@empty") {
        pos_ += 6;
        return make(Op::kEmpty);
      }
      throw ParseError("unknown escape (expected @eps or @empty)", at);
    }
    if (!std::isprint(static_cast<unsigned char>(c))) throw ParseError("non-printable literal", at);
    ++pos_;
    literals_.insert(c);
    return make(Op::kLiteral, nullptr, nullptr, c);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::set<char> literals_;
};

// Thompson NFA: every state has epsilon edges and at most one labelled edge.
struct Nfa {
  struct Node {
    std::vector<std::size_t> eps;
    std::int32_t letter = -1;
    std::size_t target = 0;
  };
  std::vector<Node> nodes;
  std::size_t add() {
    nodes.emplace_back();
    return nodes.size() - 1;
  }
};

struct Fragment {
  std::size_t in;
  std::size_t out;
};

Fragment thompson(const Regex& r, Nfa& nfa, const Alphabet& alphabet) {
  switch (r.op) {
    case Op::kEmpty: {
      return {nfa.add(), nfa.add()};
    }
    case Op::kEps: {
      auto s = nfa.add();
      auto t = nfa.add();
      nfa.nodes[s].eps.push_back(t);
      return {s, t};
    }
    case Op::kLiteral: {
      auto s = nfa.add();
      auto t = nfa.add();
      auto idx = alphabet.index_of(r.symbol);
      if (!idx) throw AlphabetMismatch(std::string("literal '") + r.symbol + "' is not in the alphabet");
      nfa.nodes[s].letter = *idx;
      nfa.nodes[s].target = t;
      return {s, t};
    }
    case Op::kConcat: {
      auto a = thompson(*r.left, nfa, alphabet);
      auto b = thompson(*r.right, nfa, alphabet);
      nfa.nodes[a.out].eps.push_back(b.in);
      return {a.in, b.out};
    }
    case Op::kUnion: {
      auto a = thompson(*r.left, nfa, alphabet);
      auto b = thompson(*r.right, nfa, alphabet);
      auto s = nfa.add();
      auto t = nfa.add();
      nfa.nodes[s].eps = {a.in, b.in};
      nfa.nodes[a.out].eps.push_back(t);
      nfa.nodes[b.out].eps.push_back(t);
      return {s, t};
    }
    case Op::kStar: {
      auto a = thompson(*r.left, nfa, alphabet);
      auto s = nfa.add();
      auto t = nfa.add();
      nfa.nodes[s].eps = {a.in, t};
      nfa.nodes[a.out].eps = {a.in, t};
      return {s, t};
    }
  }
  throw InternalError("unreachable regex operator");
}

std::vector<std::size_t> closure(const Nfa& nfa, std::vector<std::size_t> set) {
  std::vector<bool> in(nfa.nodes.size(), false);
  for (auto s : set) in[s] = true;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (auto t : nfa.nodes[set[i]].eps)
      if (!in[t]) {
        in[t] = true;
        set.push_back(t);
      }
  std::sort(set.begin(), set.end());
  return set;
}

bool match_naive(const Regex& r, std::string_view s, std::size_t pos,
                 const std::function<bool(std::size_t)>& k) {
  switch (r.op) {
    case Op::kEmpty:
      return false;
    case Op::kEps:
      return k(pos);
    case Op::kLiteral:
      return pos < s.size() && s[pos] == r.symbol && k(pos + 1);
    case Op::kConcat:
      return match_naive(*r.left, s, pos, [&](std::size_t mid) { return match_naive(*r.right, s, mid, k); });
    case Op::kUnion:
      return match_naive(*r.left, s, pos, k) || match_naive(*r.right, s, pos, k);
    case Op::kStar: {
      // zero iterations, or one nonempty iteration followed by the star again
      if (k(pos)) return true;
      return match_naive(*r.left, s, pos, [&](std::size_t mid) {
        return mid > pos && match_naive(r, s, mid, k);
      });
    }
  }
  return false;
}

}  // namespace

Dfa parse_regex(std::string_view pattern, std::optional<Alphabet> alphabet) {
  RegexParser parser(pattern);
  RegexPtr ast = parser.parse();
  if (!alphabet) {
    std::string symbols(parser.literals().begin(), parser.literals().end());
    alphabet = Alphabet(symbols.empty() ? "a" : symbols);
  }
  Nfa nfa;
  Fragment frag = thompson(*ast, nfa, *alphabet);

  const std::size_t k = alphabet->size();
  std::map<std::vector<std::size_t>, State> ids;
  std::vector<std::vector<std::size_t>> subsets;
  auto id_of = [&](std::vector<std::size_t> set) {
    auto [it, inserted] = ids.emplace(set, static_cast<State>(subsets.size()));
    if (inserted) subsets.push_back(std::move(set));
    return it->second;
  };
  id_of(closure(nfa, {frag.in}));
  std::vector<State> delta;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (Letter a = 0; a < k; ++a) {
      std::vector<std::size_t> moved;
      for (auto s : subsets[i])
        if (nfa.nodes[s].letter == a) moved.push_back(nfa.nodes[s].target);
      State t = id_of(closure(nfa, std::move(moved)));
      delta.push_back(t);
    }
  }
  std::vector<bool> acc(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i)
    acc[i] = std::binary_search(subsets[i].begin(), subsets[i].end(), frag.out);
  return Dfa(*alphabet, subsets.size(), 0, std::move(acc), std::move(delta)).minimized();
}

bool regex_matches_naive(std::string_view pattern, std::string_view subject) {
  RegexPtr ast = RegexParser(pattern).parse();
  return match_naive(*ast, subject, 0, [&](std::size_t end) { return end == subject.size(); });
}

}  // namespace rankprof
