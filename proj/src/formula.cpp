#include "rankprof/formula.hpp"

#include <algorithm>
#include <cctype>

#include "rankprof/errors.hpp"

namespace rankprof {

Formula Formula::less(Var x, Var y) {
  Formula f(FormulaKind::kLess);
  f.vars_[0] = x;
  f.vars_[1] = y;
  return f;
}

Formula Formula::equal(Var x, Var y) {
  Formula f(FormulaKind::kEqual);
  f.vars_[0] = x;
  f.vars_[1] = y;
  return f;
}

Formula Formula::letter(char symbol, Var x) {
  Formula f(FormulaKind::kLetter);
  f.symbol_ = symbol;
  f.vars_[0] = x;
  return f;
}

Formula Formula::negation(Formula child) {
  Formula f(FormulaKind::kNot);
  f.children_.push_back(std::move(child));
  return f;
}

Formula Formula::conjunction(std::vector<Formula> children) {
  Formula f(FormulaKind::kAnd);
  f.children_ = std::move(children);
  return f;
}

Formula Formula::disjunction(std::vector<Formula> children) {
  Formula f(FormulaKind::kOr);
  f.children_ = std::move(children);
  return f;
}

Formula Formula::exists(Var v, Formula child) {
  Formula f(FormulaKind::kExists);
  f.vars_[0] = v;
  f.children_.push_back(std::move(child));
  return f;
}

Formula Formula::forall(Var v, Formula child) {
  Formula f(FormulaKind::kForall);
  f.vars_[0] = v;
  f.children_.push_back(std::move(child));
  return f;
}

Formula Formula::truth() { return Formula(FormulaKind::kTrue); }
Formula Formula::falsity() { return Formula(FormulaKind::kFalse); }

bool operator==(const Formula& a, const Formula& b) {
  return a.kind_ == b.kind_ && a.vars_[0] == b.vars_[0] && a.vars_[1] == b.vars_[1] &&
         a.symbol_ == b.symbol_ && a.children_ == b.children_;
}

std::size_t quantifier_rank(const Formula& phi) {
  std::size_t inner = 0;
  for (const auto& c : phi.children()) inner = std::max(inner, quantifier_rank(c));
  bool quantifier = phi.kind() == FormulaKind::kExists || phi.kind() == FormulaKind::kForall;
  return inner + (quantifier ? 1 : 0);
}

std::size_t tree_size(const Formula& phi) {
  std::size_t size = 1;
  for (const auto& c : phi.children()) size += tree_size(c);
  return size;
}

namespace {

void collect_free(const Formula& phi, std::multiset<Var>& bound, std::set<Var>& out) {
  auto note = [&](Var v) {
    if (!bound.count(v)) out.insert(v);
  };
  switch (phi.kind()) {
    case FormulaKind::kLess:
    case FormulaKind::kEqual:
      note(phi.var(0));
      note(phi.var(1));
      break;
    case FormulaKind::kLetter:
      note(phi.var(0));
      break;
    case FormulaKind::kExists:
    case FormulaKind::kForall: {
      auto it = bound.insert(phi.var(0));
      collect_free(phi.children()[0], bound, out);
      bound.erase(it);
      break;
    }
    default:
      for (const auto& c : phi.children()) collect_free(c, bound, out);
  }
}

void write_sexpr(const Formula& phi, std::string& out) {
  switch (phi.kind()) {
    case FormulaKind::kLess:
      out += "(lt " + var_name(phi.var(0)) + " " + var_name(phi.var(1)) + ")";
      return;
    case FormulaKind::kEqual:
      out += "(eq " + var_name(phi.var(0)) + " " + var_name(phi.var(1)) + ")";
      return;
    case FormulaKind::kLetter:
      out += "(letter ";
      out += phi.symbol();
      out += " " + var_name(phi.var(0)) + ")";
      return;
    case FormulaKind::kTrue:
      out += "(true)";
      return;
    case FormulaKind::kFalse:
      out += "(false)";
      return;
    case FormulaKind::kExists:
    case FormulaKind::kForall:
      out += phi.kind() == FormulaKind::kExists ? "(exists " : "(forall ";
      out += var_name(phi.var(0)) + " ";
      write_sexpr(phi.children()[0], out);
      out += ")";
      return;
    case FormulaKind::kNot:
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
      out += phi.kind() == FormulaKind::kNot ? "(not" : phi.kind() == FormulaKind::kAnd ? "(and" : "(or";
      for (const auto& c : phi.children()) {
        out += " ";
        write_sexpr(c, out);
      }
      out += ")";
      return;
  }
}

class SexprParser {
 public:
  explicit SexprParser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return f;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string token() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    if (start == pos_) throw ParseError("expected token", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  Var variable() {
    std::size_t at = pos_;
    std::string t = token();
    if (t.size() < 2 || t[0] != 'v' ||
        !std::all_of(t.begin() + 1, t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("expected variable v<digits>, got '" + t + "'", at);
    return static_cast<Var>(std::stoul(t.substr(1)));
  }

  bool at_close() {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == ')';
  }

  Formula parse() {
    expect('(');
    std::size_t at = pos_;
    std::string head = token();
    Formula out = Formula::truth();
    if (head == "lt" || head == "eq") {
      Var x = variable();
      Var y = variable();
      out = head == "lt" ? Formula::less(x, y) : Formula::equal(x, y);
    } else if (head == "letter") {
      std::size_t sym_at = pos_;
      std::string sym = token();
      if (sym.size() != 1) throw ParseError("letter symbol must be one character", sym_at);
      out = Formula::letter(sym[0], variable());
    } else if (head == "not") {
      out = Formula::negation(parse());
    } else if (head == "and" || head == "or") {
      std::vector<Formula> children;
      while (!at_close()) children.push_back(parse());
      out = head == "and" ? Formula::conjunction(std::move(children))
                          : Formula::disjunction(std::move(children));
    } else if (head == "exists" || head == "forall") {
      Var v = variable();
      Formula body = parse();
      out = head == "exists" ? Formula::exists(v, std::move(body)) : Formula::forall(v, std::move(body));
    } else if (head == "true") {
      out = Formula::truth();
    } else if (head == "false") {
      out = Formula::falsity();
    } else {
      throw ParseError("unknown operator '" + head + "'", at);
    }
    expect(')');
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::set<Var> free_variables(const Formula& phi) {
  std::multiset<Var> bound;
  std::set<Var> out;
  collect_free(phi, bound, out);
  return out;
}

std::string var_name(Var v) { return "v" + std::to_string(v); }

std::string to_sexpr(const Formula& phi) {
  std::string out;
  write_sexpr(phi, out);
  return out;
}

Formula parse_sexpr(std::string_view text) { return SexprParser(text).parse_all(); }

}  // namespace rankprof
