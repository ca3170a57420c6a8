#include "rwp/formula.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace rwp {

namespace {

Formula make(Op op, int pos = -1, int sym = -1, Formula a = nullptr, Formula b = nullptr) {
  auto n = std::make_shared<FNode>();
  n->op = op;
  n->pos = pos;
  n->sym = sym;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

const Formula kTrue = make(Op::True);
const Formula kFalse = make(Op::False);

Formula fold(const std::vector<Formula>& fs, size_t lo, size_t hi, bool conj) {
  if (hi - lo == 1) return fs[lo];
  size_t mid = lo + (hi - lo + 1) / 2;
  Formula l = fold(fs, lo, mid, conj), r = fold(fs, mid, hi, conj);
  return conj ? f_and(l, r) : f_or(l, r);
}

}  // namespace

Formula f_true() { return kTrue; }
Formula f_false() { return kFalse; }

Formula atom(int pos, int sym) {
  if (pos < 0 || sym < 0) throw std::invalid_argument("atom: negative position or symbol");
  return make(Op::Atom, pos, sym);
}

Formula f_and(Formula a, Formula b) {
  if (a->op == Op::False || b->op == Op::False) return kFalse;
  if (a->op == Op::True) return b;
  if (b->op == Op::True) return a;
  return make(Op::And, -1, -1, std::move(a), std::move(b));
}

Formula f_or(Formula a, Formula b) {
  if (a->op == Op::True || b->op == Op::True) return kTrue;
  if (a->op == Op::False) return b;
  if (b->op == Op::False) return a;
  return make(Op::Or, -1, -1, std::move(a), std::move(b));
}

Formula f_not(Formula a) {
  if (a->op == Op::True) return kFalse;
  if (a->op == Op::False) return kTrue;
  return make(Op::Not, -1, -1, std::move(a));
}

Formula all_of(const std::vector<Formula>& fs) { return fs.empty() ? kTrue : fold(fs, 0, fs.size(), true); }
Formula any_of(const std::vector<Formula>& fs) { return fs.empty() ? kFalse : fold(fs, 0, fs.size(), false); }

Formula in_set(int pos, const std::vector<int>& syms) {
  std::vector<Formula> fs;
  for (int s : syms) fs.push_back(atom(pos, s));
  return any_of(fs);
}

bool eval(const Formula& f, const std::vector<int>& u) {
  switch (f->op) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom:
      if (f->pos >= static_cast<int>(u.size())) throw std::out_of_range("eval: atom position beyond control word");
      return u[f->pos] == f->sym;
    case Op::And: return eval(f->a, u) && eval(f->b, u);
    case Op::Or: return eval(f->a, u) || eval(f->b, u);
    case Op::Not: return !eval(f->a, u);
  }
  return false;
}

int depth(const Formula& f) {
  switch (f->op) {
    case Op::And:
    case Op::Or: return 1 + std::max(depth(f->a), depth(f->b));
    case Op::Not: return 1 + depth(f->a);
    default: return 0;
  }
}

long long formula_size(const Formula& f) {
  switch (f->op) {
    case Op::And:
    case Op::Or: return 1 + formula_size(f->a) + formula_size(f->b);
    case Op::Not: return 1 + formula_size(f->a);
    default: return 1;
  }
}

int max_position(const Formula& f) {
  switch (f->op) {
    case Op::Atom: return f->pos;
    case Op::And:
    case Op::Or: return std::max(max_position(f->a), max_position(f->b));
    case Op::Not: return max_position(f->a);
    default: return -1;
  }
}

namespace {

struct Parser {
  const std::string& s;
  const std::vector<std::string>& names;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  std::string token() {
    skip();
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' && s[j] != ')') ++j;
    if (j == i) throw std::invalid_argument("parse_formula: expected token at offset " + std::to_string(i));
    std::string t = s.substr(i, j - i);
    i = j;
    return t;
  }
  void expect(char c) {
    skip();
    if (i >= s.size() || s[i] != c)
      throw std::invalid_argument(std::string("parse_formula: expected '") + c + "' at offset " + std::to_string(i));
    ++i;
  }
  int symbol(const std::string& t) {
    auto it = std::find(names.begin(), names.end(), t);
    if (it != names.end()) return static_cast<int>(it - names.begin());
    try {
      size_t used = 0;
      int v = std::stoi(t, &used);
      if (used == t.size()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("parse_formula: unknown symbol '" + t + "'");
  }
  Formula expr() {
    skip();
    if (i < s.size() && s[i] != '(') {
      std::string t = token();
      if (t == "true") return f_true();
      if (t == "false") return f_false();
      throw std::invalid_argument("parse_formula: unexpected token '" + t + "'");
    }
    expect('(');
    std::string head = token();
    Formula out;
    if (head == "atom") {
      int pos = std::stoi(token());
      out = atom(pos, symbol(token()));
    } else if (head == "not") {
      out = f_not(expr());
    } else if (head == "and" || head == "or") {
      std::vector<Formula> args;
      skip();
      while (i < s.size() && s[i] != ')') {
        args.push_back(expr());
        skip();
      }
      if (args.empty()) throw std::invalid_argument("parse_formula: empty " + head);
      out = args[0];
      for (size_t k = 1; k < args.size(); ++k) out = head == "and" ? f_and(out, args[k]) : f_or(out, args[k]);
    } else {
      throw std::invalid_argument("parse_formula: unknown connective '" + head + "'");
    }
    expect(')');
    return out;
  }
};

}  // namespace

Formula parse_formula(const std::string& text, const std::vector<std::string>& names) {
  Parser p{text, names};
  Formula f = p.expr();
  p.skip();
  if (p.i != text.size()) throw std::invalid_argument("parse_formula: trailing input");
  return f;
}

std::string to_sexpr(const Formula& f, const std::vector<std::string>& names) {
  switch (f->op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: {
      std::string sym = f->sym < static_cast<int>(names.size()) ? names[f->sym] : std::to_string(f->sym);
      return "(atom " + std::to_string(f->pos) + " " + sym + ")";
    }
    case Op::And: return "(and " + to_sexpr(f->a, names) + " " + to_sexpr(f->b, names) + ")";
    case Op::Or: return "(or " + to_sexpr(f->a, names) + " " + to_sexpr(f->b, names) + ")";
    case Op::Not: return "(not " + to_sexpr(f->a, names) + ")";
  }
  return "";
}

}  // namespace rwp
