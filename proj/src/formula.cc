#include "mspec/formula.hh"

#include <array>
#include <cctype>
#include <set>

namespace mspec {

namespace {

FormulaPtr make(Formula::Kind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}

}  // namespace

FormulaPtr f_true() {
  static const FormulaPtr t = make(Formula::Kind::True);
  return t;
}

FormulaPtr f_false() {
  static const FormulaPtr f = make(Formula::Kind::False);
  return f;
}

FormulaPtr f_var(const StateId& x) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Var;
  f->var = x;
  return f;
}

FormulaPtr f_dia(const Action& a, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Dia;
  f->act = a;
  f->lhs = std::move(body);
  return f;
}

FormulaPtr f_box(const Action& a, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Box;
  f->act = a;
  f->lhs = std::move(body);
  return f;
}

FormulaPtr f_and(FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::And;
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

FormulaPtr f_or(FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Or;
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

FormulaPtr f_not(FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Not;
  f->lhs = std::move(body);
  return f;
}

int formula_cmp(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return 0;
  if (!a) return -1;
  if (!b) return 1;
  if (a->kind != b->kind)
    return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
  if (int c = a->act.compare(b->act)) return c;
  if (int c = a->var.compare(b->var)) return c;
  if (int c = formula_cmp(a->lhs, b->lhs)) return c;
  return formula_cmp(a->rhs, b->rhs);
}

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  return formula_cmp(a, b) == 0;
}

namespace {

// Precedence levels: Or = 1, And = 2, unary prefixes = 3, atoms = 4.
int prec_of(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Or:
      return 1;
    case Formula::Kind::And:
      return 2;
    case Formula::Kind::Not:
    case Formula::Kind::Dia:
    case Formula::Kind::Box:
      return 3;
    default:
      return 4;
  }
}

void print(const FormulaPtr& f, int min_prec, std::string& out) {
  const int p = prec_of(*f);
  const bool paren = p < min_prec;
  if (paren) out += "(";
  switch (f->kind) {
    case Formula::Kind::True:
      out += "tt";
      break;
    case Formula::Kind::False:
      out += "ff";
      break;
    case Formula::Kind::Var:
      out += quote_name(f->var);
      break;
    case Formula::Kind::Dia:
      out += "<" + quote_name(f->act) + "> ";
      print(f->lhs, 3, out);
      break;
    case Formula::Kind::Box:
      out += "[" + quote_name(f->act) + "] ";
      print(f->lhs, 3, out);
      break;
    case Formula::Kind::Not:
      out += "!";
      print(f->lhs, 3, out);
      break;
    case Formula::Kind::And:
      print(f->lhs, 2, out);
      out += " & ";
      print(f->rhs, 3, out);
      break;
    case Formula::Kind::Or:
      print(f->lhs, 1, out);
      out += " | ";
      print(f->rhs, 2, out);
      break;
  }
  if (paren) out += ")";
}

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "system", "trrel",   "tr",  "alphabet", "states", "initial", "trans",
      "may",    "must",    "tran", "diamond",  "box",    "def",     "tt",
      "ff"};
  return words;
}

}  // namespace

std::string formula_str(const FormulaPtr& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

bool is_plain_name(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return !reserved_words().count(s);
}

std::string quote_name(const std::string& s) {
  if (is_plain_name(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += "\"";
  return out;
}

}  // namespace mspec
