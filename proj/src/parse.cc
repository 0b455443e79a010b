#include "mspec/parse.hh"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

namespace mspec {
namespace {

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "system", "trrel", "tr",      "alphabet", "states",
      "initial", "trans", "may",    "must",     "tran",
      "diamond", "box",   "def",    "tt",       "ff"};
  return words;
}

struct Token {
  enum class Type { Ident, Quoted, Punct, End };
  Type type = Type::End;
  std::string text;  // identifier text, unescaped name, or the punct char
  int line = 1;
  int col = 1;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  const std::string punct = "{};,=|&!<>[]()";
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(text[i]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (c == '"') {
      advance(c);
      std::string s;
      bool closed = false;
      while (i < text.size()) {
        char d = text[i];
        if (d == '\n')
          throw ParseError("newline inside quoted name", line, col);
        if (d == '"') {
          advance(d);
          closed = true;
          break;
        }
        if (d == '\\') {
          advance(d);
          if (i >= text.size())
            throw ParseError("unterminated escape in quoted name", line, col);
          char e = text[i];
          if (e != '"' && e != '\\')
            throw ParseError(std::string("invalid escape '\\") + e +
                                 "' in quoted name",
                             line, col);
          s += e;
          advance(e);
          continue;
        }
        s += d;
        advance(d);
      }
      if (!closed) throw ParseError("unterminated quoted name", t.line, t.col);
      t.type = Token::Type::Quoted;
      t.text = std::move(s);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_')) {
        s += text[i];
        advance(text[i]);
      }
      t.type = Token::Type::Ident;
      t.text = std::move(s);
      out.push_back(std::move(t));
      continue;
    }
    if (punct.find(c) != std::string::npos) {
      t.type = Token::Type::Punct;
      t.text = std::string(1, c);
      advance(c);
      out.push_back(std::move(t));
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line,
                     col);
  }
  Token end;
  end.type = Token::Type::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[i_]; }

  const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string where;
    switch (t.type) {
      case Token::Type::End:
        where = "end of input";
        break;
      case Token::Type::Quoted:
        where = "\"" + t.text + "\"";
        break;
      default:
        where = "'" + t.text + "'";
        break;
    }
    throw ParseError(msg + " (found " + where + ")", t.line, t.col);
  }

  bool at_punct(const char* p) const {
    return peek().type == Token::Type::Punct && peek().text == p;
  }

  bool at_keyword(const char* k) const {
    return peek().type == Token::Type::Ident && peek().text == k;
  }

  void expect_punct(const char* p) {
    if (!at_punct(p)) fail(std::string("expected '") + p + "'");
    next();
  }

  void expect_keyword(const char* k) {
    if (!at_keyword(k)) fail(std::string("expected '") + k + "'");
    next();
  }

  bool at_name() const {
    if (peek().type == Token::Type::Quoted) return true;
    return peek().type == Token::Type::Ident &&
           !reserved_words().count(peek().text);
  }

  std::string name(const char* what) {
    if (peek().type == Token::Type::Ident &&
        reserved_words().count(peek().text))
      fail(std::string("reserved word used as ") + what +
           " (quote it to use it as a name)");
    if (!at_name()) fail(std::string("expected ") + what);
    return next().text;
  }

  // name ("," name)* — possibly empty, ended by ';' or '}'
  std::vector<std::string> namelist(const char* what) {
    std::vector<std::string> out;
    if (!at_name()) return out;
    out.push_back(name(what));
    while (at_punct(",")) {
      next();
      out.push_back(name(what));
    }
    return out;
  }

  // (name name ("," name name)*)? within braces: "a t, b u"
  AdmissibleSet admissible() {
    AdmissibleSet out;
    if (!at_name()) return out;
    while (true) {
      std::string a = name("action");
      std::string t = name("state");
      out.insert({std::move(a), std::move(t)});
      if (!at_punct(",")) break;
      next();
    }
    return out;
  }

  FormulaPtr formula() { return formula_or(); }

 private:
  FormulaPtr formula_or() {
    FormulaPtr f = formula_and();
    while (at_punct("|")) {
      next();
      f = f_or(f, formula_and());
    }
    return f;
  }

  FormulaPtr formula_and() {
    FormulaPtr f = formula_unary();
    while (at_punct("&")) {
      next();
      f = f_and(f, formula_unary());
    }
    return f;
  }

  FormulaPtr formula_unary() {
    if (at_punct("!")) {
      next();
      return f_not(formula_unary());
    }
    if (at_punct("<")) {
      next();
      std::string a = name("action");
      expect_punct(">");
      return f_dia(a, formula_unary());
    }
    if (at_punct("[")) {
      next();
      std::vector<std::string> acts;
      acts.push_back(name("action"));
      while (at_punct(",")) {
        next();
        acts.push_back(name("action"));
      }
      expect_punct("]");
      FormulaPtr body = formula_unary();
      FormulaPtr f = f_box(acts[0], body);
      for (std::size_t k = 1; k < acts.size(); ++k)
        f = f_and(f, f_box(acts[k], body));
      return f;
    }
    if (at_punct("(")) {
      next();
      FormulaPtr f = formula_or();
      expect_punct(")");
      return f;
    }
    if (at_keyword("tt")) {
      next();
      return f_true();
    }
    if (at_keyword("ff")) {
      next();
      return f_false();
    }
    if (at_name()) return f_var(name("variable"));
    fail("expected a formula");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// Clause material collected while scanning a system block; assembled into
// the kind-specific struct once the closing brace is reached.
struct BlockData {
  Alphabet alphabet;
  StateSet states;
  StateSet initials;
  std::set<Transition> trans;                            // lts
  std::set<Transition> may;                              // dmts
  std::set<std::pair<StateId, AdmissibleSet>> must;      // dmts
  std::map<StateId, std::set<AdmissibleSet>> tran;       // aa
  std::map<StateId, std::set<AdmissibleSet>> diamond;    // nu
  std::map<std::pair<StateId, Action>, StateSet> box;    // nu
  std::map<StateId, FormulaPtr> defs;                    // hml / hybrid
};

System assemble(const std::string& kind, BlockData&& b) {
  if (kind == "lts") {
    Lts l;
    l.alphabet = std::move(b.alphabet);
    l.states = std::move(b.states);
    l.initials = std::move(b.initials);
    l.trans = std::move(b.trans);
    return l;
  }
  if (kind == "dmts") {
    Dmts d;
    d.alphabet = std::move(b.alphabet);
    d.states = std::move(b.states);
    d.initials = std::move(b.initials);
    d.may = std::move(b.may);
    d.must = std::move(b.must);
    return d;
  }
  if (kind == "aa") {
    Aa a;
    a.alphabet = std::move(b.alphabet);
    a.states = std::move(b.states);
    a.initials = std::move(b.initials);
    a.tran = std::move(b.tran);
    return a;
  }
  if (kind == "nu") {
    NuExprNF n;
    n.alphabet = std::move(b.alphabet);
    n.vars = std::move(b.states);
    n.initials = std::move(b.initials);
    n.diamond = std::move(b.diamond);
    n.box = std::move(b.box);
    return n;
  }
  if (kind == "hml") {
    HmlDecl n;
    n.alphabet = std::move(b.alphabet);
    n.vars = std::move(b.states);
    n.initials = std::move(b.initials);
    n.delta = std::move(b.defs);
    return n;
  }
  HybridExpr e;
  e.alphabet = std::move(b.alphabet);
  e.vars = std::move(b.states);
  e.initials = std::move(b.initials);
  e.phi = std::move(b.defs);
  return e;
}

NamedSystem parse_system(Parser& p) {
  p.expect_keyword("system");
  const Token& kt = p.peek();
  static const std::set<std::string> kinds = {"lts", "dmts", "aa",
                                              "nu",  "hml",  "hybrid"};
  if (kt.type != Token::Type::Ident || !kinds.count(kt.text))
    p.fail("expected a system kind (lts, dmts, aa, nu, hml, hybrid)");
  std::string kind = p.next().text;
  std::string nm = p.name("system name");
  p.expect_punct("{");
  BlockData b;
  while (!p.at_punct("}")) {
    if (p.at_keyword("alphabet")) {
      p.next();
      for (auto& a : p.namelist("action")) b.alphabet.insert(std::move(a));
      p.expect_punct(";");
    } else if (p.at_keyword("states")) {
      p.next();
      for (auto& s : p.namelist("state")) b.states.insert(std::move(s));
      p.expect_punct(";");
    } else if (p.at_keyword("initial")) {
      p.next();
      for (auto& s : p.namelist("state")) b.initials.insert(std::move(s));
      p.expect_punct(";");
    } else if (p.at_keyword("trans")) {
      if (kind != "lts") p.fail("'trans' is only valid in an lts block");
      p.next();
      std::string s = p.name("state");
      std::string a = p.name("action");
      std::string t = p.name("state");
      b.trans.insert({std::move(s), std::move(a), std::move(t)});
      p.expect_punct(";");
    } else if (p.at_keyword("may")) {
      if (kind != "dmts") p.fail("'may' is only valid in a dmts block");
      p.next();
      std::string s = p.name("state");
      std::string a = p.name("action");
      std::string t = p.name("state");
      b.may.insert({std::move(s), std::move(a), std::move(t)});
      p.expect_punct(";");
    } else if (p.at_keyword("must")) {
      if (kind != "dmts") p.fail("'must' is only valid in a dmts block");
      p.next();
      std::string s = p.name("state");
      p.expect_punct("{");
      AdmissibleSet n = p.admissible();
      p.expect_punct("}");
      b.must.insert({std::move(s), std::move(n)});
      p.expect_punct(";");
    } else if (p.at_keyword("tran")) {
      if (kind != "aa") p.fail("'tran' is only valid in an aa block");
      p.next();
      std::string s = p.name("state");
      while (p.at_punct("{")) {
        p.next();
        AdmissibleSet m = p.admissible();
        p.expect_punct("}");
        b.tran[s].insert(std::move(m));
      }
      p.expect_punct(";");
    } else if (p.at_keyword("diamond")) {
      if (kind != "nu") p.fail("'diamond' is only valid in a nu block");
      p.next();
      std::string x = p.name("variable");
      p.expect_punct("{");
      AdmissibleSet n = p.admissible();
      p.expect_punct("}");
      b.diamond[std::move(x)].insert(std::move(n));
      p.expect_punct(";");
    } else if (p.at_keyword("box")) {
      if (kind != "nu") p.fail("'box' is only valid in a nu block");
      p.next();
      std::string x = p.name("variable");
      std::string a = p.name("action");
      p.expect_punct("{");
      std::vector<std::string> ys = p.namelist("variable");
      p.expect_punct("}");
      if (!ys.empty()) {
        StateSet& dst = b.box[{std::move(x), std::move(a)}];
        for (auto& y : ys) dst.insert(std::move(y));
      }
      p.expect_punct(";");
    } else if (p.at_keyword("def")) {
      if (kind != "hml" && kind != "hybrid")
        p.fail("'def' is only valid in an hml or hybrid block");
      p.next();
      std::string x = p.name("variable");
      p.expect_punct("=");
      FormulaPtr f = p.formula();
      if (b.defs.count(x))
        p.fail("duplicate definition of variable '" + x + "'");
      b.defs.emplace(std::move(x), std::move(f));
      p.expect_punct(";");
    } else {
      p.fail("expected a clause or '}'");
    }
  }
  p.expect_punct("}");
  return {std::move(nm), assemble(kind, std::move(b))};
}

NamedTrRel parse_trrel(Parser& p) {
  p.expect_keyword("trrel");
  std::string nm = p.name("relation name");
  p.expect_punct("{");
  TrRelation rel;
  while (!p.at_punct("}")) {
    p.expect_keyword("tr");
    std::string s = p.name("state");
    std::string t = p.name("state");
    rel.pairs.insert({std::move(s), std::move(t)});
    p.expect_punct(";");
  }
  p.expect_punct("}");
  return {std::move(nm), std::move(rel)};
}

struct ValidateVisitor {
  std::vector<std::string> operator()(const Lts& v) { return validate(v); }
  std::vector<std::string> operator()(const Dmts& v) { return validate(v); }
  std::vector<std::string> operator()(const Aa& v) { return validate(v); }
  std::vector<std::string> operator()(const NuExprNF& v) {
    return validate(v);
  }
  std::vector<std::string> operator()(const HybridExpr& v) {
    return validate(v);
  }
  std::vector<std::string> operator()(const HmlDecl& v) { return validate(v); }
};

}  // namespace

ParseError::ParseError(const std::string& msg, int line_, int col_)
    : MspecError(msg + " at line " + std::to_string(line_) + ", column " +
                 std::to_string(col_)),
      line(line_),
      col(col_) {}

std::string system_kind(const System& s) {
  switch (s.index()) {
    case 0:
      return "lts";
    case 1:
      return "dmts";
    case 2:
      return "aa";
    case 3:
      return "nu";
    case 4:
      return "hybrid";
    default:
      return "hml";
  }
}

const NamedSystem* SpecFile::find_system(const std::string& name) const {
  for (const NamedSystem& s : systems)
    if (s.name == name) return &s;
  return nullptr;
}

const NamedTrRel* SpecFile::find_trrel(const std::string& name) const {
  for (const NamedTrRel& r : trrels)
    if (r.name == name) return &r;
  return nullptr;
}

SpecFile parse_spec(const std::string& text) {
  Parser p(lex(text));
  SpecFile out;
  while (p.peek().type != Token::Type::End) {
    if (p.at_keyword("system")) {
      NamedSystem s = parse_system(p);
      if (out.find_system(s.name))
        throw MspecError("duplicate system name '" + s.name + "'");
      std::vector<std::string> errs = std::visit(ValidateVisitor{}, s.sys);
      if (!errs.empty()) {
        std::string msg = "system '" + s.name + "' is not well-formed:";
        for (const std::string& e : errs) msg += "\n  " + e;
        throw MspecError(msg);
      }
      out.systems.push_back(std::move(s));
    } else if (p.at_keyword("trrel")) {
      NamedTrRel r = parse_trrel(p);
      if (out.find_trrel(r.name))
        throw MspecError("duplicate relation name '" + r.name + "'");
      out.trrels.push_back(std::move(r));
    } else {
      p.fail("expected 'system' or 'trrel'");
    }
  }
  return out;
}

FormulaPtr parse_formula(const std::string& text) {
  Parser p(lex(text));
  FormulaPtr f = p.formula();
  if (p.peek().type != Token::Type::End) p.fail("trailing input after formula");
  return f;
}

}  // namespace mspec
