#include "mspec/types.hh"

#include <algorithm>
#include <sstream>

namespace mspec {

namespace {

const std::set<AdmissibleSet> kEmptyTran{};
const StateSet kEmptyVars{};

std::string show_pair(const Action& a, const StateId& t) {
  // Raw join: derived-state names read as plain labels ("{a.(t1,t2)}").
  // They are display names, not a parseable encoding, so names containing
  // separators are not re-escaped here.
  return a + "." + t;
}

void check_state(std::vector<std::string>& out, const StateSet& states,
                 const StateId& s, const std::string& role) {
  if (!states.count(s))
    out.push_back(role + " uses undeclared state " + quote_name(s));
}

void check_action(std::vector<std::string>& out, const Alphabet& sigma,
                  const Action& a, const std::string& role) {
  if (!sigma.count(a))
    out.push_back(role + " uses undeclared action " + quote_name(a));
}

void check_initials(std::vector<std::string>& out, const StateSet& states,
                    const StateSet& initials) {
  for (const auto& s : initials) check_state(out, states, s, "initial");
}

// Collect the free variables of a formula (diamond/box targets and bare
// variable references).
void collect_vars(const FormulaPtr& f, StateSet& out) {
  if (!f) return;
  if (f->kind == Formula::Kind::Var) out.insert(f->var);
  collect_vars(f->lhs, out);
  collect_vars(f->rhs, out);
}

void collect_actions(const FormulaPtr& f, Alphabet& out) {
  if (!f) return;
  if (f->kind == Formula::Kind::Dia || f->kind == Formula::Kind::Box)
    out.insert(f->act);
  collect_actions(f->lhs, out);
  collect_actions(f->rhs, out);
}

std::vector<std::string> finish(std::vector<std::string> out) {
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::map<StateId, StateId> canonical_map(const StateSet& states) {
  std::map<StateId, StateId> m;
  std::size_t i = 0;
  for (const auto& s : states) m[s] = "s" + std::to_string(i++);
  return m;
}

}  // namespace

std::string show_admissible(const AdmissibleSet& n) {
  std::string out = "{";
  bool first = true;
  for (const auto& [a, t] : n) {
    if (!first) out += ",";
    first = false;
    out += show_pair(a, t);
  }
  return out + "}";
}

const std::set<AdmissibleSet>& Aa::tran_of(const StateId& s) const {
  auto it = tran.find(s);
  return it == tran.end() ? kEmptyTran : it->second;
}

const std::set<AdmissibleSet>& NuExprNF::diamonds_of(const StateId& x) const {
  auto it = diamond.find(x);
  return it == diamond.end() ? kEmptyTran : it->second;
}

const StateSet& NuExprNF::box_of(const StateId& x, const Action& a) const {
  auto it = box.find({x, a});
  return it == box.end() ? kEmptyVars : it->second;
}

bool HybridExpr::operator==(const HybridExpr& o) const {
  if (alphabet != o.alphabet || vars != o.vars || initials != o.initials)
    return false;
  if (phi.size() != o.phi.size()) return false;
  for (auto it1 = phi.begin(), it2 = o.phi.begin(); it1 != phi.end();
       ++it1, ++it2) {
    if (it1->first != it2->first || !formula_eq(it1->second, it2->second))
      return false;
  }
  return true;
}

bool HmlDecl::operator==(const HmlDecl& o) const {
  if (alphabet != o.alphabet || vars != o.vars || initials != o.initials)
    return false;
  if (delta.size() != o.delta.size()) return false;
  for (auto it1 = delta.begin(), it2 = o.delta.begin(); it1 != delta.end();
       ++it1, ++it2) {
    if (it1->first != it2->first || !formula_eq(it1->second, it2->second))
      return false;
  }
  return true;
}

// --- validation ------------------------------------------------------------

std::vector<std::string> validate(const Lts& l) {
  std::vector<std::string> out;
  check_initials(out, l.states, l.initials);
  for (const auto& [s, a, t] : l.trans) {
    check_state(out, l.states, s, "transition source");
    check_action(out, l.alphabet, a, "transition");
    check_state(out, l.states, t, "transition target");
  }
  return finish(std::move(out));
}

std::vector<std::string> validate(const Dmts& d) {
  std::vector<std::string> out;
  check_initials(out, d.states, d.initials);
  for (const auto& [s, a, t] : d.may) {
    check_state(out, d.states, s, "may source");
    check_action(out, d.alphabet, a, "may transition");
    check_state(out, d.states, t, "may target");
  }
  for (const auto& [s, n] : d.must) {
    check_state(out, d.states, s, "must source");
    for (const auto& [a, t] : n) {
      check_action(out, d.alphabet, a, "must transition");
      check_state(out, d.states, t, "must target");
      if (!d.may.count({s, a, t}))
        out.push_back("must pair " + show_pair(a, t) + " at state " +
                      quote_name(s) + " has no underlying may transition");
    }
  }
  return finish(std::move(out));
}

std::vector<std::string> validate(const Aa& a) {
  std::vector<std::string> out;
  check_initials(out, a.states, a.initials);
  for (const auto& [s, tts] : a.tran) {
    check_state(out, a.states, s, "tran source");
    if (tts.empty())
      out.push_back("tran entry for state " + quote_name(s) +
                    " is empty; omit the entry instead");
    for (const auto& m : tts) {
      for (const auto& [act, t] : m) {
        check_action(out, a.alphabet, act, "tran set");
        check_state(out, a.states, t, "tran target");
      }
    }
  }
  for (const auto& s : a.initials) {
    if (a.tran_of(s).empty())
      out.push_back("initial state " + quote_name(s) +
                    " admits no transition set (inconsistent)");
  }
  return finish(std::move(out));
}

std::vector<std::string> validate(const NuExprNF& n) {
  std::vector<std::string> out;
  check_initials(out, n.vars, n.initials);
  for (const auto& [x, sets] : n.diamond) {
    check_state(out, n.vars, x, "diamond source");
    if (sets.empty())
      out.push_back("diamond entry for variable " + quote_name(x) +
                    " is empty; omit the entry instead");
    for (const auto& m : sets) {
      for (const auto& [a, y] : m) {
        check_action(out, n.alphabet, a, "diamond clause");
        check_state(out, n.vars, y, "diamond target");
        if (!n.box_of(x, a).count(y))
          out.push_back("diamond pair " + show_pair(a, y) + " at variable " +
                        quote_name(x) + " is not covered by the box set");
      }
    }
  }
  for (const auto& [key, ys] : n.box) {
    const auto& [x, a] = key;
    check_state(out, n.vars, x, "box source");
    check_action(out, n.alphabet, a, "box entry");
    if (ys.empty())
      out.push_back("box entry for variable " + quote_name(x) + " action " +
                    quote_name(a) + " is empty; omit the entry instead");
    for (const auto& y : ys) check_state(out, n.vars, y, "box target");
  }
  return finish(std::move(out));
}

std::vector<std::string> validate(const HybridExpr& e) {
  std::vector<std::string> out;
  check_initials(out, e.vars, e.initials);
  for (const auto& x : e.vars) {
    if (!e.phi.count(x))
      out.push_back("variable " + quote_name(x) + " has no formula");
  }
  for (const auto& [x, f] : e.phi) {
    check_state(out, e.vars, x, "formula");
    StateSet used;
    collect_vars(f, used);
    for (const auto& y : used) check_state(out, e.vars, y, "formula");
    Alphabet acts;
    collect_actions(f, acts);
    for (const auto& a : acts) check_action(out, e.alphabet, a, "formula");
    // Hybrid formulas are built from tt, ff, diamonds to variables, and
    // boolean connectives; bare variables and boxes are not part of the
    // formula language here.
    std::vector<FormulaPtr> stack{f};
    while (!stack.empty()) {
      FormulaPtr g = stack.back();
      stack.pop_back();
      if (!g) continue;
      if (g->kind == Formula::Kind::Box)
        out.push_back("formula of " + quote_name(x) +
                      " contains a box; boxes are not allowed here");
      if (g->kind == Formula::Kind::Var)
        out.push_back("formula of " + quote_name(x) +
                      " contains a bare variable " + quote_name(g->var) +
                      "; variables may appear only under diamonds");
      if (g->kind == Formula::Kind::Dia) {
        if (g->lhs->kind != Formula::Kind::Var)
          out.push_back("formula of " + quote_name(x) +
                        " has a diamond whose body is not a variable");
        continue;  // do not descend: the variable under the diamond is fine
      }
      stack.push_back(g->lhs);
      stack.push_back(g->rhs);
    }
  }
  return finish(std::move(out));
}

std::vector<std::string> validate(const HmlDecl& n) {
  std::vector<std::string> out;
  check_initials(out, n.vars, n.initials);
  for (const auto& x : n.vars) {
    if (!n.delta.count(x))
      out.push_back("variable " + quote_name(x) + " has no declaration");
  }
  for (const auto& [x, f] : n.delta) {
    check_state(out, n.vars, x, "declaration");
    StateSet used;
    collect_vars(f, used);
    for (const auto& y : used) check_state(out, n.vars, y, "declaration");
    Alphabet acts;
    collect_actions(f, acts);
    for (const auto& a : acts) check_action(out, n.alphabet, a, "declaration");
    // Declarations are negation-free.
    std::vector<FormulaPtr> stack{f};
    while (!stack.empty()) {
      FormulaPtr g = stack.back();
      stack.pop_back();
      if (!g) continue;
      if (g->kind == Formula::Kind::Not)
        out.push_back("declaration of " + quote_name(x) +
                      " contains negation; declarations are negation-free");
      stack.push_back(g->lhs);
      stack.push_back(g->rhs);
    }
  }
  return finish(std::move(out));
}

// --- implementations -------------------------------------------------------

bool is_implementation(const Dmts& d) {
  // Exactly the singleton must {(a,t)} for each may edge (s,a,t), and
  // nothing else.
  std::set<std::pair<StateId, AdmissibleSet>> expect;
  for (const auto& [s, a, t] : d.may) expect.insert({s, AdmissibleSet{{a, t}}});
  return d.must == expect;
}

bool is_implementation(const Aa& a) {
  for (const auto& s : a.states) {
    if (a.tran_of(s).size() != 1) return false;
  }
  return true;
}

bool is_implementation(const NuExprNF& n) {
  for (const auto& x : n.vars) {
    std::set<AdmissibleSet> expect;
    for (const auto& a : n.alphabet) {
      for (const auto& y : n.box_of(x, a)) expect.insert(AdmissibleSet{{a, y}});
    }
    if (n.diamonds_of(x) != expect) return false;
  }
  return true;
}

// --- as_lts ----------------------------------------------------------------

Lts as_lts(const Dmts& d) {
  if (!is_implementation(d))
    throw MspecError("as_lts: value is not an implementation");
  return Lts{d.alphabet, d.states, d.initials, d.may};
}

Lts as_lts(const Aa& a) {
  if (!is_implementation(a))
    throw MspecError("as_lts: value is not an implementation");
  Lts l{a.alphabet, a.states, a.initials, {}};
  for (const auto& s : a.states) {
    for (const auto& [act, t] : *a.tran_of(s).begin())
      l.trans.insert({s, act, t});
  }
  return l;
}

Lts as_lts(const NuExprNF& n) {
  if (!is_implementation(n))
    throw MspecError("as_lts: value is not an implementation");
  Lts l{n.alphabet, n.vars, n.initials, {}};
  for (const auto& [key, ys] : n.box) {
    for (const auto& y : ys) l.trans.insert({key.first, key.second, y});
  }
  return l;
}

// --- embeddings ------------------------------------------------------------

Dmts embed_lts_dmts(const Lts& l) {
  Dmts d{l.alphabet, l.states, l.initials, l.trans, {}};
  for (const auto& [s, a, t] : l.trans) d.must.insert({s, AdmissibleSet{{a, t}}});
  return d;
}

Aa embed_lts_aa(const Lts& l) {
  Aa a{l.alphabet, l.states, l.initials, {}};
  std::map<StateId, AdmissibleSet> post;
  for (const auto& s : l.states) post[s];  // ensure every state has an entry
  for (const auto& [s, act, t] : l.trans) post[s].insert({act, t});
  for (const auto& [s, m] : post) a.tran[s] = {m};
  return a;
}

NuExprNF embed_lts_nu(const Lts& l) {
  NuExprNF n{l.alphabet, l.states, l.initials, {}, {}};
  for (const auto& [s, a, t] : l.trans) {
    n.box[{s, a}].insert(t);
    n.diamond[s].insert(AdmissibleSet{{a, t}});
  }
  return n;
}

HybridExpr embed_lts_hybrid(const Lts& l) {
  // Phi(s) characterizes the exact successor set of s: each outgoing step
  // must be possible, and every possible step must be one of them.
  HybridExpr e{l.alphabet, l.states, l.initials, {}};
  std::map<StateId, AdmissibleSet> post;
  for (const auto& s : l.states) post[s];
  for (const auto& [s, a, t] : l.trans) post[s].insert({a, t});
  for (const auto& [s, m] : post) {
    FormulaPtr f = f_true();
    for (const auto& [a, t] : m) f = f_and(f, f_dia(a, f_var(t)));
    // Forbid everything not in m.
    for (const auto& a : l.alphabet) {
      for (const auto& t : l.states) {
        if (!m.count({a, t})) f = f_and(f, f_not(f_dia(a, f_var(t))));
      }
    }
    e.phi[s] = f;
  }
  return e;
}

// --- canonical renaming ----------------------------------------------------

Lts canonical_rename(const Lts& l) {
  auto m = canonical_map(l.states);
  Lts out{l.alphabet, {}, {}, {}};
  for (const auto& [k, v] : m) out.states.insert(v);
  for (const auto& s : l.initials) out.initials.insert(m.at(s));
  for (const auto& [s, a, t] : l.trans) out.trans.insert({m.at(s), a, m.at(t)});
  return out;
}

Dmts canonical_rename(const Dmts& d) {
  auto m = canonical_map(d.states);
  Dmts out{d.alphabet, {}, {}, {}, {}};
  for (const auto& [k, v] : m) out.states.insert(v);
  for (const auto& s : d.initials) out.initials.insert(m.at(s));
  for (const auto& [s, a, t] : d.may) out.may.insert({m.at(s), a, m.at(t)});
  for (const auto& [s, n] : d.must) {
    AdmissibleSet nn;
    for (const auto& [a, t] : n) nn.insert({a, m.at(t)});
    out.must.insert({m.at(s), nn});
  }
  return out;
}

Aa canonical_rename(const Aa& a) {
  auto m = canonical_map(a.states);
  Aa out{a.alphabet, {}, {}, {}};
  for (const auto& [k, v] : m) out.states.insert(v);
  for (const auto& s : a.initials) out.initials.insert(m.at(s));
  for (const auto& [s, tts] : a.tran) {
    std::set<AdmissibleSet> nn;
    for (const auto& mm : tts) {
      AdmissibleSet one;
      for (const auto& [act, t] : mm) one.insert({act, m.at(t)});
      nn.insert(one);
    }
    out.tran[m.at(s)] = nn;
  }
  return out;
}

NuExprNF canonical_rename(const NuExprNF& n) {
  auto m = canonical_map(n.vars);
  NuExprNF out{n.alphabet, {}, {}, {}, {}};
  for (const auto& [k, v] : m) out.vars.insert(v);
  for (const auto& s : n.initials) out.initials.insert(m.at(s));
  for (const auto& [x, sets] : n.diamond) {
    std::set<AdmissibleSet> nn;
    for (const auto& mm : sets) {
      AdmissibleSet one;
      for (const auto& [act, y] : mm) one.insert({act, m.at(y)});
      nn.insert(one);
    }
    out.diamond[m.at(x)] = nn;
  }
  for (const auto& [key, ys] : n.box) {
    StateSet nn;
    for (const auto& y : ys) nn.insert(m.at(y));
    out.box[{m.at(key.first), key.second}] = nn;
  }
  return out;
}

}  // namespace mspec
