#include "mspec/semantics.hh"

#include <algorithm>
#include <vector>

namespace mspec {

namespace {

constexpr std::size_t kMaxUniverseBits = 20;

struct Universe {
  std::vector<std::pair<Action, StateId>> elems;  // sorted
  std::map<std::pair<Action, StateId>, std::size_t> index;

  explicit Universe(const HybridExpr& e) {
    for (const auto& a : e.alphabet) {
      for (const auto& x : e.vars) elems.push_back({a, x});
    }
    std::sort(elems.begin(), elems.end());
    if (elems.size() > kMaxUniverseBits)
      throw MspecError(
          "eval_hybrid: universe alphabet x vars exceeds 20 elements");
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  }
};

// A denotation is a characteristic vector over all subsets of the universe,
// indexed by bitmask.
using Deno = std::vector<char>;

Deno eval_deno(const Universe& u, const FormulaPtr& f) {
  const std::size_t n = std::size_t{1} << u.elems.size();
  switch (f->kind) {
    case Formula::Kind::True:
      return Deno(n, 1);
    case Formula::Kind::False:
      return Deno(n, 0);
    case Formula::Kind::Dia: {
      if (f->lhs->kind != Formula::Kind::Var)
        throw MspecError("eval_hybrid: diamond body must be a variable");
      auto it = u.index.find({f->act, f->lhs->var});
      if (it == u.index.end())
        throw MspecError("eval_hybrid: diamond over undeclared action or variable");
      const std::size_t bit = it->second;
      Deno d(n, 0);
      for (std::size_t m = 0; m < n; ++m) d[m] = (m >> bit) & 1;
      return d;
    }
    case Formula::Kind::Not: {
      Deno d = eval_deno(u, f->lhs);
      for (auto& b : d) b = !b;
      return d;
    }
    case Formula::Kind::And: {
      Deno d = eval_deno(u, f->lhs), e = eval_deno(u, f->rhs);
      for (std::size_t m = 0; m < n; ++m) d[m] = d[m] && e[m];
      return d;
    }
    case Formula::Kind::Or: {
      Deno d = eval_deno(u, f->lhs), e = eval_deno(u, f->rhs);
      for (std::size_t m = 0; m < n; ++m) d[m] = d[m] || e[m];
      return d;
    }
    default:
      throw MspecError(
          "eval_hybrid: formula contains a construct outside the hybrid "
          "language (box or bare variable)");
  }
}

std::set<AdmissibleSet> materialize(const Universe& u, const Deno& d) {
  std::set<AdmissibleSet> out;
  for (std::size_t m = 0; m < d.size(); ++m) {
    if (!d[m]) continue;
    AdmissibleSet s;
    for (std::size_t i = 0; i < u.elems.size(); ++i) {
      if ((m >> i) & 1) s.insert(u.elems[i]);
    }
    out.insert(std::move(s));
  }
  return out;
}

using SuccMap = std::map<std::pair<StateId, Action>, StateSet>;

bool sat_hml(const SuccMap& succ,
             const std::map<StateId, StateSet>& sigma, const FormulaPtr& f,
             const StateId& s) {
  switch (f->kind) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Var:
      return sigma.at(f->var).count(s) != 0;
    case Formula::Kind::Dia: {
      auto it = succ.find({s, f->act});
      if (it == succ.end()) return false;
      for (const auto& t : it->second) {
        if (sat_hml(succ, sigma, f->lhs, t)) return true;
      }
      return false;
    }
    case Formula::Kind::Box: {
      auto it = succ.find({s, f->act});
      if (it == succ.end()) return true;
      for (const auto& t : it->second) {
        if (!sat_hml(succ, sigma, f->lhs, t)) return false;
      }
      return true;
    }
    case Formula::Kind::And:
      return sat_hml(succ, sigma, f->lhs, s) && sat_hml(succ, sigma, f->rhs, s);
    case Formula::Kind::Or:
      return sat_hml(succ, sigma, f->lhs, s) || sat_hml(succ, sigma, f->rhs, s);
    default:
      throw MspecError("eval_hml_gfp: declarations must be negation-free");
  }
}

FormulaPtr or_fold(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return f_false();
  FormulaPtr out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = f_or(out, fs[i]);
  return out;
}

FormulaPtr and_fold(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return f_true();
  FormulaPtr out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = f_and(out, fs[i]);
  return out;
}

}  // namespace

std::set<AdmissibleSet> eval_hybrid(const HybridExpr& e, const FormulaPtr& f) {
  Universe u(e);
  return materialize(u, eval_deno(u, f));
}

std::map<StateId, std::set<AdmissibleSet>> hybrid_denotations(
    const HybridExpr& e) {
  Universe u(e);
  std::map<StateId, std::set<AdmissibleSet>> out;
  for (const auto& [x, f] : e.phi) out[x] = materialize(u, eval_deno(u, f));
  return out;
}

bool is_implementation(const HybridExpr& e) {
  for (const auto& [x, deno] : hybrid_denotations(e)) {
    if (deno.size() != 1) return false;
  }
  return true;
}

HmlDecl nf_formula(const NuExprNF& n) {
  HmlDecl h{n.alphabet, n.vars, n.initials, {}};
  for (const auto& x : n.vars) {
    std::vector<FormulaPtr> conj;
    for (const auto& clause : n.diamonds_of(x)) {
      std::vector<FormulaPtr> disj;
      for (const auto& [a, y] : clause) disj.push_back(f_dia(a, f_var(y)));
      conj.push_back(or_fold(disj));
    }
    for (const auto& a : n.alphabet) {
      std::vector<FormulaPtr> disj;
      for (const auto& y : n.box_of(x, a)) disj.push_back(f_var(y));
      conj.push_back(f_box(a, or_fold(disj)));
    }
    h.delta[x] = and_fold(conj);
  }
  return h;
}

std::map<StateId, StateSet> eval_hml_gfp(const Lts& l, const HmlDecl& n) {
  SuccMap succ;
  for (const auto& [s, a, t] : l.trans) succ[{s, a}].insert(t);
  std::map<StateId, StateSet> sigma;
  for (const auto& x : n.vars) sigma[x] = l.states;
  for (;;) {
    std::map<StateId, StateSet> next;
    for (const auto& x : n.vars) {
      StateSet sat;
      const FormulaPtr& f = n.delta.at(x);
      for (const auto& s : l.states) {
        if (sat_hml(succ, sigma, f, s)) sat.insert(s);
      }
      next[x] = std::move(sat);
    }
    if (next == sigma) return sigma;
    sigma = std::move(next);
  }
}

bool models(const Lts& l, const HmlDecl& n) {
  if (l.alphabet != n.alphabet)
    throw MspecError("models: alphabets differ");
  auto sigma = eval_hml_gfp(l, n);
  for (const auto& s : l.initials) {
    bool ok = false;
    for (const auto& x : n.initials) {
      if (sigma.at(x).count(s)) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

bool models(const Lts& l, const NuExprNF& n) { return models(l, nf_formula(n)); }

}  // namespace mspec
