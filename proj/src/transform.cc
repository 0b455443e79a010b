#include "mspec/transform.hh"

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "mspec/semantics.hh"

namespace mspec {

HybridExpr bl(const Aa& a) {
  HybridExpr e{a.alphabet, a.states, a.initials, {}};
  std::vector<std::pair<Action, StateId>> universe;
  for (const auto& act : a.alphabet) {
    for (const auto& t : a.states) universe.push_back({act, t});
  }
  for (const auto& s : a.states) {
    // Characteristic formula: one exact description per admissible set,
    // joined disjunctively; no admissible set means ff.
    FormulaPtr f = f_false();
    bool any = false;
    for (const auto& m : a.tran_of(s)) {
      FormulaPtr g = f_true();
      for (const auto& [act, t] : universe) {
        FormulaPtr lit = f_dia(act, f_var(t));
        g = f_and(g, m.count({act, t}) ? lit : f_not(lit));
      }
      f = any ? f_or(f, g) : g;
      any = true;
    }
    e.phi[s] = f;
  }
  return e;
}

Aa lb(const HybridExpr& e) {
  Aa a{e.alphabet, e.vars, e.initials, {}};
  for (auto& [x, tts] : hybrid_denotations(e)) {
    if (!tts.empty()) a.tran[x] = std::move(tts);
  }
  for (const auto& x : a.initials) {
    if (a.tran_of(x).empty())
      throw MspecError("lb: initial variable " + quote_name(x) +
                       " has an empty denotation");
  }
  return a;
}

Aa db(const Dmts& d) {
  Aa a{d.alphabet, d.states, d.initials, {}};
  std::map<StateId, std::vector<std::pair<Action, StateId>>> may;
  for (const auto& [s, act, t] : d.may) may[s].push_back({act, t});
  std::map<StateId, std::vector<AdmissibleSet>> must;
  for (const auto& [s, n] : d.must) must[s].push_back(n);
  for (const auto& s : d.states) {
    auto eit = may.find(s);
    static const std::vector<std::pair<Action, StateId>> kNoEdges{};
    const auto& edges = eit == may.end() ? kNoEdges : eit->second;
    if (edges.size() > 20)
      throw MspecError("db: state " + quote_name(s) +
                       " has more than 20 may transitions");
    auto mit = must.find(s);
    static const std::vector<AdmissibleSet> kNoMusts{};
    const auto& obligations = mit == must.end() ? kNoMusts : mit->second;
    std::set<AdmissibleSet> tts;
    const std::size_t limit = std::size_t{1} << edges.size();
    for (std::size_t mask = 0; mask < limit; ++mask) {
      AdmissibleSet m;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if ((mask >> i) & 1) m.insert(edges[i]);
      }
      bool ok = true;
      for (const auto& n : obligations) {
        bool hit = false;
        for (const auto& p : n) {
          if (m.count(p)) {
            hit = true;
            break;
          }
        }
        if (!hit) {
          ok = false;
          break;
        }
      }
      if (ok) tts.insert(std::move(m));
    }
    if (!tts.empty()) a.tran[s] = std::move(tts);
  }
  return a;
}

Dmts bd(const Aa& a) {
  Dmts d{a.alphabet, {}, {}, {}, {}};
  std::map<AdmissibleSet, StateId> name;
  for (const auto& [s, tts] : a.tran) {
    for (const auto& m : tts) {
      if (!name.count(m)) name.emplace(m, show_admissible(m));
    }
  }
  for (const auto& [m, nm] : name) d.states.insert(nm);
  for (const auto& s : a.initials) {
    for (const auto& m : a.tran_of(s)) d.initials.insert(name.at(m));
  }
  for (const auto& [m, nm] : name) {
    for (const auto& [act, t] : m) {
      AdmissibleSet obligation;
      for (const auto& m2 : a.tran_of(t)) {
        const StateId& tn = name.at(m2);
        d.may.insert({nm, act, tn});
        obligation.insert({act, tn});
      }
      d.must.insert({nm, obligation});
    }
  }
  return d;
}

NuExprNF dh(const Dmts& d) {
  NuExprNF n{d.alphabet, d.states, d.initials, {}, {}};
  for (const auto& [s, a, t] : d.may) n.box[{s, a}].insert(t);
  for (const auto& [s, obligation] : d.must) n.diamond[s].insert(obligation);
  return n;
}

Dmts hd(const NuExprNF& n) {
  Dmts d{n.alphabet, n.vars, n.initials, {}, {}};
  for (const auto& [key, ys] : n.box) {
    for (const auto& y : ys) d.may.insert({key.first, key.second, y});
  }
  for (const auto& [x, sets] : n.diamond) {
    for (const auto& m : sets) d.must.insert({x, m});
  }
  return d;
}

Dmts hdt(const NuExprNF& n, const TrRelation& tr) {
  require_reflexive_over(tr, n.vars, "hdt");
  std::map<StateId, StateSet> pre;  // pre[y] = {y' : (y', y) in tr}
  for (const auto& [a, b] : tr.pairs) pre[b].insert(a);
  Dmts d{n.alphabet, n.vars, n.initials, {}, {}};
  for (const auto& [key, ys] : n.box) {
    for (const auto& y : ys) {
      for (const auto& yp : pre.at(y)) d.may.insert({key.first, key.second, yp});
    }
  }
  for (const auto& [x, sets] : n.diamond) {
    for (const auto& m : sets) d.must.insert({x, m});
  }
  return d;
}

Dmts may_completion(const Dmts& d, const TrRelation& tr) {
  require_reflexive_over(tr, d.states, "may_completion");
  std::map<StateId, StateSet> pre;
  for (const auto& [a, b] : tr.pairs) pre[b].insert(a);
  Dmts out{d.alphabet, d.states, d.initials, {}, d.must};
  for (const auto& [s, a, t] : d.may) {
    for (const auto& tp : pre.at(t)) out.may.insert({s, a, tp});
  }
  return out;
}

// --- normalization ---------------------------------------------------------

namespace {

constexpr std::size_t kMaxDisjuncts = 4096;
constexpr std::size_t kMaxPieces = 4096;

// One conjunctive piece of a formula in disjunctive form: a set of diamond
// clauses (each clause a set of (action, formula-key) options, read
// disjunctively) plus, per action, the conjunctive set of box-body keys.
struct NDisjunct {
  std::set<std::set<std::pair<Action, std::string>>> clauses;
  std::map<Action, std::set<std::string>> boxes;

  bool operator<(const NDisjunct& o) const {
    if (clauses != o.clauses) return clauses < o.clauses;
    return boxes < o.boxes;
  }
};

struct Normalizer {
  const HmlDecl& decl;
  NuExprNF out;
  std::map<std::string, FormulaPtr> form_by_key;
  std::map<std::string, std::vector<StateId>> memo;  // conj key -> piece vars
  std::set<StateId> used;
  StateId tt_name;
  std::size_t anon = 0;

  explicit Normalizer(const HmlDecl& h) : decl(h) { out.alphabet = h.alphabet; }

  std::string key_of(const FormulaPtr& f) {
    std::string k = formula_str(f);
    form_by_key.emplace(k, f);
    return k;
  }

  // Splits a top-level conjunction into canonical conjunct keys: tt is
  // dropped, ff absorbs everything, duplicates collapse.
  std::vector<std::string> split_conj(const FormulaPtr& f) {
    std::vector<FormulaPtr> stack{f};
    std::set<std::string> keys;
    bool has_ff = false;
    while (!stack.empty()) {
      FormulaPtr g = stack.back();
      stack.pop_back();
      if (g->kind == Formula::Kind::And) {
        stack.push_back(g->lhs);
        stack.push_back(g->rhs);
      } else if (g->kind == Formula::Kind::True) {
        // neutral for conjunction
      } else if (g->kind == Formula::Kind::False) {
        has_ff = true;
      } else {
        keys.insert(key_of(g));
      }
    }
    if (has_ff) return {key_of(f_false())};
    return {keys.begin(), keys.end()};
  }

  // Replaces unguarded variable occurrences by their declarations; a
  // variable met again along the active expansion chain becomes tt (sound
  // for greatest fixpoints: an unguarded positive self-occurrence can be
  // resolved to tt).
  FormulaPtr expand(const FormulaPtr& f, std::set<StateId>& path) {
    switch (f->kind) {
      case Formula::Kind::Var: {
        if (path.count(f->var)) return f_true();
        path.insert(f->var);
        FormulaPtr r = expand(decl.delta.at(f->var), path);
        path.erase(f->var);
        return r;
      }
      case Formula::Kind::And:
        return f_and(expand(f->lhs, path), expand(f->rhs, path));
      case Formula::Kind::Or:
        return f_or(expand(f->lhs, path), expand(f->rhs, path));
      default:
        return f;  // constants and guarded subformulas stay as they are
    }
  }

  // Disjunctive form of an expanded formula. A disjunction of two pure
  // one-clause, box-free sides merges into a single clause (a grouped
  // disjunction of diamonds); anything else multiplies out.
  std::set<NDisjunct> nd(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::True:
        return {NDisjunct{}};
      case Formula::Kind::False: {
        NDisjunct d;
        // emplace() default-constructs one empty clause; insert({}) would
        // pick the initializer-list overload and insert nothing at all.
        d.clauses.emplace();  // the empty clause is unsatisfiable
        return {d};
      }
      case Formula::Kind::Dia: {
        NDisjunct d;
        d.clauses.insert({std::make_pair(f->act, key_of(f->lhs))});
        return {d};
      }
      case Formula::Kind::Box: {
        NDisjunct d;
        auto keys = split_conj(f->lhs);
        if (!keys.empty()) d.boxes[f->act] = {keys.begin(), keys.end()};
        return {d};
      }
      case Formula::Kind::And: {
        auto l = nd(f->lhs), r = nd(f->rhs);
        std::set<NDisjunct> prod;
        for (const auto& d1 : l) {
          for (const auto& d2 : r) {
            NDisjunct m = d1;
            m.clauses.insert(d2.clauses.begin(), d2.clauses.end());
            for (const auto& [a, ks] : d2.boxes)
              m.boxes[a].insert(ks.begin(), ks.end());
            prod.insert(std::move(m));
            if (prod.size() > kMaxDisjuncts)
              throw MspecError("normalize: disjunct blow-up exceeds 4096");
          }
        }
        return prod;
      }
      case Formula::Kind::Or: {
        auto l = nd(f->lhs), r = nd(f->rhs);
        auto pure = [](const std::set<NDisjunct>& s) {
          return s.size() == 1 && s.begin()->boxes.empty() &&
                 s.begin()->clauses.size() == 1;
        };
        if (pure(l) && pure(r)) {
          NDisjunct m;
          auto clause = *l.begin()->clauses.begin();
          const auto& c2 = *r.begin()->clauses.begin();
          clause.insert(c2.begin(), c2.end());
          m.clauses.insert(std::move(clause));
          return {m};
        }
        l.insert(r.begin(), r.end());
        if (l.size() > kMaxDisjuncts)
          throw MspecError("normalize: disjunct blow-up exceeds 4096");
        return l;
      }
      default:
        throw MspecError("normalize: unexpected construct after expansion");
    }
  }

  StateId fresh(std::string want) {
    if (want.empty()) want = "q" + std::to_string(anon++);
    while (used.count(want)) want += "'";
    used.insert(want);
    out.vars.insert(want);
    if (out.vars.size() > kMaxPieces)
      throw MspecError("normalize: generated more than 4096 variables");
    return want;
  }

  // The universal variable: satisfied by everything.
  const StateId& tt_var() {
    if (tt_name.empty()) {
      tt_name = fresh("x_tt");
      for (const auto& a : out.alphabet) out.box[{tt_name, a}] = {tt_name};
    }
    return tt_name;
  }

  // Variables representing the disjunctive pieces of f. A piece set is
  // computed once per canonical conjunct set; names are registered before
  // the pieces are filled in so self-references terminate.
  std::vector<StateId> pieces(const FormulaPtr& f, std::string preferred) {
    if (preferred.empty() && f->kind == Formula::Kind::Var)
      preferred = f->var;
    std::set<StateId> path;
    FormulaPtr e = expand(f, path);
    std::vector<std::string> conj = split_conj(e);
    if (conj.empty()) return {tt_var()};
    std::string key;
    for (const auto& k : conj) {
      key += k;
      key += '\n';
    }
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    FormulaPtr folded = form_by_key.at(conj.front());
    for (std::size_t i = 1; i < conj.size(); ++i)
      folded = f_and(folded, form_by_key.at(conj[i]));
    std::set<NDisjunct> ds = nd(folded);
    std::vector<StateId> names;
    if (ds.size() == 1) {
      names.push_back(fresh(preferred));
    } else {
      for (std::size_t i = 0; i < ds.size(); ++i)
        names.push_back(fresh(
            preferred.empty() ? "" : preferred + "@" + std::to_string(i + 1)));
    }
    memo.emplace(key, names);
    std::size_t idx = 0;
    for (const auto& d : ds) fill(names[idx++], d);
    return names;
  }

  void fill(const StateId& v, const NDisjunct& d) {
    std::map<Action, StateSet> dia_targets;
    std::set<AdmissibleSet> clauses_out;
    for (const auto& clause : d.clauses) {
      AdmissibleSet nf_clause;
      for (const auto& [a, tkey] : clause) {
        // A successor chosen by the diamond must also obey the box
        // constraint for its action.
        FormulaPtr target = form_by_key.at(tkey);
        if (auto bit = d.boxes.find(a); bit != d.boxes.end()) {
          for (const auto& bkey : bit->second)
            target = f_and(target, form_by_key.at(bkey));
        }
        for (const auto& piece : pieces(target, "")) {
          nf_clause.insert({a, piece});
          dia_targets[a].insert(piece);
        }
      }
      clauses_out.insert(std::move(nf_clause));
    }
    if (!clauses_out.empty()) out.diamond[v] = std::move(clauses_out);
    for (const auto& a : out.alphabet) {
      StateSet bs;
      auto bit = d.boxes.find(a);
      if (bit == d.boxes.end()) {
        bs.insert(tt_var());  // unconstrained action
      } else {
        bool literal_ff = false;
        for (const auto& k : bit->second) {
          if (form_by_key.at(k)->kind == Formula::Kind::False)
            literal_ff = true;
        }
        if (!literal_ff) {
          FormulaPtr body;
          for (const auto& k : bit->second) {
            FormulaPtr g = form_by_key.at(k);
            body = body ? f_and(body, g) : g;
          }
          for (const auto& piece : pieces(body, "")) bs.insert(piece);
        }
      }
      if (auto it = dia_targets.find(a); it != dia_targets.end())
        bs.insert(it->second.begin(), it->second.end());
      if (!bs.empty()) out.box[{v, a}] = std::move(bs);
    }
  }
};

}  // namespace

NuExprNF normalize(const HmlDecl& h) {
  auto errs = validate(h);
  if (!errs.empty())
    throw MspecError("normalize: invalid declaration: " + errs.front());
  Normalizer nz(h);
  for (const auto& x : h.initials) {
    for (const auto& v : nz.pieces(f_var(x), x)) nz.out.initials.insert(v);
  }
  return nz.out;
}

}  // namespace mspec
