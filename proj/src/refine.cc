#include "mspec/refine.hh"

#include <functional>
#include <map>

#include "mspec/semantics.hh"
#include "mspec/transform.hh"

namespace mspec {

namespace {

using Pair = std::pair<StateId, StateId>;
using Rel = std::set<Pair>;

// Deletes candidate pairs that fail `check` until stable, then tests the
// initial condition: every left initial must keep some right partner.
RefinementWitness run_engine(
    const StateSet& s1, const StateSet& i1, const StateSet& s2,
    const StateSet& i2,
    const std::function<bool(const Pair&, const Rel&, std::string&)>& check) {
  RefinementWitness w;
  Rel r;
  for (const auto& a : s1) {
    for (const auto& b : s2) r.insert({a, b});
  }
  for (;;) {
    std::vector<std::pair<Pair, std::string>> kill;
    for (const auto& p : r) {
      std::string why;
      if (!check(p, r, why)) kill.push_back({p, why});
    }
    if (kill.empty()) break;
    for (const auto& [p, why] : kill) {
      r.erase(p);
      w.log.push_back("drop (" + quote_name(p.first) + ", " +
                      quote_name(p.second) + "): " + why);
    }
  }
  w.relation = r;
  w.holds = true;
  for (const auto& s : i1) {
    bool ok = false;
    for (const auto& t : i2) {
      if (r.count({s, t})) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      w.holds = false;
      w.counterexample =
          "initial state " + quote_name(s) + " refines no initial state";
      break;
    }
  }
  w.log.push_back(w.holds ? "refinement holds"
                          : "refinement fails: " + w.counterexample);
  return w;
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b,
                           const std::string& who) {
  if (a != b) throw MspecError(who + ": alphabets differ");
}

// (a, t1) is matched inside M2 by some (a, t2) with (t1, t2) in r.
bool pair_matched_fwd(const Action& a, const StateId& t1,
                      const AdmissibleSet& m2, const Rel& r) {
  for (const auto& [b, t2] : m2) {
    if (b == a && r.count({t1, t2})) return true;
  }
  return false;
}

// (a, t2) is matched inside M1 by some (a, t1) with (t1, t2) in r.
bool pair_matched_bwd(const Action& a, const StateId& t2,
                      const AdmissibleSet& m1, const Rel& r) {
  for (const auto& [b, t1] : m1) {
    if (b == a && r.count({t1, t2})) return true;
  }
  return false;
}

// Every pair of m1 maps into m2 along r.
bool set_covers(const AdmissibleSet& m1, const AdmissibleSet& m2,
                const Rel& r) {
  for (const auto& [a, t1] : m1) {
    if (!pair_matched_fwd(a, t1, m2, r)) return false;
  }
  return true;
}

RefinementWitness mr_aa_like(
    const StateSet& s1, const StateSet& i1,
    const std::map<StateId, std::set<AdmissibleSet>>& tran1,
    const StateSet& s2, const StateSet& i2,
    const std::map<StateId, std::set<AdmissibleSet>>& tran2) {
  static const std::set<AdmissibleSet> kNone{};
  auto tran_of = [](const std::map<StateId, std::set<AdmissibleSet>>& tran,
                    const StateId& s) -> const std::set<AdmissibleSet>& {
    auto it = tran.find(s);
    return it == tran.end() ? kNone : it->second;
  };
  auto check = [&](const Pair& p, const Rel& r, std::string& why) {
    for (const auto& m1 : tran_of(tran1, p.first)) {
      bool found = false;
      for (const auto& m2 : tran_of(tran2, p.second)) {
        bool ok = set_covers(m1, m2, r);
        if (ok) {
          for (const auto& [a, t2] : m2) {
            if (!pair_matched_bwd(a, t2, m1, r)) {
              ok = false;
              break;
            }
          }
        }
        if (ok) {
          found = true;
          break;
        }
      }
      if (!found) {
        why = "transition set " + show_admissible(m1) +
              " has no mutually matching counterpart";
        return false;
      }
    }
    return true;
  };
  return run_engine(s1, i1, s2, i2, check);
}

}  // namespace

TrRelation tr_identity(const StateSet& states) {
  TrRelation tr;
  for (const auto& s : states) tr.pairs.insert({s, s});
  return tr;
}

TrRelation tr_reflexive_closure(TrRelation tr, const StateSet& states) {
  for (const auto& s : states) tr.pairs.insert({s, s});
  return tr;
}

void require_reflexive_over(const TrRelation& tr, const StateSet& states,
                            const std::string& who) {
  for (const auto& [a, b] : tr.pairs) {
    if (!states.count(a) || !states.count(b))
      throw MspecError(who + ": relation mentions undeclared state " +
                       quote_name(states.count(a) ? b : a));
  }
  for (const auto& s : states) {
    if (!tr.pairs.count({s, s}))
      throw MspecError(who + ": relation is not reflexive at state " +
                       quote_name(s));
  }
}

RefinementWitness mr(const Dmts& d1, const Dmts& d2) {
  return mtr(d1, tr_identity(d1.states), d2, tr_identity(d2.states));
}

RefinementWitness mtr(const Dmts& d1, const TrRelation& tr1, const Dmts& d2,
                      const TrRelation& tr2) {
  require_same_alphabet(d1.alphabet, d2.alphabet, "mtr");
  require_reflexive_over(tr1, d1.states, "mtr (left relation)");
  require_reflexive_over(tr2, d2.states, "mtr (right relation)");

  std::map<StateId, std::vector<std::pair<Action, StateId>>> may1, may2;
  for (const auto& [s, a, t] : d1.may) may1[s].push_back({a, t});
  for (const auto& [s, a, t] : d2.may) may2[s].push_back({a, t});
  std::map<StateId, std::vector<AdmissibleSet>> must1, must2;
  for (const auto& [s, n] : d1.must) must1[s].push_back(n);
  for (const auto& [s, n] : d2.must) must2[s].push_back(n);
  // pre[t] = states t' with (t', t) in the relation.
  std::map<StateId, StateSet> pre1, pre2;
  for (const auto& [a, b] : tr1.pairs) pre1[b].insert(a);
  for (const auto& [a, b] : tr2.pairs) pre2[b].insert(a);

  auto check = [&](const Pair& p, const Rel& r, std::string& why) {
    // May clause, relaxed through the two relations.
    if (auto it = may1.find(p.first); it != may1.end()) {
      for (const auto& [a, t1] : it->second) {
        for (const auto& t1p : pre1.at(t1)) {
          bool ok = false;
          if (auto jt = may2.find(p.second); jt != may2.end()) {
            for (const auto& [b, t2] : jt->second) {
              if (b != a) continue;
              for (const auto& t2p : pre2.at(t2)) {
                if (r.count({t1p, t2p})) {
                  ok = true;
                  break;
                }
              }
              if (ok) break;
            }
          }
          if (!ok) {
            why = "may step " + quote_name(a) + " to " + quote_name(t1p) +
                  " cannot be matched";
            return false;
          }
        }
      }
    }
    // Must clause: every obligation of the right side is witnessed by an
    // obligation of the left side all of whose options map into it.
    if (auto it = must2.find(p.second); it != must2.end()) {
      for (const auto& n2 : it->second) {
        bool found = false;
        if (auto jt = must1.find(p.first); jt != must1.end()) {
          for (const auto& n1 : jt->second) {
            if (set_covers(n1, n2, r)) {
              found = true;
              break;
            }
          }
        }
        if (!found) {
          why = "obligation " + show_admissible(n2) + " is not witnessed";
          return false;
        }
      }
    }
    return true;
  };
  return run_engine(d1.states, d1.initials, d2.states, d2.initials, check);
}

RefinementWitness mr(const Aa& a1, const Aa& a2) {
  require_same_alphabet(a1.alphabet, a2.alphabet, "mr");
  return mr_aa_like(a1.states, a1.initials, a1.tran, a2.states, a2.initials,
                    a2.tran);
}

RefinementWitness mr(const NuExprNF& n1, const NuExprNF& n2) {
  require_same_alphabet(n1.alphabet, n2.alphabet, "mr");
  auto check = [&](const Pair& p, const Rel& r, std::string& why) {
    // Box clause: everything the left box sets allow must be allowed by the
    // right box sets.
    for (const auto& a : n1.alphabet) {
      for (const auto& y1 : n1.box_of(p.first, a)) {
        bool ok = false;
        for (const auto& y2 : n2.box_of(p.second, a)) {
          if (r.count({y1, y2})) {
            ok = true;
            break;
          }
        }
        if (!ok) {
          why = "box option " + quote_name(a) + " to " + quote_name(y1) +
                " cannot be matched";
          return false;
        }
      }
    }
    // Diamond clause: every right clause is witnessed by a left clause all
    // of whose options map into it.
    for (const auto& n2set : n2.diamonds_of(p.second)) {
      bool found = false;
      for (const auto& n1set : n1.diamonds_of(p.first)) {
        if (set_covers(n1set, n2set, r)) {
          found = true;
          break;
        }
      }
      if (!found) {
        why = "diamond clause " + show_admissible(n2set) + " is not witnessed";
        return false;
      }
    }
    return true;
  };
  return run_engine(n1.vars, n1.initials, n2.vars, n2.initials, check);
}

RefinementWitness mtr(const NuExprNF& n1, const TrRelation& tr1,
                      const NuExprNF& n2, const TrRelation& tr2) {
  return mtr(hd(n1), tr1, hd(n2), tr2);
}

RefinementWitness mr(const HybridExpr& e1, const HybridExpr& e2) {
  require_same_alphabet(e1.alphabet, e2.alphabet, "mr");
  auto deno1 = hybrid_denotations(e1);
  auto deno2 = hybrid_denotations(e2);
  // Prune empty denotations so absent entries mean "admits nothing", the
  // same convention the automaton form uses.
  for (auto it = deno1.begin(); it != deno1.end();)
    it = it->second.empty() ? deno1.erase(it) : std::next(it);
  for (auto it = deno2.begin(); it != deno2.end();)
    it = it->second.empty() ? deno2.erase(it) : std::next(it);
  return mr_aa_like(e1.vars, e1.initials, deno1, e2.vars, e2.initials, deno2);
}

}  // namespace mspec
