#include "mspec/algebra.hh"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <iterator>
#include <vector>

#include "mspec/transform.hh"

namespace mspec {
namespace {

void require_same_alphabet(const Alphabet& a1, const Alphabet& a2,
                           const char* who) {
  if (a1 != a2)
    throw MspecError(std::string(who) + ": alphabets differ");
}

// Assigns a stable, injective name "(a,b)" to each pair of operand state
// names.  Because operand names may themselves contain commas or
// parentheses, two distinct pairs could render identically; collisions are
// resolved by appending "'" in first-come order, which is deterministic as
// long as pairs are requested in a deterministic order.
class PairNamer {
 public:
  const StateId& operator()(const StateId& a, const StateId& b) {
    auto it = names_.find({a, b});
    if (it != names_.end()) return it->second;
    StateId nm = "(" + a + "," + b + ")";
    while (!used_.insert(nm).second) nm += "'";
    return names_.emplace(std::make_pair(a, b), std::move(nm)).first->second;
  }

 private:
  std::map<std::pair<StateId, StateId>, StateId> names_;
  std::set<StateId> used_;
};

using SuccMap = std::map<std::pair<StateId, Action>, StateSet>;

const StateSet& succ_of(const SuccMap& m, const StateId& s, const Action& a) {
  static const StateSet empty;
  auto it = m.find({s, a});
  return it == m.end() ? empty : it->second;
}

// Possible a-successors of each state of an acceptance automaton: targets
// occurring in any of its admitted transition sets.
SuccMap aa_successors(const Aa& a) {
  SuccMap m;
  for (const auto& [s, sets] : a.tran)
    for (const AdmissibleSet& M : sets)
      for (const auto& [act, t] : M) m[{s, act}].insert(t);
  return m;
}

// A family of admitted sets is "closed" when it is non-empty and adding any
// element of its union to a member yields another member.  Closed families
// are exactly the hitting families of finitely many obligations, so a
// single disjunctive-must state expresses them losslessly.  On success the
// family's union is left in `mmax`.
bool family_closed(const std::set<AdmissibleSet>& fam, AdmissibleSet& mmax) {
  mmax.clear();
  for (const AdmissibleSet& M : fam) mmax.insert(M.begin(), M.end());
  for (const AdmissibleSet& M : fam)
    for (const auto& e : mmax) {
      if (M.count(e)) continue;
      AdmissibleSet up = M;
      up.insert(e);
      if (!fam.count(up)) return false;
    }
  return !fam.empty();
}

// Automaton-to-graph rendering used inside the composition and quotient
// pipelines.  Unlike bd, which splits every state into one copy per
// admitted set, this keeps a state whole whenever its family of admitted
// sets is closed (one state, obligations recovered as the family's maximal
// blocking sets) and keeps inconsistent states as states with an
// unsatisfiable obligation instead of erasing them.  Both choices preserve
// refinement verdicts through the round trip, which the algebra operations
// need; states with non-closed families still split exactly as in bd.
Dmts fused_bd(const Aa& a) {
  enum class Kind { Dead, Whole, Split };
  std::map<StateId, Kind> kind;
  std::map<StateId, AdmissibleSet> union_of;  // for whole states
  for (const StateId& s : a.states) {
    auto it = a.tran.find(s);
    if (it == a.tran.end() || it->second.empty()) {
      kind.emplace(s, Kind::Dead);
      continue;
    }
    AdmissibleSet mm;
    if (family_closed(it->second, mm)) {
      kind.emplace(s, Kind::Whole);
      union_of.emplace(s, std::move(mm));
    } else {
      kind.emplace(s, Kind::Split);
    }
  }

  // Dead and whole states keep their own names; split states contribute
  // one state per admitted set, named after the set and shared across
  // states admitting the same set.  Clashes get a prime suffix, kept
  // deterministic by claiming own names (sorted) before mode names.
  std::set<StateId> used;
  std::map<StateId, StateId> own;
  std::map<AdmissibleSet, StateId> mode;
  auto claim = [&used](std::string nm) {
    while (used.count(nm)) nm += "'";
    used.insert(nm);
    return nm;
  };
  for (const auto& [s, k] : kind)
    if (k != Kind::Split) own.emplace(s, claim(s));
  std::set<AdmissibleSet> mode_sets;
  for (const auto& [s, k] : kind)
    if (k == Kind::Split)
      for (const AdmissibleSet& M : a.tran_of(s)) mode_sets.insert(M);
  for (const AdmissibleSet& M : mode_sets)
    mode.emplace(M, claim(show_admissible(M)));

  // The rendered states standing for automaton state t as a target.
  auto reps = [&](const StateId& t) {
    std::vector<const StateId*> r;
    if (kind.at(t) == Kind::Split)
      for (const AdmissibleSet& M : a.tran_of(t)) r.push_back(&mode.at(M));
    else
      r.push_back(&own.at(t));
    return r;
  };

  Dmts d{a.alphabet, {}, {}, {}, {}};
  for (const auto& [s, nm] : own) d.states.insert(nm);
  for (const auto& [M, nm] : mode) d.states.insert(nm);
  for (const StateId& s : a.initials) {
    if (kind.at(s) == Kind::Split)
      for (const AdmissibleSet& M : a.tran_of(s)) d.initials.insert(mode.at(M));
    else
      d.initials.insert(own.at(s));
  }

  for (const auto& [s, k] : kind) {
    if (k == Kind::Dead) {
      d.must.insert({own.at(s), {}});
      continue;
    }
    if (k != Kind::Whole) continue;
    const StateId& nm = own.at(s);
    const auto& fam = a.tran.at(s);
    const AdmissibleSet& mm = union_of.at(s);
    if (mm.size() > 16)
      throw MspecError(
          "algebra rendering: admitted-set union too large (limit 16)");
    for (const auto& [act, t] : mm)
      for (const StateId* r : reps(t)) d.may.insert({nm, act, *r});
    // One obligation per maximal non-admitted subset X of the union: an
    // implementation must realize something outside X.  Because the
    // family is closed, satisfying all these obligations is equivalent
    // to realizing an admitted set.
    std::vector<std::pair<Action, StateId>> elems(mm.begin(), mm.end());
    std::size_t count = 0;
    for (std::uint32_t sub = 0; sub < (1u << elems.size()); ++sub) {
      AdmissibleSet x;
      for (std::size_t i = 0; i < elems.size(); ++i)
        if (sub & (1u << i)) x.insert(elems[i]);
      if (fam.count(x)) continue;
      bool maximal = true;
      for (std::size_t i = 0; i < elems.size() && maximal; ++i) {
        if (sub & (1u << i)) continue;
        x.insert(elems[i]);
        maximal = fam.count(x) != 0;
        x.erase(elems[i]);
      }
      if (!maximal) continue;
      AdmissibleSet obligation;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (sub & (1u << i)) continue;
        const auto& [act, t] = elems[i];
        for (const StateId* r : reps(t)) obligation.insert({act, *r});
      }
      d.must.insert({nm, std::move(obligation)});
      if (++count > 4096)
        throw MspecError(
            "algebra rendering: too many obligations (limit 4096)");
    }
  }

  for (const auto& [M, nm] : mode) {
    for (const auto& [act, t] : M) {
      AdmissibleSet obligation;
      for (const StateId* r : reps(t)) {
        d.may.insert({nm, act, *r});
        obligation.insert({act, *r});
      }
      d.must.insert({nm, std::move(obligation)});
    }
  }
  return d;
}

NuExprNF fused_to_nu(const Aa& a) { return dh(fused_bd(a)); }

}  // namespace

NuExprNF nu_bottom(const Alphabet& alphabet) {
  NuExprNF n;
  n.alphabet = alphabet;
  return n;
}

NuExprNF nu_top(const Alphabet& alphabet) {
  NuExprNF n;
  n.alphabet = alphabet;
  n.vars = {"s"};
  n.initials = {"s"};
  for (const Action& a : alphabet) n.box[{"s", a}] = {"s"};
  return n;
}

Lts unit_lts(const Alphabet& alphabet) {
  Lts l;
  l.alphabet = alphabet;
  l.states = {"u"};
  l.initials = {"u"};
  for (const Action& a : alphabet) l.trans.insert({"u", a, "u"});
  return l;
}

Aa nu_to_aa(const NuExprNF& n) { return db(hd(n)); }

NuExprNF aa_to_nu(const Aa& a) { return dh(bd(a)); }

NuExprNF nu_or(const NuExprNF& n1, const NuExprNF& n2) {
  require_same_alphabet(n1.alphabet, n2.alphabet, "nu_or");
  std::map<StateId, StateId> ren;
  std::set<StateId> taken = n1.vars;
  for (const StateId& x : n2.vars) {
    StateId nm = x;
    while (taken.count(nm)) nm += "'";
    taken.insert(nm);
    ren.emplace(x, std::move(nm));
  }
  NuExprNF out;
  out.alphabet = n1.alphabet;
  out.vars = std::move(taken);
  out.initials = n1.initials;
  for (const StateId& x : n2.initials) out.initials.insert(ren.at(x));
  out.diamond = n1.diamond;
  out.box = n1.box;
  for (const auto& [x, sets] : n2.diamond) {
    std::set<AdmissibleSet>& dst = out.diamond[ren.at(x)];
    for (const AdmissibleSet& N : sets) {
      AdmissibleSet r;
      for (const auto& [a, y] : N) r.insert({a, ren.at(y)});
      dst.insert(std::move(r));
    }
  }
  for (const auto& [key, ys] : n2.box) {
    StateSet r;
    for (const StateId& y : ys) r.insert(ren.at(y));
    out.box[{ren.at(key.first), key.second}] = std::move(r);
  }
  return out;
}

NuExprNF nu_and(const NuExprNF& n1, const NuExprNF& n2) {
  require_same_alphabet(n1.alphabet, n2.alphabet, "nu_and");
  if (n1.vars.size() * n2.vars.size() > 4096)
    throw MspecError("nu_and: product state space too large (limit 4096)");
  PairNamer nm;
  NuExprNF out;
  out.alphabet = n1.alphabet;
  for (const StateId& x1 : n1.vars)
    for (const StateId& x2 : n2.vars) out.vars.insert(nm(x1, x2));
  for (const StateId& i1 : n1.initials)
    for (const StateId& i2 : n2.initials) out.initials.insert(nm(i1, i2));
  for (const StateId& x1 : n1.vars) {
    for (const StateId& x2 : n2.vars) {
      const StateId& x = nm(x1, x2);
      for (const Action& a : out.alphabet) {
        const StateSet& b1 = n1.box_of(x1, a);
        const StateSet& b2 = n2.box_of(x2, a);
        StateSet prod;
        for (const StateId& y1 : b1)
          for (const StateId& y2 : b2) prod.insert(nm(y1, y2));
        if (!prod.empty()) out.box[{x, a}] = std::move(prod);
      }
      std::set<AdmissibleSet> reqs;
      for (const AdmissibleSet& N1 : n1.diamonds_of(x1)) {
        AdmissibleSet lifted;
        for (const auto& [a, y1] : N1) {
          if (!n1.box_of(x1, a).count(y1)) continue;
          for (const StateId& y2 : n2.box_of(x2, a))
            lifted.insert({a, nm(y1, y2)});
        }
        reqs.insert(std::move(lifted));
      }
      for (const AdmissibleSet& N2 : n2.diamonds_of(x2)) {
        AdmissibleSet lifted;
        for (const auto& [a, y2] : N2) {
          if (!n2.box_of(x2, a).count(y2)) continue;
          for (const StateId& y1 : n1.box_of(x1, a))
            lifted.insert({a, nm(y1, y2)});
        }
        reqs.insert(std::move(lifted));
      }
      if (!reqs.empty()) out.diamond[x] = std::move(reqs);
    }
  }
  return out;
}

Lts lts_compose(const Lts& l1, const Lts& l2) {
  require_same_alphabet(l1.alphabet, l2.alphabet, "lts_compose");
  SuccMap s1, s2;
  for (const auto& [s, a, t] : l1.trans) s1[{s, a}].insert(t);
  for (const auto& [s, a, t] : l2.trans) s2[{s, a}].insert(t);
  PairNamer nm;
  Lts out;
  out.alphabet = l1.alphabet;
  std::deque<std::pair<StateId, StateId>> work;
  std::set<std::pair<StateId, StateId>> seen;
  for (const StateId& i1 : l1.initials)
    for (const StateId& i2 : l2.initials) {
      out.initials.insert(nm(i1, i2));
      if (seen.insert({i1, i2}).second) work.push_back({i1, i2});
    }
  while (!work.empty()) {
    auto [u1, u2] = work.front();
    work.pop_front();
    const StateId& u = nm(u1, u2);
    out.states.insert(u);
    for (const Action& a : out.alphabet)
      for (const StateId& t1 : succ_of(s1, u1, a))
        for (const StateId& t2 : succ_of(s2, u2, a)) {
          out.trans.insert({u, a, nm(t1, t2)});
          if (seen.insert({t1, t2}).second) work.push_back({t1, t2});
        }
  }
  return out;
}

Aa aa_compose(const Aa& a1, const Aa& a2) {
  require_same_alphabet(a1.alphabet, a2.alphabet, "aa_compose");
  PairNamer nm;
  Aa out;
  out.alphabet = a1.alphabet;
  std::deque<std::pair<StateId, StateId>> work;
  std::set<std::pair<StateId, StateId>> seen;
  for (const StateId& i1 : a1.initials)
    for (const StateId& i2 : a2.initials) {
      out.initials.insert(nm(i1, i2));
      if (seen.insert({i1, i2}).second) work.push_back({i1, i2});
    }
  while (!work.empty()) {
    auto [u1, u2] = work.front();
    work.pop_front();
    const StateId& u = nm(u1, u2);
    out.states.insert(u);
    std::set<AdmissibleSet> options;
    std::set<std::pair<StateId, StateId>> succs;
    for (const AdmissibleSet& M1 : a1.tran_of(u1)) {
      for (const AdmissibleSet& M2 : a2.tran_of(u2)) {
        AdmissibleSet M;
        for (const auto& [a, t1] : M1)
          for (const auto& [b, t2] : M2)
            if (a == b) {
              M.insert({a, nm(t1, t2)});
              succs.insert({t1, t2});
            }
        options.insert(std::move(M));
      }
    }
    if (!options.empty()) out.tran[u] = std::move(options);
    for (const auto& p : succs)
      if (seen.insert(p).second) work.push_back(p);
  }
  return out;
}

NuExprNF nu_compose(const NuExprNF& n1, const NuExprNF& n2) {
  require_same_alphabet(n1.alphabet, n2.alphabet, "nu_compose");
  return fused_to_nu(aa_compose(nu_to_aa(n1), nu_to_aa(n2)));
}

namespace {

// Shared engine behind aa_quotient and nu_quotient.  May leave initial
// states that admit no transition set; the public wrapper strips those,
// while the equation-system pipeline keeps them (they encode "accept
// exactly the inconsistent partners", which the rendering can express).
Aa aa_quotient_raw(const Aa& spec, const Aa& divisor) {
  require_same_alphabet(spec.alphabet, divisor.alphabet, "aa_quotient");
  if (spec.alphabet.size() > 12)
    throw MspecError("aa_quotient: alphabet too large (limit 12 actions)");

  using Pair = std::pair<StateId, StateId>;
  using QState = std::set<Pair>;

  const SuccMap sp = aa_successors(spec);
  const SuccMap dv = aa_successors(divisor);

  // Injective, deterministic naming of quotient states.
  std::map<QState, StateId> qname;
  std::set<StateId> used;
  auto name_of = [&](const QState& q) -> const StateId& {
    auto it = qname.find(q);
    if (it != qname.end()) return it->second;
    std::string nm;
    if (q.empty()) {
      nm = "{}";
    } else {
      nm = "{";
      bool first = true;
      for (const auto& [s1, s2] : q) {
        if (!first) nm += ",";
        first = false;
        nm += "(" + s1 + "," + s2 + ")";
      }
      nm += "}";
    }
    while (used.count(nm)) nm += "'";
    used.insert(nm);
    return qname.emplace(q, std::move(nm)).first->second;
  };

  // One initial state per choice function assigning a spec initial to
  // every divisor initial.  A partner implementation starts in some state
  // p; the pair (p composed with divisor initial d) must refine *some*
  // spec initial, and the choice may differ per d.  Enumerating the
  // choices keeps that disjunction; pairing every divisor initial with
  // every spec initial at once would demand one partner satisfying all
  // spec initials simultaneously, which is too strict.  With no divisor
  // initials the empty choice yields the universal state (any partner
  // composes to a system without initial states, which refines anything);
  // with divisor initials but no spec initials there is no choice at all
  // and the quotient has no initial states.
  std::vector<StateId> d0(divisor.initials.begin(), divisor.initials.end());
  std::vector<StateId> s0(spec.initials.begin(), spec.initials.end());
  std::set<QState> q_inits;
  if (d0.empty()) {
    q_inits.insert(QState{});
  } else if (!s0.empty()) {
    unsigned long long combos = 1;
    for (std::size_t i = 0; i < d0.size(); ++i) {
      combos *= s0.size();
      if (combos > 4096)
        throw MspecError(
            "aa_quotient: too many initial choice functions (limit 4096)");
    }
    std::vector<std::size_t> idx(d0.size(), 0);
    while (true) {
      QState q;
      for (std::size_t i = 0; i < d0.size(); ++i)
        q.insert({s0[idx[i]], d0[i]});
      q_inits.insert(std::move(q));
      std::size_t i = 0;
      while (i < d0.size() && ++idx[i] == s0.size()) idx[i++] = 0;
      if (i == d0.size()) break;
    }
  }

  Aa out;
  out.alphabet = spec.alphabet;
  std::deque<QState> work;
  std::set<QState> seen;
  for (const QState& q : q_inits) {
    out.initials.insert(name_of(q));
    if (seen.insert(q).second) work.push_back(q);
  }
  while (!work.empty()) {
    QState q = work.front();
    work.pop_front();
    const StateId qn = name_of(q);
    out.states.insert(qn);

    std::set<AdmissibleSet> tran_q;
    if (q.empty()) {
      // Universal state: every subset of {(a, {}) : a in alphabet} is an
      // admitted transition set, so every implementation is accepted.
      std::vector<Action> acts(out.alphabet.begin(), out.alphabet.end());
      const StateId& self = name_of(q);
      for (std::uint32_t mask = 0; mask < (1u << acts.size()); ++mask) {
        AdmissibleSet M;
        for (std::size_t i = 0; i < acts.size(); ++i)
          if (mask & (1u << i)) M.insert({acts[i], self});
        tran_q.insert(std::move(M));
      }
      out.tran[qn] = std::move(tran_q);
      continue;  // only successor is the universal state itself
    }

    // Potential transitions (a, q') out of q.
    std::vector<std::pair<Action, QState>> post;
    for (const Action& a : out.alphabet) {
      // The action is permitted only if every pair whose divisor state can
      // take it also has a spec state that can take it.
      bool permitted = true;
      for (const auto& [s1, s2] : q)
        if (!succ_of(dv, s2, a).empty() && succ_of(sp, s1, a).empty()) {
          permitted = false;
          break;
        }
      if (!permitted) continue;

      StateSet targets;  // all divisor successors across the pairs of q
      for (const auto& [s1, s2] : q) {
        (void)s1;
        const StateSet& ts = succ_of(dv, s2, a);
        targets.insert(ts.begin(), ts.end());
      }
      if (targets.empty()) {
        // The divisor can never take this action here, so composition
        // never takes it either: the quotient may move to the universal
        // state unconditionally.
        post.push_back({a, QState{}});
        continue;
      }

      // Each divisor successor must be matched with one spec successor
      // that works for every pair able to reach it.
      std::map<StateId, StateSet> allowed;
      bool feasible = true;
      for (const StateId& t2 : targets) {
        StateSet inter;
        bool first = true;
        for (const auto& [s1, s2] : q) {
          if (!succ_of(dv, s2, a).count(t2)) continue;
          const StateSet& cand = succ_of(sp, s1, a);
          if (first) {
            inter = cand;
            first = false;
          } else {
            StateSet tmp;
            std::set_intersection(inter.begin(), inter.end(), cand.begin(),
                                  cand.end(),
                                  std::inserter(tmp, tmp.begin()));
            inter = std::move(tmp);
          }
          if (inter.empty()) break;
        }
        if (inter.empty()) {
          feasible = false;
          break;
        }
        allowed[t2] = std::move(inter);
      }
      if (!feasible) continue;

      unsigned long long count = 1;
      for (const auto& [t2, cand] : allowed) {
        (void)t2;
        count *= cand.size();
        if (count > 4096)
          throw MspecError(
              "aa_quotient: too many successor assignments for action '" + a +
              "' (limit 4096)");
      }

      // Enumerate all assignments (one spec successor per divisor
      // successor) with an odometer over the sorted allowed sets.
      std::vector<std::pair<StateId, std::vector<StateId>>> axes;
      for (const auto& [t2, cand] : allowed)
        axes.push_back({t2, {cand.begin(), cand.end()}});
      std::vector<std::size_t> idx(axes.size(), 0);
      while (true) {
        QState qp;
        for (std::size_t i = 0; i < axes.size(); ++i)
          qp.insert({axes[i].second[idx[i]], axes[i].first});
        post.push_back({a, std::move(qp)});
        std::size_t i = 0;
        while (i < axes.size() && ++idx[i] == axes[i].second.size())
          idx[i++] = 0;
        if (i == axes.size()) break;
      }
    }
    if (post.size() > 16)
      throw MspecError(
          "aa_quotient: too many potential transitions from a state "
          "(limit 16)");

    // A subset M of the potential transitions is admitted iff composing it
    // with any admitted divisor behavior yields admitted spec behavior.
    for (std::uint32_t mask = 0; mask < (1u << post.size()); ++mask) {
      std::vector<const std::pair<Action, QState>*> chosen;
      for (std::size_t i = 0; i < post.size(); ++i)
        if (mask & (1u << i)) chosen.push_back(&post[i]);
      bool good = true;
      for (const auto& [s1, s2] : q) {
        for (const AdmissibleSet& M2 : divisor.tran_of(s2)) {
          AdmissibleSet proj;
          for (const auto* pa : chosen) {
            const Action& a = pa->first;
            const QState& qp = pa->second;
            for (const auto& [b, t2] : M2) {
              if (b != a) continue;
              bool found = false;
              for (const auto& [u1, u2] : qp)
                if (u2 == t2) {
                  proj.insert({a, u1});
                  found = true;
                  break;
                }
              if (!found)
                throw MspecError(
                    "aa_quotient: internal: divisor successor missing from "
                    "assignment");
            }
          }
          if (!spec.tran_of(s1).count(proj)) {
            good = false;
            break;
          }
        }
        if (!good) break;
      }
      if (!good) continue;
      AdmissibleSet M;
      for (const auto* pa : chosen) M.insert({pa->first, name_of(pa->second)});
      tran_q.insert(std::move(M));
      for (const auto* pa : chosen)
        if (seen.insert(pa->second).second) work.push_back(pa->second);
    }
    if (!tran_q.empty()) out.tran[qn] = std::move(tran_q);
  }
  return out;
}

}  // namespace

Aa aa_quotient(const Aa& spec, const Aa& divisor) {
  Aa out = aa_quotient_raw(spec, divisor);
  // An initial choice admitting no transition set only accepts partners
  // that are themselves inconsistent at the start; no well-formed
  // automaton describes such a partner, so drop the choice to keep the
  // invariant that initial states admit at least one transition set.
  for (auto it = out.initials.begin(); it != out.initials.end();) {
    if (!out.tran.count(*it))
      it = out.initials.erase(it);
    else
      ++it;
  }
  return out;
}

NuExprNF nu_quotient(const NuExprNF& spec, const NuExprNF& divisor) {
  require_same_alphabet(spec.alphabet, divisor.alphabet, "nu_quotient");
  return fused_to_nu(aa_quotient_raw(nu_to_aa(spec), nu_to_aa(divisor)));
}

}  // namespace mspec
