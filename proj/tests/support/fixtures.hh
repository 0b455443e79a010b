#pragma once

// Shared hand-built systems used across the test suites. Each builder
// returns a fresh value; expected results placed next to their inputs are
// derived by hand from the definitions and serve as frozen regression
// values.

#include "mspec/refine.hh"
#include "mspec/types.hh"

namespace fixtures {

using namespace mspec;

// --- one committed step -----------------------------------------------

// p must take a to q; exactly one implementation.
inline Dmts tiny_must() {
  Dmts d;
  d.alphabet = {"a"};
  d.states = {"p", "q"};
  d.initials = {"p"};
  d.may = {{"p", "a", "q"}};
  d.must = {{"p", {{"a", "q"}}}};
  return d;
}

// One optional self-loop; exactly two implementations at memory 1.
inline Dmts single_may_loop() {
  Dmts d;
  d.alphabet = {"a"};
  d.states = {"s"};
  d.initials = {"s"};
  d.may = {{"s", "a", "s"}};
  return d;
}

// --- may-completion family (alphabet {a,b,c,d}) -----------------------
//
// A system with two sibling branches below s: the t1 branch commits to a
// second a-step into states that can loop on b and c, the t3 branch is a
// weaker look-alike (no commitment, b-loop only) that is not reachable
// from s. The t3 states refine the t1 states thoroughly but not modally,
// which is what may-completion repairs.

inline Dmts completion_example() {
  Dmts d;
  d.alphabet = {"a", "b", "c", "d"};
  d.states = {"s", "t1", "t3", "u1", "u2", "u3", "v1", "v3"};
  d.initials = {"s"};
  d.may = {{"s", "a", "t1"},  {"t1", "a", "u1"}, {"t1", "a", "u2"},
           {"t3", "a", "u3"}, {"u1", "a", "v1"}, {"u2", "d", "u2"},
           {"u3", "a", "v3"}, {"v1", "b", "v1"}, {"v1", "c", "v1"},
           {"v3", "b", "v3"}};
  d.must = {{"u1", {{"a", "v1"}}}};
  return d;
}

// The thorough-but-not-modal pairs, as an explicit relation (the tests
// close it reflexively where needed).
inline TrRelation completion_example_tr() {
  TrRelation tr;
  tr.pairs = {{"t3", "t1"}, {"v3", "v1"}};
  for (const StateId& s : completion_example().states)
    tr.pairs.insert({s, s});
  return tr;
}

// Hand-derived may-completion of completion_example under the relation
// above: four new may-steps, obligations unchanged.
inline Dmts completion_example_completed() {
  Dmts d = completion_example();
  d.may.insert({"s", "a", "t3"});
  d.may.insert({"u1", "a", "v3"});
  d.may.insert({"v1", "b", "v3"});
  d.may.insert({"v1", "c", "v3"});
  return d;
}

// The t1 branch alone (same alphabet): refined by completion_example but
// not by its completion.
inline Dmts completion_example_abstract() {
  Dmts d;
  d.alphabet = {"a", "b", "c", "d"};
  d.states = {"s", "t1", "u1", "u2", "v1"};
  d.initials = {"s"};
  d.may = {{"s", "a", "t1"},  {"t1", "a", "u1"}, {"t1", "a", "u2"},
           {"u1", "a", "v1"}, {"v1", "b", "v1"}, {"v1", "c", "v1"},
           {"u2", "d", "u2"}};
  d.must = {{"u1", {{"a", "v1"}}}};
  return d;
}

// A plain may-chain a.a.a.b* (same alphabet): refines the completion but
// not the original.
inline Dmts completion_example_chain() {
  Dmts d;
  d.alphabet = {"a", "b", "c", "d"};
  d.states = {"s", "t", "u", "v"};
  d.initials = {"s"};
  d.may = {{"s", "a", "t"}, {"t", "a", "u"}, {"u", "a", "v"},
           {"v", "b", "v"}};
  return d;
}

// --- request/grant family (alphabet {grant, idle, req, work}) ---------
//
// "After a request, no idling is allowed, only work, until grant."

inline Dmts request_grant_dmts() {
  Dmts d;
  d.alphabet = {"grant", "idle", "req", "work"};
  d.states = {"X", "Y"};
  d.initials = {"X"};
  d.may = {{"X", "grant", "X"}, {"X", "idle", "X"}, {"X", "work", "X"},
           {"X", "req", "Y"},   {"Y", "grant", "X"}, {"Y", "work", "Y"}};
  d.must = {{"Y", {{"grant", "X"}, {"work", "Y"}}}};
  return d;
}

// The same system as a normal-form equation system (the graph conversion
// of request_grant_dmts).
inline NuExprNF request_grant_nu() {
  NuExprNF n;
  n.alphabet = {"grant", "idle", "req", "work"};
  n.vars = {"X", "Y"};
  n.initials = {"X"};
  n.diamond = {{"Y", {{{"grant", "X"}, {"work", "Y"}}}}};
  n.box = {{{"X", "grant"}, {"X"}}, {{"X", "idle"}, {"X"}},
           {{"X", "work"}, {"X"}},  {{"X", "req"}, {"Y"}},
           {{"Y", "grant"}, {"X"}}, {{"Y", "work"}, {"Y"}}};
  return n;
}

// The property as a free-form declaration:
//   X = [grant]X & [idle]X & [work]X & [req]Y
//   Y = (<work>Y | <grant>X) & [idle]ff & [req]ff
inline HmlDecl request_grant_formula() {
  HmlDecl h;
  h.alphabet = {"grant", "idle", "req", "work"};
  h.vars = {"X", "Y"};
  h.initials = {"X"};
  FormulaPtr X = f_var("X"), Y = f_var("Y");
  h.delta["X"] = f_and(f_and(f_and(f_box("grant", X), f_box("idle", X)),
                             f_box("work", X)),
                       f_box("req", Y));
  h.delta["Y"] = f_and(f_and(f_or(f_dia("work", Y), f_dia("grant", X)),
                             f_box("idle", f_false())),
                       f_box("req", f_false()));
  return h;
}

// Hand-derived normal form of request_grant_formula. The conversion keeps
// the declared variable names and adds the unconstrained variable x_tt for
// the actions the Y equation leaves unrestricted.
inline NuExprNF request_grant_nf_expected() {
  NuExprNF n;
  n.alphabet = {"grant", "idle", "req", "work"};
  n.vars = {"X", "Y", "x_tt"};
  n.initials = {"X"};
  n.diamond = {{"Y", {{{"grant", "X"}, {"work", "Y"}}}}};
  n.box = {{{"X", "grant"}, {"X"}},
           {{"X", "idle"}, {"X"}},
           {{"X", "work"}, {"X"}},
           {{"X", "req"}, {"Y"}},
           {{"Y", "grant"}, {"x_tt", "X"}},
           {{"Y", "work"}, {"x_tt", "Y"}},
           {{"x_tt", "grant"}, {"x_tt"}},
           {{"x_tt", "idle"}, {"x_tt"}},
           {{"x_tt", "req"}, {"x_tt"}},
           {{"x_tt", "work"}, {"x_tt"}}};
  return n;
}

// Satisfies the property: never requests.
inline Lts request_grant_good_impl() {
  Lts l;
  l.alphabet = {"grant", "idle", "req", "work"};
  l.states = {"w"};
  l.initials = {"w"};
  l.trans = {{"w", "grant", "w"}, {"w", "idle", "w"}, {"w", "work", "w"}};
  return l;
}

// Violates the property: idles inside a request.
inline Lts request_grant_bad_impl() {
  Lts l;
  l.alphabet = {"grant", "idle", "req", "work"};
  l.states = {"w"};
  l.initials = {"w"};
  l.trans = {{"w", "grant", "w"},
             {"w", "idle", "w"},
             {"w", "req", "w"},
             {"w", "work", "w"}};
  return l;
}

// Separates the normal form from request_grant_nu: after req..grant it
// reaches a state (z1) that requests and then refuses to serve, which the
// relaxed grant-box of the normal form admits but the original does not.
inline Lts request_grant_gap_witness() {
  Lts l;
  l.alphabet = {"grant", "idle", "req", "work"};
  l.states = {"x", "y", "z0", "z1", "w"};
  l.initials = {"x"};
  l.trans = {{"x", "req", "y"},
             {"y", "grant", "z0"},
             {"y", "grant", "z1"},
             {"z1", "req", "w"}};
  return l;
}

// --- composition family (alphabet {a, b}) ------------------------------
//
// Left: an obligation to take a (to a committed a-loop) or b (to a stop);
// right: an a-choice between a committed a-loop and a stop.

inline Dmts compose_left() {
  Dmts d;
  d.alphabet = {"a", "b"};
  d.states = {"s1", "t1", "u1"};
  d.initials = {"s1"};
  d.may = {{"s1", "a", "t1"}, {"s1", "b", "u1"}, {"t1", "a", "t1"}};
  d.must = {{"s1", {{"a", "t1"}, {"b", "u1"}}}, {"t1", {{"a", "t1"}}}};
  return d;
}

inline Dmts compose_right() {
  Dmts d;
  d.alphabet = {"a", "b"};
  d.states = {"s2", "t2", "u2"};
  d.initials = {"s2"};
  d.may = {{"s2", "a", "t2"}, {"s2", "a", "u2"}, {"t2", "a", "t2"}};
  d.must = {{"s2", {{"a", "t2"}}}, {"s2", {{"a", "u2"}}},
            {"t2", {{"a", "t2"}}}};
  return d;
}

// Hand-derived reachable composite of the two (through the automaton
// product): three states named by their admissible sets, two of them
// initial, all obligations singletons.
inline Dmts compose_expected() {
  const StateId sP = "{a.(t1,t2),a.(t1,u2)}";
  const StateId tP = "{a.(t1,t2)}";
  const StateId uP = "{}";
  Dmts d;
  d.alphabet = {"a", "b"};
  d.states = {sP, tP, uP};
  d.initials = {sP, uP};
  d.may = {{sP, "a", tP}, {sP, "a", uP}, {tP, "a", tP}};
  d.must = {{sP, {{"a", tP}}}, {sP, {{"a", uP}}}, {tP, {{"a", tP}}}};
  return d;
}

// --- composition incompleteness (alphabet {a, b}) ----------------------
//
// Left obliges a, right obliges b; the composite admits the
// "either a-stop or b-stop" implementation (two initial states), which no
// product of single implementations of the operands is equivalent to.

inline Dmts compose_incomplete_left() {
  Dmts d;
  d.alphabet = {"a", "b"};
  d.states = {"p", "x", "y"};
  d.initials = {"p"};
  d.may = {{"p", "a", "x"}, {"p", "b", "y"}};
  d.must = {{"p", {{"a", "x"}}}};
  return d;
}

inline Dmts compose_incomplete_right() {
  Dmts d;
  d.alphabet = {"a", "b"};
  d.states = {"q", "w", "z"};
  d.initials = {"q"};
  d.may = {{"q", "a", "w"}, {"q", "b", "z"}};
  d.must = {{"q", {{"b", "z"}}}};
  return d;
}

inline Lts compose_incomplete_witness() {
  Lts l;
  l.alphabet = {"a", "b"};
  l.states = {"r1", "r2", "d"};
  l.initials = {"r1", "r2"};
  l.trans = {{"r1", "a", "d"}, {"r2", "b", "d"}};
  return l;
}

// --- admissible-set blow-up (alphabet {a}) ------------------------------

// A hub state admitting every even-cardinality subset of n successors;
// its transition-system form needs one state (and one initial state) per
// admissible set: 2^(n-1) of them.
inline Aa even_choice_aa(int n) {
  Aa a;
  a.alphabet = {"a"};
  a.states = {"h"};
  a.initials = {"h"};
  std::vector<StateId> qs;
  for (int i = 1; i <= n; ++i) {
    StateId q = "q" + std::to_string(i);
    a.states.insert(q);
    a.tran[q] = {AdmissibleSet{}};
    qs.push_back(q);
  }
  std::set<AdmissibleSet>& hub = a.tran["h"];
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) % 2 != 0) continue;
    AdmissibleSet m;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) m.insert({"a", qs[i]});
    hub.insert(std::move(m));
  }
  return a;
}

// --- normalization blow-up (alphabet {a, b}) ----------------------------

// Two three-way disjunctions under a conjunction; every disjunct carries a
// box, so none of them merge and the product multiplies out.
inline HmlDecl blowup_hml() {
  HmlDecl h;
  h.alphabet = {"a", "b"};
  h.vars = {"x"};
  h.initials = {"x"};
  FormulaPtr x = f_var("x");
  FormulaPtr left = f_or(
      f_or(f_and(f_dia("a", x), f_box("b", f_false())),
           f_and(f_dia("b", x), f_box("a", f_false()))),
      f_and(f_box("a", x), f_box("b", x)));
  FormulaPtr right = f_or(
      f_or(f_and(f_dia("a", x), f_box("a", x)),
           f_and(f_dia("b", x), f_box("b", x))),
      f_and(f_box("a", f_false()), f_box("b", f_false())));
  h.delta["x"] = f_and(left, right);
  return h;
}

}  // namespace fixtures
