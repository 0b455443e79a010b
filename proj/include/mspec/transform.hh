#pragma once

#include "mspec/refine.hh"
#include "mspec/types.hh"

namespace mspec {

// Automaton -> hybrid expression. For every state, the produced formula
// denotes exactly the state's set of admissible transition sets
// (characteristic formula construction).
HybridExpr bl(const Aa& a);

// Hybrid expression -> automaton: transition sets are the formula
// denotations. Throws MspecError when an initial variable's formula has an
// empty denotation (an automaton initial must admit something).
Aa lb(const HybridExpr& e);

// Transition system -> automaton: a state admits every subset of its
// may-steps that hits each of its obligation sets. Throws MspecError when a
// state has more than 20 may-steps (the subset enumeration is exponential).
Aa db(const Dmts& d);

// Automaton -> transition system. States are the distinct admissible sets
// occurring anywhere in the automaton, named by show_admissible; equal sets
// from different source states are merged. The result is equivalent, not
// isomorphic, to the input in general.
Dmts bd(const Aa& a);

// Transition system <-> normal-form equation system. These two are exact
// inverses of each other: obligation sets become diamond clauses and
// may-steps become box-set membership.
NuExprNF dh(const Dmts& d);
Dmts hd(const NuExprNF& n);

// Normal form -> transition system, relaxed by a relation on variables:
// there is a may-step (x, a, y') whenever some y in the box set of x at a
// has (y', y) in tr. tr must be reflexive over the variables; with the
// identity this is hd.
Dmts hdt(const NuExprNF& n, const TrRelation& tr);

// Widens the may-steps of d through tr: (s, a, t') is a may-step whenever
// some may-step (s, a, t) has (t', t) in tr. Obligations are unchanged.
// tr must be reflexive over the states. Equals hdt(dh(d), tr).
Dmts may_completion(const Dmts& d, const TrRelation& tr);

// Converts a declaration to an equivalent normal-form equation system.
// Guarded against disjunctive blow-up (throws MspecError past 4096
// disjuncts in one product or 4096 generated variables).
NuExprNF normalize(const HmlDecl& h);

}  // namespace mspec
