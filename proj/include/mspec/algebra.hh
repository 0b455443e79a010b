#pragma once

// Algebraic operations on specifications: constants, conjunction,
// disjunction, structural composition, and quotient.
//
// Binary operations require both operands to share the same alphabet and
// throw MspecError otherwise.  Operations on expressions in normal form
// produce expressions in normal form; state names of product constructions
// are derived from the operand state names (see PairNamer conventions in
// the implementation) and are deterministic for given inputs.

#include "mspec/types.hh"

namespace mspec {

// --- Constants --------------------------------------------------------

// The inconsistent specification: admits no implementation that has an
// initial state.  (An LTS without initial states satisfies it vacuously.)
NuExprNF nu_bottom(const Alphabet& alphabet);

// The universal specification: admits every implementation over the
// given alphabet.  A single variable "s" with no diamond requirements and
// all boxes looping back to "s".
NuExprNF nu_top(const Alphabet& alphabet);

// Neutral element for full-synchronization composition: a single state
// "u" with a self-loop for every action.
Lts unit_lts(const Alphabet& alphabet);

// --- Conversions used by the binary operations ------------------------

// Round trips between expressions in normal form and acceptance automata.
// nu_to_aa may enlarge the system exponentially in the per-state
// out-degree; aa_to_nu names states after their admissible sets.
Aa nu_to_aa(const NuExprNF& n);
NuExprNF aa_to_nu(const Aa& a);

// --- Disjunction and conjunction --------------------------------------

// Disjoint union.  Variables of the second operand that collide with
// variables of the first are renamed by appending "'" until free.
NuExprNF nu_or(const NuExprNF& n1, const NuExprNF& n2);

// Product construction.  Variables are pairs "(x1,x2)"; boxes are
// componentwise products and each diamond requirement of either operand
// is lifted to the product.  A lifted requirement can become empty (the
// partner offers no permitted successor), leaving an inconsistent product
// state; such states are kept.
NuExprNF nu_and(const NuExprNF& n1, const NuExprNF& n2);

// --- Structural composition (full synchronization) --------------------

// CSP-style parallel composition: every action synchronizes.  Only pairs
// reachable from the initial pairs are constructed.
Lts lts_compose(const Lts& l1, const Lts& l2);
Aa aa_compose(const Aa& a1, const Aa& a2);

// Composition of expressions in normal form, computed by converting both
// operands to acceptance automata, composing, and converting back.
NuExprNF nu_compose(const NuExprNF& n1, const NuExprNF& n2);

// --- Quotient ---------------------------------------------------------

// The quotient spec/divisor: the most permissive specification X such
// that  divisor || X  refines  spec.  States of the result are sets of
// (spec state, divisor state) pairs; the empty set "{}" is a universal
// state that permits everything.
//
// Guards (throwing MspecError): at most 12 actions, at most 16 potential
// transitions out of a quotient state, and at most 4096 successor
// assignments per state/action pair.
Aa aa_quotient(const Aa& spec, const Aa& divisor);

// Quotient of expressions in normal form via the automaton construction.
NuExprNF nu_quotient(const NuExprNF& spec, const NuExprNF& divisor);

}  // namespace mspec
