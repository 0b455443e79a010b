#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mspec/formula.hh"

namespace mspec {

// Thrown for precondition violations (alphabet mismatches, malformed
// operands, enumeration guards). The CLI maps it to exit code 2.
struct MspecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Alphabet = std::set<Action>;
using StateSet = std::set<StateId>;
using Transition = std::tuple<StateId, Action, StateId>;

// One transition constraint set: finitely many (action, target) pairs.
// Used for disjunctive musts, automaton transition sets, and diamond
// clauses alike.
using AdmissibleSet = std::set<std::pair<Action, StateId>>;

// Renders "{a.t,b.u}" (sorted, names quoted when needed). Also used as the
// state-naming scheme when admissible sets become states of a derived
// system.
std::string show_admissible(const AdmissibleSet& n);

// Plain labeled transition system over a declared finite alphabet.
struct Lts {
  Alphabet alphabet;
  StateSet states;
  StateSet initials;
  std::set<Transition> trans;

  bool operator==(const Lts&) const = default;
};

// Transition system with a may-relation and disjunctive must-constraints:
// each must entry (s, N) demands that at least one (a, t) in N is realized,
// and well-formedness requires every such (a, t) to be a may-edge of s.
struct Dmts {
  Alphabet alphabet;
  StateSet states;
  StateSet initials;
  std::set<Transition> may;
  std::set<std::pair<StateId, AdmissibleSet>> must;

  bool operator==(const Dmts&) const = default;
};

// Acceptance automaton: every state carries the set of transition sets it
// admits. By convention the `tran` map holds no empty-set entries; a state
// without an entry has no admissible transition set (an inconsistent state).
struct Aa {
  Alphabet alphabet;
  StateSet states;
  StateSet initials;
  std::map<StateId, std::set<AdmissibleSet>> tran;

  const std::set<AdmissibleSet>& tran_of(const StateId& s) const;

  bool operator==(const Aa&) const = default;
};

// Greatest-fixpoint equation system in conjunctive normal form: each
// variable carries a set of diamond clauses (each an AdmissibleSet, read as
// "at least one of these steps exists") and, per action, a box set (the
// disjunction of variables every a-successor must satisfy; missing entry =
// empty set = the action is forbidden). Consistency: every (a, y) occurring
// in a diamond clause of x must satisfy y in box(x, a). Maps hold no
// empty-set entries.
struct NuExprNF {
  Alphabet alphabet;
  StateSet vars;
  StateSet initials;
  std::map<StateId, std::set<AdmissibleSet>> diamond;
  std::map<std::pair<StateId, Action>, StateSet> box;

  const std::set<AdmissibleSet>& diamonds_of(const StateId& x) const;
  const StateSet& box_of(const StateId& x, const Action& a) const;

  bool operator==(const NuExprNF&) const = default;
};

// One state formula per variable; diamonds in formulas target variables.
struct HybridExpr {
  Alphabet alphabet;
  StateSet vars;
  StateSet initials;
  std::map<StateId, FormulaPtr> phi;

  bool operator==(const HybridExpr& o) const;
};

// Greatest-fixpoint equation system with free-form declaration bodies.
struct HmlDecl {
  Alphabet alphabet;
  StateSet vars;
  StateSet initials;
  std::map<StateId, FormulaPtr> delta;

  bool operator==(const HmlDecl& o) const;
};

// --- validation ------------------------------------------------------------

// Each validate returns a deterministic, lexicographically sorted list of
// human-readable violations; an empty list means the value is well-formed.
std::vector<std::string> validate(const Lts& l);
std::vector<std::string> validate(const Dmts& d);
std::vector<std::string> validate(const Aa& a);
std::vector<std::string> validate(const NuExprNF& n);
std::vector<std::string> validate(const HybridExpr& e);
std::vector<std::string> validate(const HmlDecl& n);

// --- implementations -------------------------------------------------------

// An Lts is trivially an implementation; for the other formalisms these
// recognize the implementation-shaped values:
//   Dmts: must is exactly the singleton set per may-edge;
//   Aa:   every state admits exactly one transition set;
//   NuExprNF: diamonds are exactly the singletons over the box sets;
//   HybridExpr: every variable's formula denotes exactly one set
//               (defined in semantics.cc).
bool is_implementation(const Dmts& d);
bool is_implementation(const Aa& a);
bool is_implementation(const NuExprNF& n);
bool is_implementation(const HybridExpr& e);

// Extract the underlying Lts from an implementation-shaped value.
// Throws MspecError if is_implementation does not hold.
Lts as_lts(const Dmts& d);
Lts as_lts(const Aa& a);
Lts as_lts(const NuExprNF& n);

// --- embeddings ------------------------------------------------------------

Dmts embed_lts_dmts(const Lts& l);
Aa embed_lts_aa(const Lts& l);
NuExprNF embed_lts_nu(const Lts& l);
HybridExpr embed_lts_hybrid(const Lts& l);

// --- canonical renaming ----------------------------------------------------

// Renames states to s0..sN in sorted-name order. Two systems count as
// isomorphic when their canonical renamings are equal.
Lts canonical_rename(const Lts& l);
Dmts canonical_rename(const Dmts& d);
Aa canonical_rename(const Aa& a);
NuExprNF canonical_rename(const NuExprNF& n);

}  // namespace mspec
