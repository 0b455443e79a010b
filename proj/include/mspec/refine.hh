#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mspec/types.hh"

namespace mspec {

// A binary relation on state names, used as the "transition relation"
// parameter of relaxed refinement and of may-completion. The oracle flags
// record how the relation was produced when it comes from the bounded
// thorough-refinement check.
struct TrRelation {
  std::set<std::pair<StateId, StateId>> pairs;
  bool oracle_bounded = false;
  int budget_memory = 0;

  bool operator==(const TrRelation&) const = default;
};

TrRelation tr_identity(const StateSet& states);
TrRelation tr_reflexive_closure(TrRelation tr, const StateSet& states);

// Throws MspecError unless tr relates only members of `states` and contains
// the identity on `states`. `who` names the caller in the message.
void require_reflexive_over(const TrRelation& tr, const StateSet& states,
                            const std::string& who);

struct RefinementWitness {
  bool holds = false;
  // The greatest refinement relation between the two state spaces.
  std::set<std::pair<StateId, StateId>> relation;
  // Deterministic trace: one line per deleted candidate pair, plus the
  // initial-state verdict.
  std::vector<std::string> log;
  // When !holds: which initial state of the left side is unmatched.
  std::string counterexample;
};

// Modal refinement, computed as a greatest fixpoint by candidate-pair
// deletion. Throws MspecError when the alphabets differ.
RefinementWitness mr(const Dmts& d1, const Dmts& d2);
RefinementWitness mr(const Aa& a1, const Aa& a2);
RefinementWitness mr(const NuExprNF& n1, const NuExprNF& n2);
RefinementWitness mr(const HybridExpr& e1, const HybridExpr& e2);

// Modal refinement relaxed by transition relations: a may-step of the left
// side followed backwards through tr1 must be matched by a may-step of the
// right side followed backwards through tr2. Both relations must be
// reflexive over the respective state sets. With identity relations this
// coincides with mr.
RefinementWitness mtr(const Dmts& d1, const TrRelation& tr1, const Dmts& d2,
                      const TrRelation& tr2);

// The same relaxation for expressions in normal form, applied to their
// graph representations (variables become states, so the relations range
// over the variables of the respective expressions).
RefinementWitness mtr(const NuExprNF& n1, const TrRelation& tr1,
                      const NuExprNF& n2, const TrRelation& tr2);

}  // namespace mspec
