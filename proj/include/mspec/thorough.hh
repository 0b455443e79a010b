#pragma once

#include <functional>

#include "mspec/refine.hh"
#include "mspec/types.hh"

namespace mspec {

struct OracleBudget {
  // Copies of each state available to an implementation.
  int memory = 1;
  // Cap on enumerated implementations per check; values <= 0 mean no cap.
  long max_impls = 100000;
};

// Enumerates the implementations of d built from `memory` copies of each
// state: every reachable copy independently realizes a subset of its
// may-steps (into any copy of the target) that hits each obligation of its
// state; unreachable copies are left out. With memory 1 the states keep
// their names, otherwise copies are named s#1..s#memory and all copies of
// initial states are initial. Calls fn on each implementation until fn
// returns false; the return value tells whether the walk ran to completion.
// Throws MspecError when max out-degree times memory exceeds 18.
bool for_each_concretization(const Dmts& d, int memory,
                             const std::function<bool(const Lts&)>& fn);

std::vector<Lts> concretizations(const Dmts& d, int memory);

struct ThoroughVerdict {
  // A refuting implementation of the left side was found; this settles
  // thorough refinement negatively.
  bool refuted = false;
  // The enumeration completed for every memory level up to the budget; a
  // non-refuted verdict is then exhaustive for those levels (still only a
  // bounded answer overall).
  bool exhausted = false;
  long impls_checked = 0;
  Lts witness;  // the refuting implementation when refuted
  std::string note;
};

// Bounded thorough-refinement check: searches the implementations of lhs
// at memory 1..b.memory for one that does not refine rhs.
ThoroughVerdict check_thorough(const Dmts& lhs, const Dmts& rhs,
                               const OracleBudget& b);
ThoroughVerdict check_thorough(const Aa& lhs, const Aa& rhs,
                               const OracleBudget& b);
ThoroughVerdict check_thorough(const NuExprNF& lhs, const NuExprNF& rhs,
                               const OracleBudget& b);
ThoroughVerdict check_thorough(const HybridExpr& lhs, const HybridExpr& rhs,
                               const OracleBudget& b);

// Bounded approximation of the thorough-refinement relation between the
// states of d: (s, t) is included when modal refinement holds from s to t,
// or when b.memory > 0 and the bounded check finds no refutation. Always
// reflexive; tagged with the producing budget.
TrRelation bounded_tr(const Dmts& d, const OracleBudget& b);

}  // namespace mspec
