#pragma once

#include <map>

#include "mspec/types.hh"

namespace mspec {

// Denotation of a hybrid formula as an explicit set of admissible sets over
// the universe alphabet x vars. Guarded: throws MspecError when the universe
// exceeds 20 elements (the computation is exponential in its size).
std::set<AdmissibleSet> eval_hybrid(const HybridExpr& e, const FormulaPtr& f);

// Denotations of all per-variable formulas of e.
std::map<StateId, std::set<AdmissibleSet>> hybrid_denotations(
    const HybridExpr& e);

// Renders a normal-form equation system as an equivalent declaration:
//   delta(x) = AND over diamond clauses N of (OR of <a>y for (a,y) in N)
//            AND for every action a:  [a] (OR of the box set of x at a)
// with the empty disjunction read as ff.
HmlDecl nf_formula(const NuExprNF& n);

// Greatest-fixpoint evaluation of a (negation-free) declaration over an LTS:
// returns, per variable, the set of LTS states satisfying it.
std::map<StateId, StateSet> eval_hml_gfp(const Lts& l, const HmlDecl& n);

// Satisfaction: every initial state of l satisfies some initial variable.
// Throws MspecError when the alphabets differ.
bool models(const Lts& l, const HmlDecl& n);
bool models(const Lts& l, const NuExprNF& n);

}  // namespace mspec
