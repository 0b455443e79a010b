#pragma once

#include <memory>
#include <string>

namespace mspec {

using Action = std::string;
using StateId = std::string;

// Formula AST shared by the two formula languages of the tool:
//   * state formulas over transition constraints:
//       tt | ff | <a> x | !f | f & f | f | f        (diamond bodies are bare
//       variables, negation allowed, no boxes)
//   * declaration bodies for greatest-fixpoint equation systems:
//       tt | ff | x | <a> f | [a] f | f & f | f | f (no negation)
// A single node type carries both; per-language validation lives with the
// owning system types.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { True, False, Var, Dia, Box, And, Or, Not };
  Kind kind;
  Action act;      // Dia, Box
  StateId var;     // Var
  FormulaPtr lhs;  // And/Or left; Dia/Box/Not operand
  FormulaPtr rhs;  // And/Or right
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_var(const StateId& x);
FormulaPtr f_dia(const Action& a, FormulaPtr body);
FormulaPtr f_box(const Action& a, FormulaPtr body);
FormulaPtr f_and(FormulaPtr l, FormulaPtr r);
FormulaPtr f_or(FormulaPtr l, FormulaPtr r);
FormulaPtr f_not(FormulaPtr f);

// Total structural order; returns <0, 0, >0. 0 iff structurally equal.
int formula_cmp(const FormulaPtr& a, const FormulaPtr& b);
bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);

// Renders a formula in the frontend grammar with minimal parentheses.
// Precedence: ! and the modal prefixes bind tightest, then &, then |.
// The rendering is injective on distinct ASTs, so it doubles as a
// canonical key.
std::string formula_str(const FormulaPtr& f);

// True if s can stand as a bare name token in the frontend grammar
// ([A-Za-z_][A-Za-z0-9_]* and not a reserved word).
bool is_plain_name(const std::string& s);

// Renders a name, double-quoting it when it is not a plain name.
std::string quote_name(const std::string& s);

}  // namespace mspec
