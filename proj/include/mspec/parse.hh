#pragma once

// Textual frontend: one grammar for all six system kinds plus named
// transition-relation blocks.
//
//   file   := (system | trrel)*
//   system := "system" kind name "{" clause* "}"
//   kind   := lts | dmts | aa | nu | hml | hybrid
//   trrel  := "trrel" name "{" ("tr" name name ";")* "}"
//
// Common clauses: "alphabet a, b;"  "states s, t;"  "initial s;"
// Kind-specific clauses:
//   lts    "trans s a t;"
//   dmts   "may s a t;"            "must s { a t, b u };"   (repeatable)
//   aa     "tran s { a t } { };"   ("tran s;" = no admissible set at all)
//   nu     "diamond x { a y };"    (repeatable)  "box x a { y, z };"
//   hml    "def x = <formula>;"    (no negation)
//   hybrid "def x = <formula>;"    (diamonds over variables, negation)
//
// Formulas: tt | ff | name | <a> f | [a] f | [a,b] f | f & f | f "|" f |
// !f | (f); precedence ! and modal prefixes > & > |; "[a,b] f" abbreviates
// "[a] f & [b] f".
//
// Names are bare identifiers ([A-Za-z_][A-Za-z0-9_]*, not a reserved word)
// or double-quoted strings with \" and \\ escapes; a quoted name cannot
// contain a raw newline. Reserved words: system trrel tr alphabet states
// initial trans may must tran diamond box def tt ff. "#" starts a comment
// to end of line.

#include <string>
#include <variant>
#include <vector>

#include "mspec/refine.hh"
#include "mspec/types.hh"

namespace mspec {

struct ParseError : MspecError {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_);
};

using System = std::variant<Lts, Dmts, Aa, NuExprNF, HybridExpr, HmlDecl>;

// The kind tag used in the grammar for a given alternative.
std::string system_kind(const System& s);

struct NamedSystem {
  std::string name;
  System sys;
};

struct NamedTrRel {
  std::string name;
  TrRelation rel;
};

struct SpecFile {
  std::vector<NamedSystem> systems;  // in file order
  std::vector<NamedTrRel> trrels;

  const NamedSystem* find_system(const std::string& name) const;
  const NamedTrRel* find_trrel(const std::string& name) const;
};

// Parses a complete file. Syntax problems raise ParseError with position;
// blocks that parse but fail validate() raise MspecError naming the block.
// Block names must be unique per file (systems and trrels separately).
SpecFile parse_spec(const std::string& text);

// Parses a single formula (the full remaining input must be one formula).
FormulaPtr parse_formula(const std::string& text);

}  // namespace mspec
