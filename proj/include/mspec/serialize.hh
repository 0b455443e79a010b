#pragma once

// Canonical text output for every system kind, in the same grammar the
// parser reads. Output is deterministic: sets and maps are emitted in
// sorted order, and entries whose value is an empty set are omitted (the
// parser treats absence and emptiness alike). parse(serialize(v)) == v
// holds structurally for every valid value.
//
// to_dot renders a Graphviz digraph. Solid edges are committed
// transitions (singleton musts), dashed edges are permitted-only steps,
// and a disjunctive must is drawn through an anonymous point node fanning
// out to its options. Kinds other than lts/dmts are converted to their
// transition-system form first; equation systems with free-form bodies
// cannot be drawn (normalize first).

#include <string>

#include "mspec/parse.hh"
#include "mspec/refine.hh"
#include "mspec/types.hh"

namespace mspec {

std::string serialize(const Lts& v, const std::string& name);
std::string serialize(const Dmts& v, const std::string& name);
std::string serialize(const Aa& v, const std::string& name);
std::string serialize(const NuExprNF& v, const std::string& name);
std::string serialize(const HybridExpr& v, const std::string& name);
std::string serialize(const HmlDecl& v, const std::string& name);
std::string serialize(const TrRelation& v, const std::string& name);
std::string serialize(const System& v, const std::string& name);
std::string serialize(const SpecFile& f);

std::string to_dot(const Lts& v, const std::string& name);
std::string to_dot(const Dmts& v, const std::string& name);
std::string to_dot(const System& v, const std::string& name);

}  // namespace mspec
