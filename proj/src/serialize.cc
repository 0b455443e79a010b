#include "mspec/serialize.hh"

#include <map>
#include <sstream>

#include "mspec/transform.hh"

namespace mspec {
namespace {

std::string namelist(const StateSet& names) {
  std::string out;
  bool first = true;
  for (const StateId& s : names) {
    if (!first) out += ", ";
    first = false;
    out += quote_name(s);
  }
  return out;
}

std::string admissible_body(const AdmissibleSet& n) {
  std::string out;
  bool first = true;
  for (const auto& [a, t] : n) {
    if (!first) out += ", ";
    first = false;
    out += quote_name(a) + " " + quote_name(t);
  }
  return out;
}

std::string group(const AdmissibleSet& n) {
  std::string body = admissible_body(n);
  return body.empty() ? "{ }" : "{ " + body + " }";
}

void header(std::ostringstream& os, const std::string& kind,
            const std::string& name, const Alphabet& alphabet,
            const StateSet& states, const StateSet& initials) {
  os << "system " << kind << " " << quote_name(name) << " {\n";
  os << "  alphabet " << namelist(alphabet) << ";\n";
  os << "  states " << namelist(states) << ";\n";
  os << "  initial " << namelist(initials) << ";\n";
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string serialize(const Lts& v, const std::string& name) {
  std::ostringstream os;
  header(os, "lts", name, v.alphabet, v.states, v.initials);
  for (const auto& [s, a, t] : v.trans)
    os << "  trans " << quote_name(s) << " " << quote_name(a) << " "
       << quote_name(t) << ";\n";
  os << "}\n";
  return os.str();
}

std::string serialize(const Dmts& v, const std::string& name) {
  std::ostringstream os;
  header(os, "dmts", name, v.alphabet, v.states, v.initials);
  for (const auto& [s, a, t] : v.may)
    os << "  may " << quote_name(s) << " " << quote_name(a) << " "
       << quote_name(t) << ";\n";
  for (const auto& [s, n] : v.must)
    os << "  must " << quote_name(s) << " " << group(n) << ";\n";
  os << "}\n";
  return os.str();
}

std::string serialize(const Aa& v, const std::string& name) {
  std::ostringstream os;
  header(os, "aa", name, v.alphabet, v.states, v.initials);
  for (const auto& [s, sets] : v.tran) {
    if (sets.empty()) continue;  // same meaning as no entry
    os << "  tran " << quote_name(s);
    for (const AdmissibleSet& m : sets) os << " " << group(m);
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string serialize(const NuExprNF& v, const std::string& name) {
  std::ostringstream os;
  header(os, "nu", name, v.alphabet, v.vars, v.initials);
  for (const auto& [x, sets] : v.diamond)
    for (const AdmissibleSet& n : sets)
      os << "  diamond " << quote_name(x) << " " << group(n) << ";\n";
  for (const auto& [key, ys] : v.box) {
    if (ys.empty()) continue;  // same meaning as no entry
    os << "  box " << quote_name(key.first) << " " << quote_name(key.second)
       << " { " << namelist(ys) << " };\n";
  }
  os << "}\n";
  return os.str();
}

std::string serialize(const HybridExpr& v, const std::string& name) {
  std::ostringstream os;
  header(os, "hybrid", name, v.alphabet, v.vars, v.initials);
  for (const auto& [x, f] : v.phi)
    os << "  def " << quote_name(x) << " = " << formula_str(f) << ";\n";
  os << "}\n";
  return os.str();
}

std::string serialize(const HmlDecl& v, const std::string& name) {
  std::ostringstream os;
  header(os, "hml", name, v.alphabet, v.vars, v.initials);
  for (const auto& [x, f] : v.delta)
    os << "  def " << quote_name(x) << " = " << formula_str(f) << ";\n";
  os << "}\n";
  return os.str();
}

std::string serialize(const TrRelation& v, const std::string& name) {
  std::ostringstream os;
  os << "trrel " << quote_name(name) << " {\n";
  for (const auto& [s, t] : v.pairs)
    os << "  tr " << quote_name(s) << " " << quote_name(t) << ";\n";
  os << "}\n";
  return os.str();
}

std::string serialize(const System& v, const std::string& name) {
  return std::visit([&](const auto& s) { return serialize(s, name); }, v);
}

std::string serialize(const SpecFile& f) {
  std::string out;
  bool first = true;
  for (const NamedSystem& s : f.systems) {
    if (!first) out += "\n";
    first = false;
    out += serialize(s.sys, s.name);
  }
  for (const NamedTrRel& r : f.trrels) {
    if (!first) out += "\n";
    first = false;
    out += serialize(r.rel, r.name);
  }
  return out;
}

std::string to_dot(const Lts& v, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n";
  os << "  rankdir=LR;\n";
  int k = 0;
  for (const StateId& s : v.initials) {
    os << "  \"__init" << k << "\" [shape=none, label=\"\"];\n";
    os << "  \"__init" << k << "\" -> \"" << dot_escape(s) << "\";\n";
    ++k;
  }
  for (const StateId& s : v.states)
    os << "  \"" << dot_escape(s) << "\" [shape=circle];\n";
  std::map<std::pair<StateId, StateId>, std::set<Action>> merged;
  for (const auto& [s, a, t] : v.trans) merged[{s, t}].insert(a);
  for (const auto& [st, acts] : merged) {
    std::string label;
    for (const Action& a : acts) label += (label.empty() ? "" : ",") + a;
    os << "  \"" << dot_escape(st.first) << "\" -> \"" << dot_escape(st.second)
       << "\" [label=\"" << dot_escape(label) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const Dmts& v, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n";
  os << "  rankdir=LR;\n";
  int k = 0;
  for (const StateId& s : v.initials) {
    os << "  \"__init" << k << "\" [shape=none, label=\"\"];\n";
    os << "  \"__init" << k << "\" -> \"" << dot_escape(s) << "\";\n";
    ++k;
  }
  for (const StateId& s : v.states)
    os << "  \"" << dot_escape(s) << "\" [shape=circle];\n";

  // Transitions demanded by singleton musts: solid arrows, one per
  // source/target pair with the action labels merged.
  std::map<std::pair<StateId, StateId>, std::set<Action>> solid;
  // Disjunctive musts (anything but a single option): a point node fanning
  // out to the options.
  int j = 0;
  for (const auto& [s, n] : v.must) {
    if (n.size() == 1) {
      solid[{s, n.begin()->second}].insert(n.begin()->first);
      continue;
    }
    os << "  \"__must" << j << "\" [shape=point];\n";
    os << "  \"" << dot_escape(s) << "\" -> \"__must" << j
       << "\" [dir=none];\n";
    for (const auto& [a, t] : n)
      os << "  \"__must" << j << "\" -> \"" << dot_escape(t) << "\" [label=\""
         << dot_escape(a) << "\"];\n";
    ++j;
  }
  for (const auto& [st, acts] : solid) {
    std::string label;
    for (const Action& a : acts) label += (label.empty() ? "" : ",") + a;
    os << "  \"" << dot_escape(st.first) << "\" -> \"" << dot_escape(st.second)
       << "\" [label=\"" << dot_escape(label) << "\"];\n";
  }

  // May-edges not required by any must of their source: dashed arrows.
  std::map<StateId, AdmissibleSet> required;
  for (const auto& [s, n] : v.must)
    required[s].insert(n.begin(), n.end());
  std::map<std::pair<StateId, StateId>, std::set<Action>> dashed;
  for (const auto& [s, a, t] : v.may) {
    auto it = required.find(s);
    if (it != required.end() && it->second.count({a, t})) continue;
    dashed[{s, t}].insert(a);
  }
  for (const auto& [st, acts] : dashed) {
    std::string label;
    for (const Action& a : acts) label += (label.empty() ? "" : ",") + a;
    os << "  \"" << dot_escape(st.first) << "\" -> \"" << dot_escape(st.second)
       << "\" [label=\"" << dot_escape(label) << "\", style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const System& v, const std::string& name) {
  switch (v.index()) {
    case 0:
      return to_dot(std::get<Lts>(v), name);
    case 1:
      return to_dot(std::get<Dmts>(v), name);
    case 2:
      return to_dot(bd(std::get<Aa>(v)), name);
    case 3:
      return to_dot(hd(std::get<NuExprNF>(v)), name);
    case 4:
      return to_dot(bd(lb(std::get<HybridExpr>(v))), name);
    default:
      throw MspecError(
          "cannot draw an hml system directly; normalize it first");
  }
}

}  // namespace mspec
