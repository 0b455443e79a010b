// Command-line front end.
//
// Exit codes: 0 = verdict holds (or output produced), 1 = verdict fails,
// 2 = any error (bad reference, parse or validation failure, alphabet
// mismatch, enumeration guard).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mspec/algebra.hh"
#include "mspec/parse.hh"
#include "mspec/refine.hh"
#include "mspec/semantics.hh"
#include "mspec/serialize.hh"
#include "mspec/thorough.hh"
#include "mspec/transform.hh"

namespace {

using namespace mspec;

// A system or relation reference: "path" (single block in file) or
// "path#name".
struct Ref {
  std::string path;
  std::string name;  // empty: unique block of its sort in the file
};

Ref split_ref(const std::string& arg) {
  auto pos = arg.rfind('#');
  if (pos == std::string::npos) return {arg, ""};
  return {arg.substr(0, pos), arg.substr(pos + 1)};
}

SpecFile load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MspecError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_spec(ss.str());
  } catch (const MspecError& e) {
    throw MspecError(path + ": " + e.what());
  }
}

NamedSystem load_system(const std::string& arg) {
  Ref r = split_ref(arg);
  SpecFile f = load_file(r.path);
  if (r.name.empty()) {
    if (f.systems.size() != 1)
      throw MspecError(r.path + ": expected exactly one system (found " +
                       std::to_string(f.systems.size()) +
                       "); use FILE#NAME to pick one");
    return f.systems[0];
  }
  const NamedSystem* s = f.find_system(r.name);
  if (!s) throw MspecError(r.path + ": no system named '" + r.name + "'");
  return *s;
}

// Relation references: "name" resolves within `context_path`; "file#name"
// resolves elsewhere; a bare "file" must contain exactly one trrel.
TrRelation load_trrel(const std::string& arg, const std::string& context_path) {
  Ref r = split_ref(arg);
  std::string path = r.path;
  std::string name = r.name;
  if (name.empty()) {
    SpecFile ctx = load_file(context_path);
    if (const NamedTrRel* t = ctx.find_trrel(arg)) return t->rel;
    SpecFile f = load_file(path);
    if (f.trrels.size() == 1) return f.trrels[0].rel;
    throw MspecError("cannot resolve relation '" + arg + "' (not a name in " +
                     context_path + ", not a file with one trrel)");
  }
  SpecFile f = load_file(path);
  const NamedTrRel* t = f.find_trrel(name);
  if (!t) throw MspecError(path + ": no relation named '" + name + "'");
  return t->rel;
}

const char* kind_of(const System& s) {
  static const char* names[] = {"lts", "dmts", "aa", "nu", "hybrid", "hml"};
  return names[s.index()];
}

StateSet states_of(const System& s) {
  switch (s.index()) {
    case 0:
      return std::get<Lts>(s).states;
    case 1:
      return std::get<Dmts>(s).states;
    case 2:
      return std::get<Aa>(s).states;
    case 3:
      return std::get<NuExprNF>(s).vars;
    case 4:
      return std::get<HybridExpr>(s).vars;
    default:
      return std::get<HmlDecl>(s).vars;
  }
}

NuExprNF to_nu(const NamedSystem& s) {
  switch (s.sys.index()) {
    case 0:
      return embed_lts_nu(std::get<Lts>(s.sys));
    case 1:
      return dh(std::get<Dmts>(s.sys));
    case 2:
      return aa_to_nu(std::get<Aa>(s.sys));
    case 3:
      return std::get<NuExprNF>(s.sys);
    case 4:
      return aa_to_nu(lb(std::get<HybridExpr>(s.sys)));
    default:
      throw MspecError("system '" + s.name +
                       "': hml systems must be normalized first");
  }
}

// Brings both sides of a refinement query to a common kind. An lts adapts
// to the other side; otherwise the kinds must already agree.
void align_kinds(NamedSystem& a, NamedSystem& b) {
  if (a.sys.index() == b.sys.index()) return;
  auto embed_to = [](const Lts& l, std::size_t kind) -> System {
    switch (kind) {
      case 1:
        return embed_lts_dmts(l);
      case 2:
        return embed_lts_aa(l);
      case 3:
        return embed_lts_nu(l);
      case 4:
        return embed_lts_hybrid(l);
      default:
        throw MspecError("cannot embed an lts into an hml system");
    }
  };
  if (a.sys.index() == 0)
    a.sys = embed_to(std::get<Lts>(a.sys), b.sys.index());
  else if (b.sys.index() == 0)
    b.sys = embed_to(std::get<Lts>(b.sys), a.sys.index());
  else
    throw MspecError(std::string("kind mismatch: '") + a.name + "' is " +
                     kind_of(a.sys) + " but '" + b.name + "' is " +
                     kind_of(b.sys) + "; translate one of them first");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw MspecError("cannot write file '" + out_path + "'");
  out << text;
}

int report(const RefinementWitness& w, const std::string& what) {
  if (w.holds) {
    std::cout << what << " holds\n";
    std::cout << "relation:\n";
    for (const auto& [s, t] : w.relation)
      std::cout << "  (" << s << ", " << t << ")\n";
    return 0;
  }
  std::cout << what << " fails: " << w.counterexample << "\n";
  for (const std::string& line : w.log) std::cout << "  " << line << "\n";
  return 1;
}

struct CheckArgs {
  std::string mode;
  std::string lhs, rhs;
  std::string tr, tr2;
  int memory = 1;
  long limit = 100000;
};

int run_check(const CheckArgs& args) {
  NamedSystem a = load_system(args.lhs);
  NamedSystem b = load_system(args.rhs);
  if (args.mode == "mr") {
    align_kinds(a, b);
    switch (a.sys.index()) {
      case 0:
        return report(mr(embed_lts_dmts(std::get<Lts>(a.sys)),
                         embed_lts_dmts(std::get<Lts>(b.sys))),
                      "mr");
      case 1:
        return report(mr(std::get<Dmts>(a.sys), std::get<Dmts>(b.sys)), "mr");
      case 2:
        return report(mr(std::get<Aa>(a.sys), std::get<Aa>(b.sys)), "mr");
      case 3:
        return report(mr(std::get<NuExprNF>(a.sys), std::get<NuExprNF>(b.sys)),
                      "mr");
      case 4:
        return report(
            mr(std::get<HybridExpr>(a.sys), std::get<HybridExpr>(b.sys)),
            "mr");
      default:
        throw MspecError("hml systems must be normalized before mr");
    }
  }
  if (args.mode == "mtr") {
    align_kinds(a, b);
    auto relation = [&](const std::string& arg, const NamedSystem& sys,
                        const std::string& from) {
      StateSet states = states_of(sys.sys);
      if (arg.empty()) return tr_identity(states);
      return tr_reflexive_closure(load_trrel(arg, split_ref(from).path),
                                  states);
    };
    TrRelation t1 = relation(args.tr, a, args.lhs);
    TrRelation t2 =
        relation(args.tr2.empty() ? args.tr : args.tr2, b, args.rhs);
    if (a.sys.index() == 1)
      return report(mtr(std::get<Dmts>(a.sys), t1, std::get<Dmts>(b.sys), t2),
                    "mtr");
    if (a.sys.index() == 3)
      return report(
          mtr(std::get<NuExprNF>(a.sys), t1, std::get<NuExprNF>(b.sys), t2),
          "mtr");
    throw MspecError(
        "mtr is defined for dmts and nu systems (translate first)");
  }
  // thorough
  align_kinds(a, b);
  OracleBudget budget;
  budget.memory = args.memory;
  budget.max_impls = args.limit;
  ThoroughVerdict v;
  switch (a.sys.index()) {
    case 0:
      v = check_thorough(embed_lts_dmts(std::get<Lts>(a.sys)),
                         embed_lts_dmts(std::get<Lts>(b.sys)), budget);
      break;
    case 1:
      v = check_thorough(std::get<Dmts>(a.sys), std::get<Dmts>(b.sys), budget);
      break;
    case 2:
      v = check_thorough(std::get<Aa>(a.sys), std::get<Aa>(b.sys), budget);
      break;
    case 3:
      v = check_thorough(std::get<NuExprNF>(a.sys), std::get<NuExprNF>(b.sys),
                         budget);
      break;
    case 4:
      v = check_thorough(std::get<HybridExpr>(a.sys),
                         std::get<HybridExpr>(b.sys), budget);
      break;
    default:
      throw MspecError("hml systems must be normalized before thorough");
  }
  if (v.refuted) {
    std::cout << "thorough refinement refuted (" << v.impls_checked
              << " implementations checked, memory up to " << args.memory
              << ")\n";
    std::cout << "witness implementation:\n";
    std::cout << serialize(v.witness, "witness");
    return 1;
  }
  std::cout << "no refutation found (" << v.impls_checked
            << " implementations checked, memory up to " << args.memory
            << ", enumeration " << (v.exhausted ? "complete" : "incomplete")
            << ")\n";
  if (!v.note.empty()) std::cout << "note: " << v.note << "\n";
  return 0;
}

System translate_to(const NamedSystem& s, const std::string& target) {
  const std::string kind = kind_of(s.sys);
  if (kind == "hml")
    throw MspecError("system '" + s.name +
                     "': hml systems must be normalized first");
  if (target == "dmts") {
    switch (s.sys.index()) {
      case 0:
        return embed_lts_dmts(std::get<Lts>(s.sys));
      case 1:
        return std::get<Dmts>(s.sys);
      case 2:
        return bd(std::get<Aa>(s.sys));
      case 3:
        return hd(std::get<NuExprNF>(s.sys));
      default:
        return bd(lb(std::get<HybridExpr>(s.sys)));
    }
  }
  if (target == "aa") {
    switch (s.sys.index()) {
      case 0:
        return embed_lts_aa(std::get<Lts>(s.sys));
      case 1:
        return db(std::get<Dmts>(s.sys));
      case 2:
        return std::get<Aa>(s.sys);
      case 3:
        return nu_to_aa(std::get<NuExprNF>(s.sys));
      default:
        return lb(std::get<HybridExpr>(s.sys));
    }
  }
  if (target == "nu") {
    if (s.sys.index() == 3) return s.sys;
    return to_nu(s);
  }
  // hybrid
  switch (s.sys.index()) {
    case 0:
      return embed_lts_hybrid(std::get<Lts>(s.sys));
    case 4:
      return s.sys;
    default:
      return bl(std::get<Aa>(translate_to(s, "aa")));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Refinement, translation, and algebra for modal specifications"};
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand(
      "check", "Decide a refinement between two systems");
  check->add_option("mode", check_args.mode, "mr | mtr | thorough")
      ->required()
      ->check(CLI::IsMember({"mr", "mtr", "thorough"}));
  check->add_option("lhs", check_args.lhs, "refining system (FILE or FILE#NAME)")
      ->required();
  check->add_option("rhs", check_args.rhs, "refined system (FILE or FILE#NAME)")
      ->required();
  check->add_option("--tr", check_args.tr,
                    "transition relation for mtr (NAME or FILE#NAME)");
  check->add_option("--tr2", check_args.tr2,
                    "override relation for the right side of mtr");
  check->add_option("--memory", check_args.memory,
                    "state-duplication bound for thorough (default 1)");
  check->add_option("--limit", check_args.limit,
                    "max implementations to enumerate (default 100000)");

  std::string in_ref, out_path, to_kind, tr_name;
  int tr_bounded = -1;
  CLI::App* translate =
      app.add_subcommand("translate", "Convert a system to another kind");
  translate->add_option("input", in_ref, "FILE or FILE#NAME")->required();
  translate->add_option("--to", to_kind, "dmts | aa | nu | hybrid")
      ->required()
      ->check(CLI::IsMember({"dmts", "aa", "nu", "hybrid"}));
  translate->add_option("-o,--output", out_path, "write result here");

  CLI::App* normalize_cmd = app.add_subcommand(
      "normalize", "Convert an hml system to an equation system in normal form");
  normalize_cmd->add_option("input", in_ref, "FILE or FILE#NAME")->required();
  normalize_cmd->add_option("-o,--output", out_path, "write result here");

  CLI::App* maycomplete = app.add_subcommand(
      "maycomplete", "Close the may-transitions of a dmts under a relation");
  maycomplete->add_option("input", in_ref, "FILE or FILE#NAME")->required();
  CLI::Option* opt_tr = maycomplete->add_option(
      "--tr", tr_name, "transition relation (NAME or FILE#NAME)");
  CLI::Option* opt_trb = maycomplete->add_option(
      "--tr-bounded", tr_bounded,
      "derive the relation from the bounded refutation oracle with this "
      "memory");
  opt_tr->excludes(opt_trb);
  maycomplete->add_option("-o,--output", out_path, "write result here");

  std::string lhs_ref, rhs_ref;
  auto binary = [&](const char* name, const char* help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("lhs", lhs_ref, "FILE or FILE#NAME")->required();
    c->add_option("rhs", rhs_ref, "FILE or FILE#NAME")->required();
    c->add_option("-o,--output", out_path, "write result here");
    return c;
  };
  CLI::App* compose =
      binary("compose", "Parallel composition (full synchronization)");
  CLI::App* quotient =
      binary("quotient", "Most permissive system whose composition with rhs "
                         "refines lhs");
  CLI::App* conj = binary("and", "Conjunction (greatest lower bound)");
  CLI::App* disj = binary("or", "Disjunction (least upper bound)");

  CLI::App* models_cmd =
      app.add_subcommand("models", "Does an lts satisfy a specification?");
  models_cmd->add_option("impl", lhs_ref, "lts (FILE or FILE#NAME)")
      ->required();
  models_cmd->add_option("spec", rhs_ref, "nu or hml system")->required();

  CLI::App* export_cmd = app.add_subcommand("export", "Render a system");
  bool want_dot = false;
  export_cmd->add_flag("--dot", want_dot, "emit a Graphviz digraph")
      ->required();
  export_cmd->add_option("input", in_ref, "FILE or FILE#NAME")->required();
  export_cmd->add_option("-o,--output", out_path, "write result here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(check)) return run_check(check_args);

    if (app.got_subcommand(translate)) {
      NamedSystem s = load_system(in_ref);
      emit(serialize(translate_to(s, to_kind), s.name), out_path);
      return 0;
    }

    if (app.got_subcommand(normalize_cmd)) {
      NamedSystem s = load_system(in_ref);
      if (s.sys.index() != 5)
        throw MspecError("normalize expects an hml system, got " +
                         std::string(kind_of(s.sys)));
      emit(serialize(normalize(std::get<HmlDecl>(s.sys)), s.name), out_path);
      return 0;
    }

    if (app.got_subcommand(maycomplete)) {
      NamedSystem s = load_system(in_ref);
      if (s.sys.index() != 1)
        throw MspecError("maycomplete expects a dmts system, got " +
                         std::string(kind_of(s.sys)));
      const Dmts& d = std::get<Dmts>(s.sys);
      TrRelation tr;
      if (!tr_name.empty())
        tr = tr_reflexive_closure(load_trrel(tr_name, split_ref(in_ref).path),
                                  d.states);
      else if (tr_bounded >= 0)
        tr = bounded_tr(d, OracleBudget{tr_bounded, 100000});
      else
        throw MspecError("maycomplete needs --tr or --tr-bounded");
      emit(serialize(may_completion(d, tr), s.name), out_path);
      return 0;
    }

    if (app.got_subcommand(compose)) {
      NamedSystem a = load_system(lhs_ref), b = load_system(rhs_ref);
      if (a.sys.index() == 0 && b.sys.index() == 0)
        emit(serialize(lts_compose(std::get<Lts>(a.sys), std::get<Lts>(b.sys)),
                       "compose"),
             out_path);
      else
        emit(serialize(nu_compose(to_nu(a), to_nu(b)), "compose"), out_path);
      return 0;
    }
    if (app.got_subcommand(quotient)) {
      NamedSystem a = load_system(lhs_ref), b = load_system(rhs_ref);
      emit(serialize(nu_quotient(to_nu(a), to_nu(b)), "quotient"), out_path);
      return 0;
    }
    if (app.got_subcommand(conj)) {
      NamedSystem a = load_system(lhs_ref), b = load_system(rhs_ref);
      emit(serialize(nu_and(to_nu(a), to_nu(b)), "and"), out_path);
      return 0;
    }
    if (app.got_subcommand(disj)) {
      NamedSystem a = load_system(lhs_ref), b = load_system(rhs_ref);
      emit(serialize(nu_or(to_nu(a), to_nu(b)), "or"), out_path);
      return 0;
    }

    if (app.got_subcommand(models_cmd)) {
      NamedSystem impl = load_system(lhs_ref);
      NamedSystem spec = load_system(rhs_ref);
      if (impl.sys.index() != 0)
        throw MspecError("models expects an lts implementation, got " +
                         std::string(kind_of(impl.sys)));
      const Lts& l = std::get<Lts>(impl.sys);
      bool yes;
      if (spec.sys.index() == 3)
        yes = models(l, std::get<NuExprNF>(spec.sys));
      else if (spec.sys.index() == 5)
        yes = models(l, std::get<HmlDecl>(spec.sys));
      else
        throw MspecError("models expects a nu or hml specification, got " +
                         std::string(kind_of(spec.sys)));
      std::cout << (yes ? "models: yes\n" : "models: no\n");
      return yes ? 0 : 1;
    }

    if (app.got_subcommand(export_cmd)) {
      NamedSystem s = load_system(in_ref);
      emit(to_dot(s.sys, s.name), out_path);
      return 0;
    }
  } catch (const MspecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable: a subcommand is required
}
