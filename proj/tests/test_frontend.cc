#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "mspec/parse.hh"
#include "mspec/serialize.hh"
#include "support/fixtures.hh"
#include "support/generators.hh"

using namespace mspec;

namespace {

// Parses a file expected to hold exactly one system and returns it.
System parse_one(const std::string& text) {
  SpecFile f = parse_spec(text);
  REQUIRE(f.systems.size() == 1);
  return f.systems[0].sys;
}

// Checks that `fn` throws an MspecError whose message contains every
// string in `subs`.
template <typename Fn>
void throws_containing(Fn&& fn, const std::vector<std::string>& subs) {
  try {
    fn();
    FAIL_CHECK("expected an exception");
  } catch (const MspecError& e) {
    const std::string msg = e.what();
    for (const std::string& s : subs) {
      INFO("message: " << msg);
      CHECK(msg.find(s) != std::string::npos);
    }
  }
}

bool feq(const FormulaPtr& a, const FormulaPtr& b) {
  return formula_cmp(a, b) == 0;
}

// Names exercising every quoting path: reserved words, spaces, escapes,
// the empty string, punctuation that would lex as operators, non-ASCII.
const std::vector<std::string>& weird_names() {
  static const std::vector<std::string> pool = {
      "tt",   "must",  "my state", "q\"x",  "a\\b",
      "",     "x-y",   "caf\xc3\xa9", "0start", "sys tem"};
  return pool;
}

// Renames states/actions of a generated system through the weird-name
// pool; names are opaque to the grammar, so validity is preserved.
template <typename Rng>
std::map<std::string, std::string> weird_map(const std::set<std::string>& from,
                                             Rng& rng) {
  std::map<std::string, std::string> m;
  std::vector<std::string> pool = weird_names();
  std::shuffle(pool.begin(), pool.end(), rng);
  std::size_t k = 0;
  for (const std::string& s : from) {
    if (k < pool.size() && std::uniform_int_distribution<int>(0, 1)(rng)) {
      std::string base = pool[k];
      ++k;
      m[s] = base + (k > 1 ? std::to_string(k) : "");
    } else
      m[s] = s;
  }
  return m;
}

Dmts rename_all(const Dmts& d, const std::map<std::string, std::string>& st,
                const std::map<std::string, std::string>& ac) {
  Dmts out;
  for (const auto& a : d.alphabet) out.alphabet.insert(ac.at(a));
  for (const auto& s : d.states) out.states.insert(st.at(s));
  for (const auto& s : d.initials) out.initials.insert(st.at(s));
  for (const auto& [s, a, t] : d.may)
    out.may.insert({st.at(s), ac.at(a), st.at(t)});
  for (const auto& [s, n] : d.must) {
    AdmissibleSet m;
    for (const auto& [a, t] : n) m.insert({ac.at(a), st.at(t)});
    out.must.insert({st.at(s), m});
  }
  return out;
}

Aa rename_all(const Aa& x, const std::map<std::string, std::string>& st,
              const std::map<std::string, std::string>& ac) {
  Aa out;
  for (const auto& a : x.alphabet) out.alphabet.insert(ac.at(a));
  for (const auto& s : x.states) out.states.insert(st.at(s));
  for (const auto& s : x.initials) out.initials.insert(st.at(s));
  for (const auto& [s, sets] : x.tran) {
    std::set<AdmissibleSet> ns;
    for (const AdmissibleSet& m : sets) {
      AdmissibleSet nm;
      for (const auto& [a, t] : m) nm.insert({ac.at(a), st.at(t)});
      ns.insert(nm);
    }
    out.tran[st.at(s)] = ns;
  }
  return out;
}

}  // namespace

TEST_CASE("parses every system kind into the expected structure") {
  SUBCASE("lts") {
    System s = parse_one(
        "system lts m {\n"
        "  alphabet a, b;\n"
        "  states p, q;\n"
        "  initial p;\n"
        "  trans p a q;\n"
        "  trans q b q;\n"
        "}\n");
    Lts want;
    want.alphabet = {"a", "b"};
    want.states = {"p", "q"};
    want.initials = {"p"};
    want.trans = {{"p", "a", "q"}, {"q", "b", "q"}};
    CHECK(std::get<Lts>(s) == want);
    CHECK(system_kind(s) == "lts");
  }
  SUBCASE("dmts") {
    System s = parse_one(
        "system dmts m { alphabet a; states p, q; initial p;\n"
        "  may p a q; may p a p; must p { a q, a p }; }");
    Dmts want;
    want.alphabet = {"a"};
    want.states = {"p", "q"};
    want.initials = {"p"};
    want.may = {{"p", "a", "q"}, {"p", "a", "p"}};
    want.must = {{"p", {{"a", "q"}, {"a", "p"}}}};
    CHECK(std::get<Dmts>(s) == want);
    CHECK(system_kind(s) == "dmts");
  }
  SUBCASE("aa with several admissible sets on one line") {
    System s = parse_one(
        "system aa m { alphabet a; states p, q; initial p;\n"
        "  tran p { a q } { a p, a q }; tran q { }; }");
    Aa want;
    want.alphabet = {"a"};
    want.states = {"p", "q"};
    want.initials = {"p"};
    want.tran["p"] = {{{"a", "q"}}, {{"a", "p"}, {"a", "q"}}};
    want.tran["q"] = {{}};
    CHECK(std::get<Aa>(s) == want);
    CHECK(system_kind(s) == "aa");
  }
  SUBCASE("nu") {
    System s = parse_one(
        "system nu m { alphabet a; states x, y; initial x;\n"
        "  diamond x { a y }; box x a { x, y }; }");
    NuExprNF want;
    want.alphabet = {"a"};
    want.vars = {"x", "y"};
    want.initials = {"x"};
    want.diamond["x"] = {{{"a", "y"}}};
    want.box[{"x", "a"}] = {"x", "y"};
    CHECK(std::get<NuExprNF>(s) == want);
    CHECK(system_kind(s) == "nu");
  }
  SUBCASE("hml") {
    System s = parse_one(
        "system hml m { alphabet a; states x; initial x;\n"
        "  def x = <a> x & [a] x; }");
    HmlDecl want;
    want.alphabet = {"a"};
    want.vars = {"x"};
    want.initials = {"x"};
    want.delta["x"] = f_and(f_dia("a", f_var("x")), f_box("a", f_var("x")));
    CHECK(std::get<HmlDecl>(s) == want);
    CHECK(system_kind(s) == "hml");
  }
  SUBCASE("hybrid") {
    System s = parse_one(
        "system hybrid m { alphabet a; states x, y; initial x;\n"
        "  def x = <a> y | !<a> x; def y = tt; }");
    HybridExpr want;
    want.alphabet = {"a"};
    want.vars = {"x", "y"};
    want.initials = {"x"};
    want.phi["x"] =
        f_or(f_dia("a", f_var("y")), f_not(f_dia("a", f_var("x"))));
    want.phi["y"] = f_true();
    CHECK(std::get<HybridExpr>(s) == want);
    CHECK(system_kind(s) == "hybrid");
  }
  SUBCASE("trrel") {
    SpecFile f = parse_spec("trrel r { tr s t; tr t t; }");
    REQUIRE(f.trrels.size() == 1);
    CHECK(f.trrels[0].name == "r");
    TrRelation want;
    want.pairs = {{"s", "t"}, {"t", "t"}};
    CHECK(f.trrels[0].rel == want);
    CHECK(f.find_trrel("r") != nullptr);
    CHECK(f.find_trrel("missing") == nullptr);
  }
}

TEST_CASE("empty bodies follow the absence conventions") {
  // `tran q;` leaves no entry at all (inconsistent state), while
  // `tran q { };` records the single empty admissible set.
  Aa no_entry = std::get<Aa>(parse_one(
      "system aa m { alphabet a; states p, q; initial p;\n"
      "  tran p { a q }; tran q; }"));
  CHECK(no_entry.tran.count("q") == 0);
  Aa empty_set = std::get<Aa>(parse_one(
      "system aa m { alphabet a; states p, q; initial p;\n"
      "  tran p { a q }; tran q { }; }"));
  REQUIRE(empty_set.tran.count("q") == 1);
  CHECK(empty_set.tran.at("q") == std::set<AdmissibleSet>{{}});

  // `box x a { };` means the action is forbidden: no map entry.
  NuExprNF n = std::get<NuExprNF>(parse_one(
      "system nu m { alphabet a; states x; initial x;\n"
      "  diamond x { }; box x a { }; }"));
  CHECK(n.box.empty());
  // `diamond x { };` is a real (vacuously satisfiable) clause.
  REQUIRE(n.diamond.count("x") == 1);
  CHECK(n.diamond.at("x") == std::set<AdmissibleSet>{{}});

  // A disjunctive obligation with zero options parses (it makes the
  // state unimplementable but is well-formed).
  Dmts d = std::get<Dmts>(parse_one(
      "system dmts m { alphabet a; states p; initial p; must p { }; }"));
  CHECK(d.must == std::set<std::pair<StateId, AdmissibleSet>>{{"p", {}}});

  // Common clauses may be empty or repeated; comments are skipped.
  Lts l = std::get<Lts>(parse_one(
      "# leading comment\n"
      "system lts m {\n"
      "  alphabet ;  # nothing yet\n"
      "  alphabet a;\n"
      "  states p; states q;\n"
      "  initial ;\n"
      "}\n"));
  CHECK(l.alphabet == Alphabet{"a"});
  CHECK(l.states == StateSet{"p", "q"});
  CHECK(l.initials.empty());
  CHECK(l.trans.empty());
}

TEST_CASE("quoted names handle escapes, reserved words, and spaces") {
  Lts l = std::get<Lts>(parse_one(
      "system lts \"sys tem\" {\n"
      "  alphabet \"must\";\n"
      "  states \"a b\", \"q\\\"x\", \"a\\\\b\", \"\";\n"
      "  initial \"\";\n"
      "  trans \"a b\" \"must\" \"q\\\"x\";\n"
      "}\n"));
  CHECK(l.states == StateSet{"a b", "q\"x", "a\\b", ""});
  CHECK(l.alphabet == Alphabet{"must"});
  CHECK(l.trans == std::set<Transition>{{"a b", "must", "q\"x"}});
  SpecFile f = parse_spec(serialize(System{l}, "sys tem"));
  REQUIRE(f.systems.size() == 1);
  CHECK(f.systems[0].name == "sys tem");
  CHECK(std::get<Lts>(f.systems[0].sys) == l);
}

TEST_CASE("formula grammar: precedence, sugar, and grouping") {
  auto p = f_var("p");
  auto q = f_var("q");
  auto r = f_var("r");
  CHECK(feq(parse_formula("p & q | r & p"),
            f_or(f_and(p, q), f_and(r, p))));
  CHECK(feq(parse_formula("p | q | r"), f_or(f_or(p, q), r)));
  CHECK(feq(parse_formula("p & q & r"), f_and(f_and(p, q), r)));
  CHECK(feq(parse_formula("p & (q & r)"), f_and(p, f_and(q, r))));
  CHECK(feq(parse_formula("!<a> p"), f_not(f_dia("a", p))));
  CHECK(feq(parse_formula("<a> p | q"), f_or(f_dia("a", p), q)));
  CHECK(feq(parse_formula("[a] p & q"), f_and(f_box("a", p), q)));
  CHECK(feq(parse_formula("[a] (p & q)"), f_box("a", f_and(p, q))));
  CHECK(feq(parse_formula("[a,b] p"), f_and(f_box("a", p), f_box("b", p))));
  CHECK(feq(parse_formula("[a,b,c] p"),
            f_and(f_and(f_box("a", p), f_box("b", p)), f_box("c", p))));
  CHECK(feq(parse_formula("tt & ff"), f_and(f_true(), f_false())));
  CHECK(feq(parse_formula("<\"must\"> \"tt\""),
            f_dia("must", f_var("tt"))));
  CHECK(feq(parse_formula("< a >< b > p"), f_dia("a", f_dia("b", p))));
  CHECK(feq(parse_formula("!!p"), f_not(f_not(p))));
}

TEST_CASE("parse_formula inverts formula_str on random formulas") {
  std::mt19937_64 rng(411);
  const Alphabet sigma = {"a", "b"};
  const std::vector<StateId> vars = {"x", "y"};
  for (int i = 0; i < 250; ++i) {
    FormulaPtr f = gen::random_hml_formula(rng, sigma, vars, 3);
    CAPTURE(formula_str(f));
    CHECK(feq(parse_formula(formula_str(f)), f));
  }
  for (int i = 0; i < 250; ++i) {
    FormulaPtr f = gen::random_hybrid_formula(rng, sigma, vars, 3);
    CAPTURE(formula_str(f));
    CHECK(feq(parse_formula(formula_str(f)), f));
  }
  // Weird variable and action names survive the round trip too.
  for (const std::string& w : weird_names()) {
    FormulaPtr f = f_and(f_dia(w, f_var(w)), f_box(w, f_not(f_var(w))));
    CHECK(feq(parse_formula(formula_str(f)), f));
  }
}

TEST_CASE("syntax errors carry positions and context") {
  throws_containing([] { parse_spec("system dmts must { }"); },
                    {"reserved word used as system name",
                     "quote it to use it as a name", "line 1"});
  throws_containing([] { parse_spec("system foo m { }"); },
                    {"expected a system kind (lts, dmts, aa, nu, hml, "
                     "hybrid)",
                     "(found 'foo')"});
  throws_containing([] { parse_spec("$"); },
                    {"unexpected character '$'", "at line 1, column 1"});
  throws_containing([] { parse_spec("system lts \"m { }"); },
                    {"unterminated quoted name"});
  throws_containing([] { parse_spec("system lts \"a\nb\" { }"); },
                    {"newline inside quoted name"});
  throws_containing([] { parse_spec("system lts \"a\\x\" { }"); },
                    {"invalid escape '\\x' in quoted name"});
  throws_containing(
      [] { parse_spec("system lts m { alphabet a }"); },
      {"expected ';'", "(found '}')"});
  throws_containing(
      [] { parse_spec("system lts m { may p a q; }"); },
      {"'may' is only valid in a dmts block"});
  throws_containing(
      [] { parse_spec("system nu m { tran p { }; }"); },
      {"'tran' is only valid in an aa block"});
  throws_containing(
      [] { parse_spec("system lts m { def x = tt; }"); },
      {"'def' is only valid in an hml or hybrid block"});
  throws_containing([] { parse_formula("p &"); },
                    {"expected a formula", "end of input"});
  throws_containing([] { parse_formula("p q"); },
                    {"trailing input after formula"});
  throws_containing(
      [] { parse_spec("system hml m { alphabet a; states x; initial x;\n"
                      "  def x = tt; def x = ff; }"); },
      {"duplicate definition of variable 'x'"});
  throws_containing([] { parse_spec("trrel r { tr s; }"); },
                    {"expected state"});
  throws_containing([] { parse_spec("banana"); },
                    {"expected 'system' or 'trrel'"});

  // Reported positions point at the offending token.
  try {
    parse_spec("system lts m {\n  alphabet a\n  states p;\n}");
    FAIL_CHECK("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);   // the unexpected 'states' keyword
    CHECK(e.col == 3);
    CHECK(std::string(e.what()).find("at line 3, column 3") !=
          std::string::npos);
  }
}

TEST_CASE("blocks that parse but fail validation name the block") {
  throws_containing(
      [] {
        parse_spec(
            "system dmts m { alphabet a; states p, q; initial p;\n"
            "  must p { a q }; }");
      },
      {"system 'm' is not well-formed:", "has no underlying may transition"});
  throws_containing(
      [] {
        parse_spec("system aa m { alphabet a; states p; initial p; }");
      },
      {"system 'm' is not well-formed:",
       "admits no transition set (inconsistent)"});
  throws_containing(
      [] {
        parse_spec(
            "system hml m { alphabet a; states x; initial x;\n"
            "  def x = !tt; }");
      },
      {"system 'm' is not well-formed:", "negation-free"});
  throws_containing(
      [] {
        parse_spec(
            "system lts m { alphabet a; states p; initial p; }\n"
            "system lts m { alphabet a; states p; initial p; }");
      },
      {"duplicate system name 'm'"});
  throws_containing(
      [] { parse_spec("trrel r { }\ntrrel r { }"); },
      {"duplicate relation name 'r'"});
  // Same name for a system and a relation is fine (separate namespaces).
  SpecFile f = parse_spec(
      "system lts n { alphabet a; states p; initial p; }\ntrrel n { }");
  CHECK(f.find_system("n") != nullptr);
  CHECK(f.find_trrel("n") != nullptr);
}

TEST_CASE("serialization is canonical and byte-stable") {
  CHECK(serialize(fixtures::tiny_must(), "m") ==
        "system dmts m {\n"
        "  alphabet a;\n"
        "  states p, q;\n"
        "  initial p;\n"
        "  may p a q;\n"
        "  must p { a q };\n"
        "}\n");
  Aa a;
  a.alphabet = {"a"};
  a.states = {"p", "q"};
  a.initials = {"p"};
  a.tran["p"] = {{{"a", "q"}}, {}};
  a.tran["q"] = {};  // empty entry: omitted, same meaning as absence
  CHECK(serialize(a, "m") ==
        "system aa m {\n"
        "  alphabet a;\n"
        "  states p, q;\n"
        "  initial p;\n"
        "  tran p { } { a q };\n"
        "}\n");
  NuExprNF n;
  n.alphabet = {"a"};
  n.vars = {"x"};
  n.initials = {"x"};
  n.diamond["x"] = {{}, {{"a", "x"}}};
  n.box[{"x", "a"}] = {"x"};
  CHECK(serialize(n, "weird name") ==
        "system nu \"weird name\" {\n"
        "  alphabet a;\n"
        "  states x;\n"
        "  initial x;\n"
        "  diamond x { };\n"
        "  diamond x { a x };\n"
        "  box x a { x };\n"
        "}\n");
  HmlDecl h;
  h.alphabet = {"a"};
  h.vars = {"x"};
  h.initials = {"x"};
  h.delta["x"] = f_or(f_and(f_var("x"), f_true()), f_box("a", f_false()));
  CHECK(serialize(h, "m") ==
        "system hml m {\n"
        "  alphabet a;\n"
        "  states x;\n"
        "  initial x;\n"
        "  def x = x & tt | [a] ff;\n"
        "}\n");
  TrRelation r;
  r.pairs = {{"s", "t"}, {"a b", "t"}};
  CHECK(serialize(r, "r") ==
        "trrel r {\n"
        "  tr \"a b\" t;\n"
        "  tr s t;\n"
        "}\n");
  // Files join their blocks with one blank line, systems before relations.
  SpecFile f;
  f.systems.push_back({"m", System{fixtures::tiny_must()}});
  f.trrels.push_back({"r", r});
  std::string text = serialize(f);
  CHECK(text == serialize(fixtures::tiny_must(), "m") + "\n" +
                    serialize(r, "r"));
}

TEST_CASE("parse inverts serialize on the fixture family") {
  SpecFile f;
  auto add = [&](const char* nm, System s) {
    f.systems.push_back({nm, std::move(s)});
  };
  add("tiny", System{fixtures::tiny_must()});
  add("loop", System{fixtures::single_may_loop()});
  add("comp", System{fixtures::completion_example()});
  add("comp_done", System{fixtures::completion_example_completed()});
  add("comp_abs", System{fixtures::completion_example_abstract()});
  add("comp_chain", System{fixtures::completion_example_chain()});
  add("rg_d", System{fixtures::request_grant_dmts()});
  add("rg_n", System{fixtures::request_grant_nu()});
  add("rg_f", System{fixtures::request_grant_formula()});
  add("rg_nf", System{fixtures::request_grant_nf_expected()});
  add("rg_good", System{fixtures::request_grant_good_impl()});
  add("rg_bad", System{fixtures::request_grant_bad_impl()});
  add("rg_gap", System{fixtures::request_grant_gap_witness()});
  add("cl", System{fixtures::compose_left()});
  add("cr", System{fixtures::compose_right()});
  add("ce", System{fixtures::compose_expected()});
  add("il", System{fixtures::compose_incomplete_left()});
  add("ir", System{fixtures::compose_incomplete_right()});
  add("iw", System{fixtures::compose_incomplete_witness()});
  add("even3", System{fixtures::even_choice_aa(3)});
  add("blowup", System{fixtures::blowup_hml()});
  f.trrels.push_back({"rel", fixtures::completion_example_tr()});

  SpecFile g = parse_spec(serialize(f));
  REQUIRE(g.systems.size() == f.systems.size());
  for (std::size_t i = 0; i < f.systems.size(); ++i) {
    CAPTURE(f.systems[i].name);
    CHECK(g.systems[i].name == f.systems[i].name);
    CHECK(g.systems[i].sys == f.systems[i].sys);
  }
  REQUIRE(g.trrels.size() == 1);
  CHECK(g.trrels[0].rel == f.trrels[0].rel);
  // Serializing the reparse reproduces the text exactly.
  CHECK(serialize(g) == serialize(f));
}

TEST_CASE("parse inverts serialize on random systems") {
  std::mt19937_64 rng(412);
  int done = 0;
  for (int i = 0; i < 500; ++i) {
    System s;
    switch (i % 5) {
      case 0: {
        Lts l = gen::random_lts(rng);
        s = l;
        break;
      }
      case 1:
        s = gen::random_dmts(rng);
        break;
      case 2:
        s = gen::random_aa(rng);
        break;
      case 3:
        s = gen::random_nu(rng);
        break;
      default:
        s = (i % 2) ? System{gen::random_hybrid(rng)}
                    : System{gen::random_hml(rng)};
        break;
    }
    std::string text = serialize(s, "m");
    CAPTURE(text);
    System back = parse_one(text);
    CHECK(back == s);
    CHECK(serialize(back, "m") == text);
    ++done;
  }
  CHECK(done == 500);
}

TEST_CASE("round trip survives hostile names") {
  std::mt19937_64 rng(413);
  for (int i = 0; i < 120; ++i) {
    System s;
    if (i % 2) {
      Dmts d = gen::random_dmts(rng);
      s = rename_all(d, weird_map(d.states, rng), weird_map(d.alphabet, rng));
    } else {
      Aa a = gen::random_aa(rng);
      s = rename_all(a, weird_map(a.states, rng), weird_map(a.alphabet, rng));
    }
    std::string text = serialize(s, "the system");
    CAPTURE(text);
    System back = parse_one(text);
    CHECK(back == s);
    CHECK(serialize(back, "the system") == text);
  }
}

TEST_CASE("dot export follows the drawing conventions") {
  std::string tiny = to_dot(System{fixtures::tiny_must()}, "m");
  CHECK(tiny.find("digraph \"m\" {") == 0);
  CHECK(tiny.find("\"p\" [shape=circle];") != std::string::npos);
  CHECK(tiny.find("\"q\" [shape=circle];") != std::string::npos);
  // The committed step is one solid labelled edge, no junction node.
  CHECK(tiny.find("\"p\" -> \"q\" [label=\"a\"];") != std::string::npos);
  CHECK(tiny.find("__must") == std::string::npos);
  CHECK(tiny.find("style=dashed") == std::string::npos);
  // Initial marker: an invisible node with an arrow into the state.
  CHECK(tiny.find("\"__init0\" [shape=none, label=\"\"];") !=
        std::string::npos);
  CHECK(tiny.find("\"__init0\" -> \"p\";") != std::string::npos);

  // A pure may-step renders dashed.
  std::string loop = to_dot(System{fixtures::single_may_loop()}, "l");
  CHECK(loop.find("\"s\" -> \"s\" [label=\"a\", style=dashed];") !=
        std::string::npos);

  // A disjunctive obligation fans out through a point node.
  std::string comp = to_dot(System{fixtures::compose_left()}, "c");
  CHECK(comp.find("[shape=point];") != std::string::npos);
  CHECK(comp.find("[dir=none];") != std::string::npos);

  // Quotes and backslashes in names are escaped in the output.
  Lts weird;
  weird.alphabet = {"a"};
  weird.states = {"q\"x"};
  weird.initials = {"q\"x"};
  std::string w = to_dot(weird, "n");
  CHECK(w.find("\"q\\\"x\" [shape=circle];") != std::string::npos);

  // Free-form equation systems cannot be drawn directly.
  throws_containing(
      [] { to_dot(System{fixtures::blowup_hml()}, "b"); },
      {"cannot draw an hml system directly; normalize it first"});
}
