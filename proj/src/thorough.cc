#include "mspec/thorough.hh"

#include <algorithm>
#include <map>
#include <vector>

#include "mspec/transform.hh"

namespace mspec {

namespace {

constexpr std::size_t kMaxChoiceBits = 18;

using Copy = std::pair<StateId, int>;

struct Enumerator {
  const Dmts& d;
  const int memory;
  const std::function<bool(const Lts&)>& fn;

  // Per source state: the valid realized-step choices of one copy, each a
  // sorted list of (action, target copy).
  std::map<StateId, std::vector<std::vector<std::pair<Action, Copy>>>> choices;
  std::map<Copy, std::size_t> assigned;  // copy -> index into choices
  std::set<Copy> reached;
  std::set<Copy> frontier;  // reached but not yet assigned
  bool complete = true;

  Enumerator(const Dmts& dd, int m, const std::function<bool(const Lts&)>& f)
      : d(dd), memory(m), fn(f) {
    if (memory < 1)
      throw MspecError("concretizations: memory must be at least 1");
    std::map<StateId, std::vector<std::pair<Action, StateId>>> may;
    for (const auto& [s, a, t] : d.may) may[s].push_back({a, t});
    std::map<StateId, std::vector<AdmissibleSet>> must;
    for (const auto& [s, n] : d.must) must[s].push_back(n);
    for (const auto& s : d.states) {
      const auto& edges = may[s];
      if (edges.size() * static_cast<std::size_t>(memory) > kMaxChoiceBits)
        throw MspecError(
            "concretizations: out-degree times memory exceeds 18 at state " +
            quote_name(s));
      // Materialize the entry even when no mask survives the obligations:
      // a state with an unsatisfiable obligation set admits no realized
      // copy, and the walk below must backtrack through it, not crash.
      choices[s];
      std::vector<std::pair<Action, Copy>> options;
      for (const auto& [a, t] : edges) {
        for (int j = 1; j <= memory; ++j) options.push_back({a, {t, j}});
      }
      std::sort(options.begin(), options.end());
      const std::size_t limit = std::size_t{1} << options.size();
      for (std::size_t mask = 0; mask < limit; ++mask) {
        std::vector<std::pair<Action, Copy>> pick;
        for (std::size_t i = 0; i < options.size(); ++i) {
          if ((mask >> i) & 1) pick.push_back(options[i]);
        }
        bool ok = true;
        for (const auto& n : must[s]) {
          bool hit = false;
          for (const auto& [a, t] : pick) {
            if (n.count({a, t.first})) {
              hit = true;
              break;
            }
          }
          if (!hit) {
            ok = false;
            break;
          }
        }
        if (ok) choices[s].push_back(std::move(pick));
      }
    }
  }

  std::string copy_name(const Copy& c) const {
    return memory == 1 ? c.first
                       : c.first + "#" + std::to_string(c.second);
  }

  bool emit() {
    Lts l;
    l.alphabet = d.alphabet;
    for (const auto& c : reached) l.states.insert(copy_name(c));
    for (const auto& s : d.initials) {
      for (int j = 1; j <= memory; ++j) l.initials.insert(copy_name({s, j}));
    }
    for (const auto& [c, idx] : assigned) {
      for (const auto& [a, t] : choices.at(c.first)[idx])
        l.trans.insert({copy_name(c), a, copy_name(t)});
    }
    return fn(l);
  }

  // Assigns a choice to the smallest unassigned reachable copy; emits when
  // no such copy is left. Returns false to abort the whole walk.
  bool walk() {
    if (frontier.empty()) return emit();
    Copy c = *frontier.begin();
    frontier.erase(frontier.begin());
    const auto& cs = choices.at(c.first);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      assigned[c] = i;
      std::vector<Copy> newly;
      for (const auto& [a, t] : cs[i]) {
        if (reached.insert(t).second) {
          newly.push_back(t);
          frontier.insert(t);
        }
      }
      bool keep_going = walk();
      for (const auto& t : newly) {
        reached.erase(t);
        frontier.erase(t);
      }
      assigned.erase(c);
      if (!keep_going) {
        complete = false;
        return false;
      }
    }
    frontier.insert(c);
    return true;
  }

  bool run() {
    for (const auto& s : d.initials) {
      for (int j = 1; j <= memory; ++j) {
        Copy c{s, j};
        reached.insert(c);
        frontier.insert(c);
      }
    }
    walk();
    return complete;
  }
};

void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (a != b) throw MspecError("check_thorough: alphabets differ");
}

}  // namespace

bool for_each_concretization(const Dmts& d, int memory,
                             const std::function<bool(const Lts&)>& fn) {
  Enumerator e(d, memory, fn);
  return e.run();
}

std::vector<Lts> concretizations(const Dmts& d, int memory) {
  std::vector<Lts> out;
  for_each_concretization(d, memory, [&](const Lts& l) {
    out.push_back(l);
    return true;
  });
  return out;
}

ThoroughVerdict check_thorough(const Dmts& lhs, const Dmts& rhs,
                               const OracleBudget& b) {
  require_same_alphabet(lhs.alphabet, rhs.alphabet);
  ThoroughVerdict v;
  v.exhausted = true;
  int levels_done = 0;
  for (int mm = 1; mm <= b.memory && !v.refuted && v.exhausted; ++mm) {
    bool complete = for_each_concretization(lhs, mm, [&](const Lts& i) {
      ++v.impls_checked;
      if (b.max_impls > 0 && v.impls_checked > b.max_impls) return false;
      if (!mr(embed_lts_dmts(i), rhs).holds) {
        if (!mr(embed_lts_dmts(i), lhs).holds)
          throw MspecError(
              "internal: enumerated implementation does not refine its "
              "source");
        v.refuted = true;
        v.witness = i;
        return false;
      }
      return true;
    });
    if (complete) ++levels_done;
    if (!complete && !v.refuted) v.exhausted = false;
  }
  if (v.refuted) {
    v.exhausted = false;
    v.note = "refuted: found an implementation of the left side (" +
             std::to_string(v.witness.states.size()) +
             " states) that does not refine the right side";
  } else if (v.exhausted) {
    v.note = "no refutation: all implementations up to memory " +
             std::to_string(levels_done) + " checked (" +
             std::to_string(v.impls_checked) + " total)";
  } else {
    v.note = "no refutation found within the implementation cap (" +
             std::to_string(v.impls_checked) + " checked; inconclusive)";
  }
  return v;
}

ThoroughVerdict check_thorough(const Aa& lhs, const Aa& rhs,
                               const OracleBudget& b) {
  require_same_alphabet(lhs.alphabet, rhs.alphabet);
  return check_thorough(bd(lhs), bd(rhs), b);
}

ThoroughVerdict check_thorough(const NuExprNF& lhs, const NuExprNF& rhs,
                               const OracleBudget& b) {
  require_same_alphabet(lhs.alphabet, rhs.alphabet);
  return check_thorough(hd(lhs), hd(rhs), b);
}

ThoroughVerdict check_thorough(const HybridExpr& lhs, const HybridExpr& rhs,
                               const OracleBudget& b) {
  require_same_alphabet(lhs.alphabet, rhs.alphabet);
  return check_thorough(bd(lb(lhs)), bd(lb(rhs)), b);
}

TrRelation bounded_tr(const Dmts& d, const OracleBudget& b) {
  TrRelation tr;
  tr.oracle_bounded = true;
  tr.budget_memory = b.memory;
  for (const auto& s : d.states) {
    for (const auto& t : d.states) {
      Dmts from = d, to = d;
      from.initials = {s};
      to.initials = {t};
      bool include = mr(from, to).holds;
      if (!include && b.memory > 0)
        include = !check_thorough(from, to, b).refuted;
      if (include) tr.pairs.insert({s, t});
    }
  }
  return tr;
}

}  // namespace mspec
