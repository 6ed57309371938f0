#include "delag/safety.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "delag/rewrite.hpp"

namespace delag {

Formula af_step(const Formula& f, Letter nu, const std::vector<std::string>& ap) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Atom:
    case Op::NotAtom: {
      auto it = std::find(ap.begin(), ap.end(), f.name());
      bool holds = it != ap.end() && ((nu >> (it - ap.begin())) & 1) != 0;
      return (f.op() == Op::Atom) == holds ? Formula::tt() : Formula::ff();
    }
    case Op::And:
    case Op::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.arity());
      for (std::size_t i = 0; i < f.arity(); ++i) {
        kids.push_back(af_step(f.kid(i), nu, ap));
      }
      return f.op() == Op::And ? Formula::conj(std::move(kids))
                               : Formula::disj(std::move(kids));
    }
    case Op::Next:
      return f.kid(0);
    case Op::Until:
      return Formula::disj(
          {af_step(f.right(), nu, ap),
           Formula::conj({af_step(f.left(), nu, ap), f})});
    case Op::Release:
      return Formula::conj(
          {af_step(f.right(), nu, ap),
           Formula::disj({af_step(f.left(), nu, ap), f})});
  }
  throw tela_error("unreachable formula operator");
}

namespace {

// States are propositional-equivalence classes of derivative formulas; the
// class key is the skeleton's truth function.
struct ClassKey {
  std::vector<Formula> support;
  std::vector<std::uint64_t> table;

  bool operator<(const ClassKey& o) const {
    if (support.size() != o.support.size()) {
      return support.size() < o.support.size();
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
      int c = Formula::compare(support[i], o.support[i]);
      if (c != 0) return c < 0;
    }
    return table < o.table;
  }
};

enum class ClassKind { Plain, AccTrap, RejTrap };

ClassKind classify_key(const ClassKey& key) {
  std::size_t assignments = std::size_t{1} << key.support.size();
  bool all_true = true;
  bool all_false = true;
  for (std::size_t i = 0; i < assignments; ++i) {
    bool bit = ((key.table[i / 64] >> (i % 64)) & 1) != 0;
    all_true &= bit;
    all_false &= !bit;
  }
  if (all_true) return ClassKind::AccTrap;
  if (all_false) return ClassKind::RejTrap;
  return ClassKind::Plain;
}

SafetyAutomaton build_derivative_automaton(const Formula& f,
                                           const std::vector<std::string>& ap,
                                           std::size_t state_bound,
                                           bool cosafety) {
  if (cosafety ? !f.in_ltl_ux() : !f.in_ltl_rx()) {
    throw tela_error(std::string(cosafety ? "cosafety" : "safety") +
                     " construction outside its fragment: " + to_string(f));
  }
  if (ap.size() > kMaxTelaAps) {
    throw bound_error("too many atomic propositions for explicit alphabet");
  }
  const std::size_t letters = std::size_t{1} << ap.size();

  SafetyAutomaton out;
  out.tela.ap = ap;
  out.tela.initial = 0;
  out.tela.mark_count = 1;
  out.tela.acceptance = cosafety ? Acceptance::inf(0) : Acceptance::fin(0);

  std::map<ClassKey, int> index;
  std::vector<ClassKind> kinds;
  auto intern = [&](const Formula& state) {
    PropFunction pf = prop_function(state);
    ClassKey key{std::move(pf.support), std::move(pf.table)};
    auto [it, inserted] = index.emplace(std::move(key), out.state_formulas.size());
    if (inserted) {
      if (out.state_formulas.size() >= state_bound) {
        throw bound_error("state bound exceeded while translating " +
                          to_string(f));
      }
      out.state_formulas.push_back(state);
      out.tela.edges.emplace_back(letters);
      ClassKind kind = classify_key(it->first);
      kinds.push_back(kind);
      if (kind == ClassKind::AccTrap) out.acc_trap = it->second;
      if (kind == ClassKind::RejTrap) out.rej_trap = it->second;
    }
    return it->second;
  };

  intern(simplify(f));
  for (std::size_t s = 0; s < out.state_formulas.size(); ++s) {
    if (kinds[s] != ClassKind::Plain) {
      // Traps are permanent by construction; the marked trap is the
      // accepting one for cosafety and the rejecting one for safety.
      bool marked = (kinds[s] == ClassKind::AccTrap) == cosafety;
      Edge loop{static_cast<int>(s), marked ? MarkSet{1} : MarkSet{0}};
      std::fill(out.tela.edges[s].begin(), out.tela.edges[s].end(), loop);
      continue;
    }
    Formula state = out.state_formulas[s];
    for (Letter nu = 0; nu < letters; ++nu) {
      Edge e;
      e.target = intern(simplify(af_step(state, nu, ap)));
      out.tela.edges[s][nu] = e;
    }
  }
  return out;
}

}  // namespace

SafetyAutomaton build_cosafety(const Formula& f,
                               const std::vector<std::string>& ap,
                               std::size_t state_bound) {
  return build_derivative_automaton(f, ap, state_bound, true);
}

SafetyAutomaton build_safety(const Formula& f, const std::vector<std::string>& ap,
                             std::size_t state_bound) {
  return build_derivative_automaton(f, ap, state_bound, false);
}

Tela translate_cosafety(const Formula& f, const std::vector<std::string>& ap,
                        std::size_t state_bound) {
  return build_cosafety(f, ap, state_bound).tela;
}

Tela translate_safety(const Formula& f, const std::vector<std::string>& ap,
                      std::size_t state_bound) {
  return build_safety(f, ap, state_bound).tela;
}

}  // namespace delag
