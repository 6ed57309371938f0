#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "delag/formula.hpp"
#include "delag/tela.hpp"

namespace delag {

// Thrown when a construction would exceed its configured state bound.
class bound_error : public tela_error {
public:
  using tela_error::tela_error;
};

// One derivative step: the formula that must hold from the next position
// for f to hold now, given that the current letter is nu (a bitmask over
// ap).  Defined for formulas in negation normal form; the result is not
// simplified.
Formula af_step(const Formula& f, Letter nu, const std::vector<std::string>& ap);

// Deterministic automaton built from derivative steps, with states grouped
// by propositional equivalence of their formulas.
struct SafetyAutomaton {
  Tela tela;
  std::vector<Formula> state_formulas; // representative per state
  int acc_trap = -1; // state whose language is everything, -1 if absent
  int rej_trap = -1; // state whose language is empty, -1 if absent
};

// f without R operators: single mark 0 on the accepting trap's self-loops,
// acceptance Inf(0).
SafetyAutomaton build_cosafety(const Formula& f,
                               const std::vector<std::string>& ap,
                               std::size_t state_bound = 100000);

// f without U operators: single mark 0 on the rejecting trap's self-loops,
// acceptance Fin(0).
SafetyAutomaton build_safety(const Formula& f,
                             const std::vector<std::string>& ap,
                             std::size_t state_bound = 100000);

Tela translate_cosafety(const Formula& f, const std::vector<std::string>& ap,
                        std::size_t state_bound = 100000);
Tela translate_safety(const Formula& f, const std::vector<std::string>& ap,
                      std::size_t state_bound = 100000);

}  // namespace delag
