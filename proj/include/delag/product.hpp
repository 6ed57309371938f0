#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "delag/formula.hpp"
#include "delag/tela.hpp"

namespace delag {

// A subformula fell outside every built-in construction and no external
// translator was configured.
class unsupported_error : public std::runtime_error {
public:
  unsupported_error(const std::string& msg, Formula subformula)
      : std::runtime_error(msg), subformula_(subformula) {}
  const Formula& subformula() const { return subformula_; }

private:
  Formula subformula_;
};

struct TranslateOptions {
  // Product construction: the enhanced product holds fairness components in
  // a waiting state until running them can matter, replaces the traps of
  // (co)safety components by resolved sentinels, and silences components
  // the formula's value no longer depends on.  The standard product simply
  // runs every component automaton in lockstep.
  bool enhanced = true;
  // Enhanced mode only: fairness components share one history buffer,
  // masked down to what the currently running components can still read.
  bool global_history = true;
  // Fold eligible (co)safety components into a sibling fairness component's
  // mark, shrinking the acceptance condition.
  bool piggyback = false;
  std::size_t state_bound = 100000;
  // External translator for subformulas outside the built-in fragments;
  // empty means none (such subformulas raise unsupported_error).
  std::string fallback_command;
  bool fallback_raw_substitution = false;
  int fallback_timeout_seconds = 60;
};

// Per-component entries of a product state, alongside plain automaton state
// indices (>= 0).
inline constexpr int kCompHold = -1; // fairness component waiting
inline constexpr int kCompAcc = -2;  // resolved: rest of the word accepted
inline constexpr int kCompRej = -3;  // resolved: rejected, or silenced
inline constexpr int kCompLive = -4; // fairness running on the shared buffer

struct TranslateDetails {
  Formula rewritten;                 // formula after rewriting
  std::vector<Formula> components;   // skeleton leaves, depth-first order
  std::vector<Fragment> fragments;   // per component
  std::vector<int> mark_base;        // first mark owned by each component
  // Per product state (indexed like the result's states): the component
  // entries and the shared history buffer (empty when unused).
  std::vector<std::vector<int>> state_comp;
  std::vector<std::vector<Letter>> state_buffer;
};

// Full pipeline: rewrite, split into components, translate each fragment,
// compose.  Throws parse-agnostic errors: unsupported_error, bound_error,
// fallback_error, tela_error.
Tela translate(const Formula& f, const TranslateOptions& opts = {},
               TranslateDetails* details = nullptr);

}  // namespace delag
