#pragma once

#include <stdexcept>
#include <string>

#include "delag/formula.hpp"
#include "delag/tela.hpp"

namespace delag {

// External translator invocation failed: process error, timeout, or output
// that could not be ingested as a deterministic automaton.
class fallback_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct FallbackOptions {
  // Shell command with %f standing for the formula.  The formula is passed
  // in this tool's own concrete syntax.
  std::string command_template;
  // When false (default) the formula is single-quoted for the shell; when
  // true it is substituted verbatim.
  bool raw_substitution = false;
  int timeout_seconds = 60;
};

// Runs the external tool and ingests its HOA v1 output: determinism is
// required, partial automata are completed with a rejecting sink, marks are
// preserved.
Tela translate_external(const Formula& f, const FallbackOptions& opts);

}  // namespace delag
