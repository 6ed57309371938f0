#pragma once

// HOA v1 input/output for deterministic, complete, transition-based
// automata.
//
// Serialization is canonical: states are renumbered breadth-first from the
// initial state (visiting letters in ascending bitvector order), edges are
// emitted one per letter, and every run over the same automaton yields the
// same bytes.
//
// The parser accepts explicit labels (boolean formulas over AP indices),
// implicit labels (2^|AP| edges in letter order), and either transition or
// state mark placement (state marks are pushed onto all outgoing edges).
// It rejects nondeterministic automata outright; incomplete automata are
// rejected too unless `allow_incomplete` is set, in which case the missing
// edges are routed to a rejecting sink.

#include "delag/tela.hpp"

#include <stdexcept>
#include <string>

namespace delag {

class hoa_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string serialize_hoa(const Tela& a);

struct HoaParseOptions {
  bool allow_incomplete = false;
};

Tela parse_hoa(const std::string& text, const HoaParseOptions& opts = {});

// Routes every hole (edge with target -1) to a sink state, making sure runs
// that reach the sink are rejected: a mark set falsifying the acceptance
// condition is put on the sink's self-loops, extending the condition with a
// fresh Fin mark when no falsifying set exists.  Used for external tools
// that omit letters they consider unreachable.
Tela complete_with_rejecting_sink(Tela a);

} // namespace delag
