#pragma once

// Deterministic transition-based Emerson-Lei automata over 2^AP, stored
// explicitly: state s has exactly one edge per letter, letters being
// bitvectors over the automaton's atomic-proposition list (bit i set iff
// ap[i] holds).

#include "delag/acceptance.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace delag {

using Letter = std::uint32_t;

// Explicit per-letter storage keeps every algorithm trivially deterministic
// but costs 2^|AP| columns per state, hence the cap.
constexpr std::size_t kMaxTelaAps = 20;

class tela_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  int target = 0;
  MarkSet marks = 0;

  bool operator==(const Edge& o) const {
    return target == o.target && marks == o.marks;
  }
};

struct Tela {
  std::vector<std::string> ap;
  int initial = 0;
  std::vector<std::vector<Edge>> edges; // edges[state][letter]
  Acceptance acceptance;
  int mark_count = 0;

  std::size_t state_count() const { return edges.size(); }
  std::size_t letter_count() const { return std::size_t(1) << ap.size(); }

  // Checks the structural invariants (shape, edge targets, mark bounds).
  void validate() const;
};

// An ultimately periodic word stem . loop^w over its own AP list.
struct Lasso {
  std::vector<std::string> ap;
  std::vector<Letter> stem;
  std::vector<Letter> loop; // non-empty
};

std::string to_string(const Lasso& w);

// Letters of `w` are restricted/extended to `A.ap` by name before running.
bool accepts_lasso(const Tela& a, const Lasso& w);

// Same automaton with dualized acceptance: accepts the complement language.
Tela complement(Tela a);

int acceptance_size(const Tela& a); // Fin/Inf leaf occurrences

// Maps letters of a lasso's AP list onto an automaton's (missing
// propositions read as absent).  Exposed for the oracle sweeps.
std::vector<int> ap_projection(const std::vector<std::string>& from,
                               const std::vector<std::string>& to);
Letter project_letter(Letter v, const std::vector<int>& projection);

} // namespace delag
