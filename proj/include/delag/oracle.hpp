#pragma once

#include <optional>

#include "delag/formula.hpp"
#include "delag/tela.hpp"

namespace delag {

// Exact truth of the ultimately periodic word stem·loop^ω against f.
// Atoms of f that are missing from w.ap are treated as never holding.
// Throws tela_error when the loop is empty.
bool ltl_sat_lasso(const Formula& f, const Lasso& w);

// Bounded language comparison between a formula and an automaton.  The word
// alphabet is the union of the formula's atoms and the automaton's AP list.
// With at most `max_atoms_exhaustive` letters in that union, every lasso with
// |stem| <= stem_max and 1 <= |loop| <= loop_max is enumerated; larger
// alphabets fall back to `samples` pseudo-random lassos drawn with a fixed
// seed.  Returns the first disagreeing lasso, or nullopt.
struct LassoBounds {
  int stem_max = 2;
  int loop_max = 3;
  std::size_t max_atoms_exhaustive = 3;
  std::size_t samples = 10000;
  std::uint32_t seed = 0x5eed5eed;
};

std::optional<Lasso> equiv_on_lassos(const Formula& f, const Tela& a,
                                     const LassoBounds& bounds = {});

// Same comparison between two automata (AP union drives the alphabet).
std::optional<Lasso> telas_equiv_on_lassos(const Tela& a, const Tela& b,
                                           const LassoBounds& bounds = {});

} // namespace delag
