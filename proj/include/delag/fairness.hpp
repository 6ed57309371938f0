#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "delag/formula.hpp"
#include "delag/tela.hpp"

namespace delag {

// A finite word over 2^AP used as a history mask or buffer content.  Entry 0
// is the oldest position; each entry is a bitmask over an atom list.
using Mask = std::vector<Letter>;

// Pointwise operations used by the history-buffer construction.  Join aligns
// the two words at the front (position 0 with position 0) and pads the
// shorter word with empty sets; meet intersects pointwise, treating missing
// mask positions as empty.
Mask mask_join(const Mask& a, const Mask& b);
std::vector<Letter> word_meet(std::vector<Letter> w, const Mask& m);

// Downward closure: position i of the result is the union of positions
// 0..i of the input.  Drop removes the last position (drop of the empty
// word is the empty word).
Mask mask_closure(Mask m);
Mask mask_drop(Mask m);

// The relevant-history word H(f) of a formula without U/R operators: the
// atoms it can observe at each future offset, oldest offset first.  Throws
// tela_error if f contains U or R or mentions an atom not in ap.
Mask relevant_history(const Formula& f, const std::vector<std::string>& ap);

// Evaluate f (no U/R) on the word w followed by infinitely many empty
// letters; position i of w is read i steps from now.
bool sat_on_padded(const Formula& f, const std::vector<Letter>& w,
                   const std::vector<std::string>& ap);

// Per-component data needed to run a fairness component off a history
// buffer: the window length n = max(|H(core)| - 1, 0) and the mask
// drop(closure(H(core))) the buffer is filtered through.
struct FairnessWindow {
  Formula core;
  std::size_t window = 0;
  Mask window_mask;  // length == window
};
FairnessWindow fairness_window(const Formula& core,
                               const std::vector<std::string>& ap);

// History-buffer automata for G F core / F G core where core has no U/R.
// States are buffer words; the single mark 0 sits on transitions where the
// buffer extended by the current letter satisfies core (for G F, acceptance
// Inf(0)) or on those where it does not (for F G, acceptance Fin(0)).
Tela translate_gf(const Formula& core, const std::vector<std::string>& ap);
Tela translate_fg(const Formula& core, const std::vector<std::string>& ap);

}  // namespace delag
