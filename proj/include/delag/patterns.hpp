#pragma once

#include <vector>

#include "delag/formula.hpp"

namespace delag {

// Alternating fairness families over fresh atoms a0..an / b0..bn:
//   rabin_pattern(0)   = F G a0 & G F b0
//   rabin_pattern(n)   = (F G an & G F bn) | streett_pattern(n-1)
//   streett_pattern(0) = F G a0 | G F b0
//   streett_pattern(n) = (F G an | G F bn) & rabin_pattern(n-1)
Formula rabin_pattern(int n);
Formula streett_pattern(int n);

// History family over atoms a, b:
//   history_pattern(0) = F G (a | b)
//   history_pattern(n) = F G (a | X^n b) | history_pattern(n-1)   (n even)
//   history_pattern(n) = F G (!a | X^n b) | history_pattern(n-1)  (n odd)
Formula history_pattern(int n);

// Minimal sets of skeleton leaves that make the propositional skeleton
// true (the skeleton is monotone in its leaves).  Sorted deterministically.
std::vector<std::vector<Formula>> good_leaf_sets(const Formula& f);

}  // namespace delag
