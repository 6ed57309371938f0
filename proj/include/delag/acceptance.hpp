#pragma once

// Emerson-Lei acceptance conditions: positive boolean formulas over
// Fin(i) / Inf(i) atoms.  A run satisfies Inf(i) when mark i occurs on
// infinitely many of its transitions, and Fin(i) when it occurs on finitely
// many.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace delag {

using MarkSet = std::uint64_t; // bit i <=> mark i
constexpr int kMaxMarks = 64;

struct Acceptance {
  enum class Kind : std::uint8_t { True, False, Fin, Inf, And, Or };

  Kind kind = Kind::True;
  int mark = -1; // Fin / Inf
  std::vector<Acceptance> kids;

  static Acceptance tt();
  static Acceptance ff();
  static Acceptance fin(int mark);
  static Acceptance inf(int mark);
  // Constant-folding n-ary connectives; nested same-kind nodes are
  // flattened but children are kept in the order given (the structure
  // mirrors the source formula, so no sorting).
  static Acceptance conj(std::vector<Acceptance> kids);
  static Acceptance disj(std::vector<Acceptance> kids);

  // Value of the condition when `inf_marks` is the set of marks occurring
  // infinitely often.
  bool evaluate(MarkSet inf_marks) const;

  // Swaps Fin/Inf, And/Or, true/false; the dual accepts exactly the runs
  // the original rejects.
  Acceptance dual() const;

  // Number of Fin/Inf leaf occurrences.
  int leaf_count() const;

  MarkSet marks_used() const;

  // Rewrites every mark i to map[i] (map[i] must be >= 0 for used marks).
  Acceptance renumber(const std::vector<int>& map) const;

  // HOA text, e.g. "Fin(0) & Inf(1) | Fin(2)".
  std::string to_text() const;

  // Recognizes the standard named classes ("Buchi", "co-Buchi",
  // "generalized-Buchi n", "generalized-co-Buchi n", "Rabin n", "Streett n",
  // "all", "none") given the automaton's mark count.
  std::optional<std::string> named_class(int mark_count) const;

  bool operator==(const Acceptance& o) const;
};

} // namespace delag
