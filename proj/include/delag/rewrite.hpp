#pragma once

#include "delag/formula.hpp"

namespace delag {

// Syntactic language-inclusion preorder: entails(a, b) implies L(a) ⊆ L(b).
// Sound but deliberately incomplete; used to delete dominated disjuncts and
// redundant conjuncts.
bool entails(const Formula& a, const Formula& b);

// Conjunctive / disjunctive normal form of the propositional skeleton;
// temporal subformulas and literals are kept opaque.
Formula to_cnf(const Formula& f);
Formula to_dnf(const Formula& f);

// Language-preserving cleanup: constructor-level constant folding and
// idempotence, subsumption pruning of And/Or members via entails, plus the
// two until-elimination rules GF(φUψ) → GFψ and
// FG(φUψ) → GFψ ∧ FG(φ∨ψ).
Formula simplify(const Formula& f);

// The fairness normal-form rules applied innermost-first to fixpoint:
// FG/GF over F, G, X collapse; FG over ∧ and GF over ∨ split; F/G-topped
// members of FG(∨)/GF(∧) are extracted; X is pushed below F/G/∧/∨ inside
// fairness cores; CNF/DNF restructuring is the last resort for cores
// outside LTL(X).  Boolean combinations of FGψ/GFψ with ψ ∈ LTL(X) are
// fixpoints, as are formulas with no fairness redex at all.
Formula fairness_normal_form(const Formula& f);

// simplify and fairness_normal_form alternated to fixpoint; the form the
// translator classifies.
Formula rewrite(Formula f);

} // namespace delag
