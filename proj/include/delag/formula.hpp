#pragma once

// LTL formulas in negation normal form.
//
// A Formula is a handle to an interned, immutable node, so structural
// equality is pointer equality.  The smart constructors keep every formula
// canonical: And/Or children are flattened, duplicate-free and sorted under a
// fixed total order, constants are propagated, and F/G are stored as their
// Until/Release encodings (F p = true U p, G p = false R p).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace delag {

enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  NotAtom,
  And,
  Or,
  Next,
  Until,
  Release,
};

// Fragments recognized by the translator, most specific first.  A purely
// propositional formula counts as Cosafety.
enum class Fragment {
  Cosafety,        // no Release anywhere (LTL over U, X)
  Safety,          // no Until anywhere (LTL over R, X)
  FairnessGF,      // G F p with p free of U and R
  FairnessFG,      // F G p with p free of U and R
  FairnessBoolean, // and/or combination of FairnessGF/FairnessFG formulas
  Unsupported,
};

class Formula;
struct FormulaNode;

struct FormulaNode {
  Op op;
  std::string name;                 // Atom / NotAtom only
  std::vector<const FormulaNode*> kids;
  std::size_t hash = 0;
  bool has_until = false;           // any Until in the subtree
  bool has_release = false;         // any Release in the subtree
};

class Formula {
public:
  Formula(); // the constant true

  static Formula tt();
  static Formula ff();
  static Formula atom(const std::string& name);
  static Formula natom(const std::string& name); // negated atom
  static Formula conj(std::vector<Formula> kids);
  static Formula disj(std::vector<Formula> kids);
  static Formula next(Formula f);
  static Formula until(Formula lhs, Formula rhs);
  static Formula release(Formula lhs, Formula rhs);
  static Formula eventually(Formula f); // true U f
  static Formula always(Formula f);     // false R f

  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  std::size_t arity() const { return node_->kids.size(); }
  Formula kid(std::size_t i) const { return Formula(node_->kids[i]); }
  std::vector<Formula> kids() const;
  Formula left() const { return kid(0); }  // Until / Release
  Formula right() const { return kid(1); } // Until / Release

  bool is_true() const { return node_->op == Op::True; }
  bool is_false() const { return node_->op == Op::False; }
  bool is_constant() const { return is_true() || is_false(); }
  bool is_literal() const {
    return node_->op == Op::Atom || node_->op == Op::NotAtom;
  }
  bool is_temporal() const {
    return node_->op == Op::Next || node_->op == Op::Until ||
           node_->op == Op::Release;
  }
  bool is_boolean_node() const {
    return node_->op == Op::And || node_->op == Op::Or;
  }

  // Fragment membership helpers (cached structural facts).
  bool has_until() const { return node_->has_until; }
  bool has_release() const { return node_->has_release; }
  bool in_ltl_x() const { return !has_until() && !has_release(); }
  bool in_ltl_ux() const { return !has_release(); }
  bool in_ltl_rx() const { return !has_until(); }

  // Shape recognizers for the fairness fragment; return the operand p of
  // G F p / F G p when the formula has that shape.
  std::optional<Formula> gf_core() const;
  std::optional<Formula> fg_core() const;

  bool operator==(const Formula& o) const { return node_ == o.node_; }
  bool operator!=(const Formula& o) const { return node_ != o.node_; }
  bool operator<(const Formula& o) const { return compare(*this, o) < 0; }

  // Total structural order: node-kind rank, then recursive comparison of
  // children, with atoms ordered by name.
  static int compare(const Formula& a, const Formula& b);

  std::size_t hash() const { return node_->hash; }
  const FormulaNode* raw() const { return node_; }

private:
  explicit Formula(const FormulaNode* node) : node_(node) {}
  const FormulaNode* node_;
  friend struct FormulaInterner;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};
struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const { return a < b; }
};

// ---------------------------------------------------------------------------
// Parsing and printing.

class parse_error : public std::runtime_error {
public:
  parse_error(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

// Grammar: atoms  [a-zA-Z_][a-zA-Z0-9_]*  (U, R, X, F, G reserved);
// constants true/false/tt/ff/1/0; unary ! X F G; binary U R (right
// associative), & (also &&), | (also ||), -> and <-> (expanded during the
// NNF conversion).  Precedence, tightest first: unary, U/R, &, |, -> / <->.
Formula parse(const std::string& text);

// Prints with minimal parentheses; parse(to_string(f)) == f.
std::string to_string(const Formula& f);

// ---------------------------------------------------------------------------
// Structural queries.

// Atom names occurring anywhere in the formula, sorted and unique.
std::vector<std::string> atoms(const Formula& f);

// Maximal temporal subformulas not nested inside another temporal operator,
// sorted canonically and unique.
std::vector<Formula> sff(const Formula& f);

// Leaves of the propositional skeleton in first-occurrence depth-first
// order: maximal temporal subformulas plus the literals appearing outside
// any temporal operator.  Constants are dropped.
std::vector<Formula> skeleton_leaves(const Formula& f);

// Children sets of every conjunction / disjunction node occurring in the
// propositional skeleton (outside all temporal operators).  Inner vectors
// are canonically sorted; the outer list is sorted and duplicate-free.
std::vector<std::vector<Formula>> conjunct_sets(const Formula& f);
std::vector<std::vector<Formula>> disjunct_sets(const Formula& f);

// Replaces every occurrence of a member of `targets` (as a subtree) by
// `replacement` and re-canonicalizes.
Formula substitute(const Formula& f, const std::vector<Formula>& targets,
                   const Formula& replacement);

// The skeleton of a formula viewed as a propositional function: temporal
// subformulas act as opaque propositions, literals read (and possibly
// negate) their atom.  `support` lists the bases the function depends on;
// `table` holds its truth table over the support bases in index order, bit
// i of word i/64 giving the value under assignment i (bit j of i assigns
// support[j]).
struct PropFunction {
  std::vector<Formula> support; // temporal subformulas and positive atoms
  std::vector<std::uint64_t> table;

  bool operator==(const PropFunction& o) const {
    return support == o.support && table == o.table;
  }
};
PropFunction prop_function(const Formula& f);

// Skeleton leaves whose value can change the skeleton's truth value.  For a
// literal leaf the returned set contains the leaf exactly as it occurs.
std::vector<Formula> support(const Formula& f);

// Propositional equivalence of the skeletons (temporal subformulas opaque).
bool prop_equiv(const Formula& a, const Formula& b);

Fragment classify(const Formula& f);
const char* fragment_name(Fragment fr);

} // namespace delag
