#include "delag/formula.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace delag {

// ---------------------------------------------------------------------------
// Interner.  Nodes live for the whole process; identity doubles as equality.

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct NodeKey {
  Op op;
  const std::string* name;
  const std::vector<const FormulaNode*>* kids;
};

std::size_t key_hash(Op op, const std::string& name,
                     const std::vector<const FormulaNode*>& kids) {
  std::size_t h = static_cast<std::size_t>(op) * 0x9e3779b97f4a7c15ULL + 1;
  h = hash_combine(h, std::hash<std::string>()(name));
  for (const FormulaNode* k : kids)
    h = hash_combine(h, k->hash);
  return h;
}

} // namespace

struct FormulaInterner {
  struct Hash {
    std::size_t operator()(const FormulaNode* n) const { return n->hash; }
  };
  struct Eq {
    bool operator()(const FormulaNode* a, const FormulaNode* b) const {
      return a->op == b->op && a->name == b->name && a->kids == b->kids;
    }
  };

  std::mutex mu;
  std::unordered_set<const FormulaNode*, Hash, Eq> table;

  static FormulaInterner& instance() {
    static FormulaInterner* self = new FormulaInterner();
    return *self;
  }

  Formula intern(Op op, std::string name,
                 std::vector<const FormulaNode*> kids) {
    auto probe = std::make_unique<FormulaNode>();
    probe->op = op;
    probe->name = std::move(name);
    probe->kids = std::move(kids);
    probe->hash = key_hash(probe->op, probe->name, probe->kids);
    probe->has_until = op == Op::Until;
    probe->has_release = op == Op::Release;
    for (const FormulaNode* k : probe->kids) {
      probe->has_until |= k->has_until;
      probe->has_release |= k->has_release;
    }
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(probe.get());
    if (it != table.end())
      return Formula(*it);
    const FormulaNode* node = probe.release();
    table.insert(node);
    return Formula(node);
  }
};

namespace {

Formula intern(Op op, std::string name = {},
               std::vector<const FormulaNode*> kids = {}) {
  return FormulaInterner::instance().intern(op, std::move(name),
                                            std::move(kids));
}

std::vector<const FormulaNode*> raw_kids(const std::vector<Formula>& kids) {
  std::vector<const FormulaNode*> out;
  out.reserve(kids.size());
  for (const Formula& f : kids)
    out.push_back(f.raw());
  return out;
}

int op_rank(Op op) { return static_cast<int>(op); }

} // namespace

Formula::Formula() : node_(tt().node_) {}

Formula Formula::tt() {
  static const Formula f = intern(Op::True);
  return f;
}

Formula Formula::ff() {
  static const Formula f = intern(Op::False);
  return f;
}

Formula Formula::atom(const std::string& name) {
  return intern(Op::Atom, name);
}

Formula Formula::natom(const std::string& name) {
  return intern(Op::NotAtom, name);
}

int Formula::compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_)
    return 0;
  int ra = op_rank(a.op()), rb = op_rank(b.op());
  if (ra != rb)
    return ra < rb ? -1 : 1;
  if (a.op() == Op::Atom || a.op() == Op::NotAtom)
    return a.name().compare(b.name());
  std::size_t n = std::min(a.arity(), b.arity());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a.kid(i), b.kid(i));
    if (c != 0)
      return c;
  }
  if (a.arity() != b.arity())
    return a.arity() < b.arity() ? -1 : 1;
  return 0;
}

std::vector<Formula> Formula::kids() const {
  std::vector<Formula> out;
  out.reserve(node_->kids.size());
  for (const FormulaNode* k : node_->kids)
    out.push_back(Formula(k));
  return out;
}

namespace {

// Shared machinery of the n-ary constructors: flatten same-kind children,
// drop the neutral constant, absorb the dominating one, deduplicate, sort.
Formula build_nary(Op op, std::vector<Formula> kids) {
  const Formula neutral = op == Op::And ? Formula::tt() : Formula::ff();
  const Formula absorbing = op == Op::And ? Formula::ff() : Formula::tt();
  std::vector<Formula> flat;
  flat.reserve(kids.size());
  for (std::size_t i = 0; i < kids.size(); ++i) {
    Formula k = kids[i];
    if (k.op() == op) {
      for (const Formula& kk : k.kids())
        kids.push_back(kk);
      continue;
    }
    if (k == absorbing)
      return absorbing;
    if (k == neutral)
      continue;
    flat.push_back(k);
  }
  std::sort(flat.begin(), flat.end(), FormulaLess());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty())
    return neutral;
  if (flat.size() == 1)
    return flat[0];
  return intern(op, {}, raw_kids(flat));
}

} // namespace

Formula Formula::conj(std::vector<Formula> kids) {
  return build_nary(Op::And, std::move(kids));
}

Formula Formula::disj(std::vector<Formula> kids) {
  return build_nary(Op::Or, std::move(kids));
}

Formula Formula::next(Formula f) {
  if (f.is_constant())
    return f;
  return intern(Op::Next, {}, raw_kids({f}));
}

Formula Formula::until(Formula lhs, Formula rhs) {
  if (rhs.is_constant())
    return rhs; // p U true = true, p U false = false
  if (lhs.is_false())
    return rhs;
  if (lhs == rhs)
    return rhs;
  return intern(Op::Until, {}, raw_kids({lhs, rhs}));
}

Formula Formula::release(Formula lhs, Formula rhs) {
  if (rhs.is_constant())
    return rhs; // p R true = true, p R false = false
  if (lhs.is_true())
    return rhs;
  if (lhs == rhs)
    return rhs;
  return intern(Op::Release, {}, raw_kids({lhs, rhs}));
}

Formula Formula::eventually(Formula f) { return until(tt(), f); }

Formula Formula::always(Formula f) { return release(ff(), f); }

std::optional<Formula> Formula::gf_core() const {
  // G F p  =  false R (true U p)
  if (op() == Op::Release && left().is_false() &&
      right().op() == Op::Until && right().left().is_true())
    return right().right();
  return std::nullopt;
}

std::optional<Formula> Formula::fg_core() const {
  // F G p  =  true U (false R p)
  if (op() == Op::Until && left().is_true() &&
      right().op() == Op::Release && right().left().is_false())
    return right().right();
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parser.

parse_error::parse_error(int line, int column, const std::string& what)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + what),
      line_(line), column_(column) {}

namespace {

enum class Tok {
  End,
  Ident,
  True,
  False,
  LParen,
  RParen,
  Not,
  And,
  Or,
  Implies,
  Equiv,
  NextOp,
  FinallyOp,
  GloballyOp,
  UntilOp,
  ReleaseOp,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(tok_.line, tok_.column, msg);
  }

private:
  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      step();
    tok_.line = line_;
    tok_.column = column_;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      tok_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (c == '(') return single(Tok::LParen);
    if (c == ')') return single(Tok::RParen);
    if (c == '!') return single(Tok::Not);
    if (c == '1') return single(Tok::True);
    if (c == '0') return single(Tok::False);
    if (c == '&') {
      step();
      if (pos_ < text_.size() && text_[pos_] == '&')
        step();
      tok_.kind = Tok::And;
      return;
    }
    if (c == '|') {
      step();
      if (pos_ < text_.size() && text_[pos_] == '|')
        step();
      tok_.kind = Tok::Or;
      return;
    }
    if (c == '-') {
      step();
      if (pos_ < text_.size() && text_[pos_] == '>') {
        step();
        tok_.kind = Tok::Implies;
        return;
      }
      throw parse_error(tok_.line, tok_.column, "unknown token '-'");
    }
    if (c == '<') {
      step();
      if (pos_ + 1 < text_.size() && text_[pos_] == '-' &&
          text_[pos_ + 1] == '>') {
        step();
        step();
        tok_.kind = Tok::Equiv;
        return;
      }
      throw parse_error(tok_.line, tok_.column, "unknown token '<'");
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ident.push_back(text_[pos_]);
        step();
      }
      if (ident == "true" || ident == "tt")
        tok_.kind = Tok::True;
      else if (ident == "false" || ident == "ff")
        tok_.kind = Tok::False;
      else if (ident == "X")
        tok_.kind = Tok::NextOp;
      else if (ident == "F")
        tok_.kind = Tok::FinallyOp;
      else if (ident == "G")
        tok_.kind = Tok::GloballyOp;
      else if (ident == "U")
        tok_.kind = Tok::UntilOp;
      else if (ident == "R")
        tok_.kind = Tok::ReleaseOp;
      else {
        tok_.kind = Tok::Ident;
        tok_.text = std::move(ident);
      }
      return;
    }
    throw parse_error(tok_.line, tok_.column,
                      std::string("unknown token '") + c + "'");
  }

  void single(Tok kind) {
    step();
    tok_.kind = kind;
  }

  void step() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token tok_;
};

// Parses into negation normal form directly; `pos` tracks the polarity under
// the negations seen so far.  <-> re-parses neither side: both NNF variants
// of each operand are built once per operator via the pair-returning helper.
class Parser {
public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Formula run() {
    Formula f = equiv(true);
    if (lex_.peek().kind != Tok::End)
      lex_.fail("unexpected trailing input");
    return f;
  }

private:
  // equiv := impl ( '<->' impl )*   (left associative)
  Formula equiv(bool pos) {
    auto [p, n] = equiv_both();
    return pos ? p : n;
  }

  std::pair<Formula, Formula> equiv_both() {
    auto acc = impl_both();
    while (lex_.peek().kind == Tok::Equiv) {
      lex_.take();
      auto rhs = impl_both();
      // a <-> b  =  (a & b) | (!a & !b);  negation swaps one operand.
      Formula p = Formula::disj({Formula::conj({acc.first, rhs.first}),
                                 Formula::conj({acc.second, rhs.second})});
      Formula n = Formula::disj({Formula::conj({acc.first, rhs.second}),
                                 Formula::conj({acc.second, rhs.first})});
      acc = {p, n};
    }
    return acc;
  }

  // impl := or ( '->' impl )?   (right associative)
  std::pair<Formula, Formula> impl_both() {
    auto lhs = or_both();
    if (lex_.peek().kind != Tok::Implies)
      return lhs;
    lex_.take();
    auto rhs = impl_both();
    return {Formula::disj({lhs.second, rhs.first}),
            Formula::conj({lhs.first, rhs.second})};
  }

  std::pair<Formula, Formula> or_both() {
    std::vector<Formula> pos_kids, neg_kids;
    auto first = and_both();
    pos_kids.push_back(first.first);
    neg_kids.push_back(first.second);
    while (lex_.peek().kind == Tok::Or) {
      lex_.take();
      auto k = and_both();
      pos_kids.push_back(k.first);
      neg_kids.push_back(k.second);
    }
    if (pos_kids.size() == 1)
      return first;
    return {Formula::disj(pos_kids), Formula::conj(neg_kids)};
  }

  std::pair<Formula, Formula> and_both() {
    std::vector<Formula> pos_kids, neg_kids;
    auto first = until_both();
    pos_kids.push_back(first.first);
    neg_kids.push_back(first.second);
    while (lex_.peek().kind == Tok::And) {
      lex_.take();
      auto k = until_both();
      pos_kids.push_back(k.first);
      neg_kids.push_back(k.second);
    }
    if (pos_kids.size() == 1)
      return first;
    return {Formula::conj(pos_kids), Formula::disj(neg_kids)};
  }

  // until := unary ( ('U'|'R') until )?   (right associative)
  std::pair<Formula, Formula> until_both() {
    auto lhs = unary_both();
    Tok k = lex_.peek().kind;
    if (k != Tok::UntilOp && k != Tok::ReleaseOp)
      return lhs;
    lex_.take();
    auto rhs = until_both();
    if (k == Tok::UntilOp)
      return {Formula::until(lhs.first, rhs.first),
              Formula::release(lhs.second, rhs.second)};
    return {Formula::release(lhs.first, rhs.first),
            Formula::until(lhs.second, rhs.second)};
  }

  std::pair<Formula, Formula> unary_both() {
    Tok k = lex_.peek().kind;
    switch (k) {
    case Tok::Not: {
      lex_.take();
      auto inner = unary_both();
      return {inner.second, inner.first};
    }
    case Tok::NextOp: {
      lex_.take();
      auto inner = unary_both();
      return {Formula::next(inner.first), Formula::next(inner.second)};
    }
    case Tok::FinallyOp: {
      lex_.take();
      auto inner = unary_both();
      return {Formula::eventually(inner.first), Formula::always(inner.second)};
    }
    case Tok::GloballyOp: {
      lex_.take();
      auto inner = unary_both();
      return {Formula::always(inner.first), Formula::eventually(inner.second)};
    }
    default:
      return primary_both();
    }
  }

  std::pair<Formula, Formula> primary_both() {
    Token t = lex_.peek();
    switch (t.kind) {
    case Tok::True:
      lex_.take();
      return {Formula::tt(), Formula::ff()};
    case Tok::False:
      lex_.take();
      return {Formula::ff(), Formula::tt()};
    case Tok::Ident:
      lex_.take();
      return {Formula::atom(t.text), Formula::natom(t.text)};
    case Tok::LParen: {
      lex_.take();
      auto inner = equiv_both();
      if (lex_.peek().kind != Tok::RParen)
        lex_.fail("expected ')'");
      lex_.take();
      return inner;
    }
    default:
      lex_.fail("expected a formula");
    }
  }

  Lexer lex_;
};

} // namespace

Formula parse(const std::string& text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Printer.  Precedence levels, loosest first: |, &, U/R, unary/atomic.

namespace {

enum Prec { kPrecOr = 1, kPrecAnd = 2, kPrecUntil = 3, kPrecUnary = 4 };

void print_rec(std::ostringstream& out, const Formula& f, int min_prec);

void print_wrapped(std::ostringstream& out, int prec, int min_prec,
                   const char* text_before, const Formula& single_kid) {
  bool paren = prec < min_prec;
  if (paren)
    out << '(';
  out << text_before;
  print_rec(out, single_kid, kPrecUnary);
  if (paren)
    out << ')';
}

void print_rec(std::ostringstream& out, const Formula& f, int min_prec) {
  switch (f.op()) {
  case Op::True:
    out << "true";
    return;
  case Op::False:
    out << "false";
    return;
  case Op::Atom:
    out << f.name();
    return;
  case Op::NotAtom:
    out << '!' << f.name();
    return;
  case Op::Next:
    print_wrapped(out, kPrecUnary, min_prec, "X ", f.kid(0));
    return;
  case Op::And:
  case Op::Or: {
    int prec = f.op() == Op::And ? kPrecAnd : kPrecOr;
    bool paren = prec < min_prec;
    if (paren)
      out << '(';
    const char* sep = f.op() == Op::And ? " & " : " | ";
    for (std::size_t i = 0; i < f.arity(); ++i) {
      if (i)
        out << sep;
      print_rec(out, f.kid(i), prec + 1);
    }
    if (paren)
      out << ')';
    return;
  }
  case Op::Until:
  case Op::Release: {
    // Re-sugar F/G for readability; both print at unary precedence.
    bool is_f = f.op() == Op::Until && f.left().is_true();
    bool is_g = f.op() == Op::Release && f.left().is_false();
    if (is_f || is_g) {
      print_wrapped(out, kPrecUnary, min_prec, is_f ? "F " : "G ", f.right());
      return;
    }
    bool paren = kPrecUntil < min_prec;
    if (paren)
      out << '(';
    print_rec(out, f.left(), kPrecUntil + 1);
    out << (f.op() == Op::Until ? " U " : " R ");
    print_rec(out, f.right(), kPrecUntil);
    if (paren)
      out << ')';
    return;
  }
  }
}

} // namespace

std::string to_string(const Formula& f) {
  std::ostringstream out;
  print_rec(out, f, 0);
  return out.str();
}

// ---------------------------------------------------------------------------
// Structural queries.

namespace {

void collect_atoms(const Formula& f, std::vector<std::string>& out) {
  if (f.is_literal()) {
    out.push_back(f.name());
    return;
  }
  for (std::size_t i = 0; i < f.arity(); ++i)
    collect_atoms(f.kid(i), out);
}

void collect_leaves(const Formula& f, bool include_literals,
                    std::vector<Formula>& out) {
  if (f.is_temporal() || (include_literals && f.is_literal())) {
    out.push_back(f);
    return;
  }
  if (f.is_boolean_node())
    for (std::size_t i = 0; i < f.arity(); ++i)
      collect_leaves(f.kid(i), include_literals, out);
}

} // namespace

std::vector<std::string> atoms(const Formula& f) {
  std::vector<std::string> out;
  collect_atoms(f, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Formula> sff(const Formula& f) {
  std::vector<Formula> out;
  collect_leaves(f, false, out);
  std::sort(out.begin(), out.end(), FormulaLess());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Formula> skeleton_leaves(const Formula& f) {
  std::vector<Formula> out;
  collect_leaves(f, true, out);
  // First-occurrence order: keep the earliest copy of each leaf.
  std::vector<Formula> dedup;
  for (const Formula& leaf : out)
    if (std::find(dedup.begin(), dedup.end(), leaf) == dedup.end())
      dedup.push_back(leaf);
  return dedup;
}

namespace {

void collect_juncts(const Formula& f, Op which,
                    std::vector<std::vector<Formula>>& out) {
  if (!f.is_boolean_node())
    return;
  if (f.op() == which)
    out.push_back(f.kids());
  for (std::size_t i = 0; i < f.arity(); ++i)
    collect_juncts(f.kid(i), which, out);
}

std::vector<std::vector<Formula>> junct_sets(const Formula& f, Op which) {
  std::vector<std::vector<Formula>> out;
  collect_juncts(f, which, out);
  std::sort(out.begin(), out.end(),
            [](const std::vector<Formula>& a, const std::vector<Formula>& b) {
              return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                                  b.end(), FormulaLess());
            });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace

std::vector<std::vector<Formula>> conjunct_sets(const Formula& f) {
  return junct_sets(f, Op::And);
}

std::vector<std::vector<Formula>> disjunct_sets(const Formula& f) {
  return junct_sets(f, Op::Or);
}

namespace {

Formula substitute_rec(
    const Formula& f, const std::vector<Formula>& targets,
    const Formula& replacement,
    std::unordered_map<Formula, Formula, FormulaHash>& memo) {
  if (std::find(targets.begin(), targets.end(), f) != targets.end())
    return replacement;
  if (f.arity() == 0)
    return f;
  auto it = memo.find(f);
  if (it != memo.end())
    return it->second;
  std::vector<Formula> kids;
  kids.reserve(f.arity());
  bool changed = false;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    kids.push_back(substitute_rec(f.kid(i), targets, replacement, memo));
    changed |= kids.back() != f.kid(i);
  }
  Formula out = f;
  if (changed) {
    switch (f.op()) {
    case Op::And:
      out = Formula::conj(std::move(kids));
      break;
    case Op::Or:
      out = Formula::disj(std::move(kids));
      break;
    case Op::Next:
      out = Formula::next(kids[0]);
      break;
    case Op::Until:
      out = Formula::until(kids[0], kids[1]);
      break;
    case Op::Release:
      out = Formula::release(kids[0], kids[1]);
      break;
    default:
      break;
    }
  }
  memo.emplace(f, out);
  return out;
}

} // namespace

Formula substitute(const Formula& f, const std::vector<Formula>& targets,
                   const Formula& replacement) {
  std::unordered_map<Formula, Formula, FormulaHash> memo;
  return substitute_rec(f, targets, replacement, memo);
}

// ---------------------------------------------------------------------------
// Propositional view of the skeleton.

namespace {

// Base of a skeleton leaf: temporal subformulas stand for themselves,
// literals for their (positive) atom.
Formula leaf_base(const Formula& leaf) {
  return leaf.op() == Op::NotAtom ? Formula::atom(leaf.name()) : leaf;
}

bool eval_skeleton(const Formula& f, const std::vector<Formula>& bases,
                   std::uint32_t assignment) {
  switch (f.op()) {
  case Op::True:
    return true;
  case Op::False:
    return false;
  case Op::And:
    for (std::size_t i = 0; i < f.arity(); ++i)
      if (!eval_skeleton(f.kid(i), bases, assignment))
        return false;
    return true;
  case Op::Or:
    for (std::size_t i = 0; i < f.arity(); ++i)
      if (eval_skeleton(f.kid(i), bases, assignment))
        return true;
    return false;
  default: {
    Formula base = leaf_base(f);
    auto it = std::lower_bound(bases.begin(), bases.end(), base,
                               FormulaLess());
    std::size_t idx = static_cast<std::size_t>(it - bases.begin());
    bool v = (assignment >> idx) & 1;
    return f.op() == Op::NotAtom ? !v : v;
  }
  }
}

constexpr std::size_t kMaxPropBases = 20;

std::vector<Formula> skeleton_bases(const Formula& f) {
  std::vector<Formula> bases;
  for (const Formula& leaf : skeleton_leaves(f))
    bases.push_back(leaf_base(leaf));
  std::sort(bases.begin(), bases.end(), FormulaLess());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  if (bases.size() > kMaxPropBases)
    throw std::runtime_error(
        "propositional skeleton has too many distinct leaves (" +
        std::to_string(bases.size()) + " > " + std::to_string(kMaxPropBases) +
        ")");
  return bases;
}

} // namespace

PropFunction prop_function(const Formula& f) {
  std::vector<Formula> bases = skeleton_bases(f);
  std::size_t n = bases.size();
  std::vector<bool> value(std::size_t(1) << n);
  for (std::uint32_t a = 0; a < (1u << n); ++a)
    value[a] = eval_skeleton(f, bases, a);

  // A base is in the support when flipping it changes the value somewhere.
  std::vector<std::size_t> dep;
  for (std::size_t j = 0; j < n; ++j) {
    bool depends = false;
    for (std::uint32_t a = 0; a < (1u << n) && !depends; ++a)
      if (value[a] != value[a ^ (1u << j)])
        depends = true;
    if (depends)
      dep.push_back(j);
  }

  PropFunction out;
  for (std::size_t j : dep)
    out.support.push_back(bases[j]);
  std::size_t rows = std::size_t(1) << dep.size();
  out.table.assign((rows + 63) / 64, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    std::uint32_t a = 0;
    for (std::size_t j = 0; j < dep.size(); ++j)
      if ((r >> j) & 1)
        a |= 1u << dep[j];
    if (value[a])
      out.table[r / 64] |= std::uint64_t(1) << (r % 64);
  }
  return out;
}

std::vector<Formula> support(const Formula& f) {
  PropFunction pf = prop_function(f);
  std::vector<Formula> supported_bases = pf.support;
  std::vector<Formula> out;
  for (const Formula& leaf : skeleton_leaves(f)) {
    Formula base = leaf_base(leaf);
    if (std::binary_search(supported_bases.begin(), supported_bases.end(),
                           base, FormulaLess()))
      out.push_back(leaf);
  }
  std::sort(out.begin(), out.end(), FormulaLess());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool prop_equiv(const Formula& a, const Formula& b) {
  return prop_function(a) == prop_function(b);
}

// ---------------------------------------------------------------------------
// Fragments.

Fragment classify(const Formula& f) {
  if (f.in_ltl_ux())
    return Fragment::Cosafety;
  if (f.in_ltl_rx())
    return Fragment::Safety;
  if (auto core = f.gf_core(); core && core->in_ltl_x())
    return Fragment::FairnessGF;
  if (auto core = f.fg_core(); core && core->in_ltl_x())
    return Fragment::FairnessFG;
  if (f.is_boolean_node()) {
    bool all_fair = true;
    for (const Formula& leaf : skeleton_leaves(f)) {
      Fragment fr = classify(leaf);
      if (fr != Fragment::FairnessGF && fr != Fragment::FairnessFG)
        all_fair = false;
    }
    // A boolean skeleton over fairness leaves only (literal leaves excluded
    // by the check above, since a literal classifies as Cosafety).
    if (all_fair)
      return Fragment::FairnessBoolean;
  }
  return Fragment::Unsupported;
}

const char* fragment_name(Fragment fr) {
  switch (fr) {
  case Fragment::Cosafety:
    return "cosafety";
  case Fragment::Safety:
    return "safety";
  case Fragment::FairnessGF:
    return "fairness-GF";
  case Fragment::FairnessFG:
    return "fairness-FG";
  case Fragment::FairnessBoolean:
    return "fairness-boolean";
  case Fragment::Unsupported:
    return "unsupported";
  }
  return "unknown";
}

} // namespace delag
