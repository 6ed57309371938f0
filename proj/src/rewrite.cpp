#include "delag/rewrite.hpp"

#include <unordered_map>
#include <unordered_set>

namespace delag {

// ---------------------------------------------------------------------------
// Entailment.

bool entails(const Formula& a, const Formula& b) {
  if (a == b || a.is_false() || b.is_true())
    return true;

  // Decompositions.  Each recursive call strictly shrinks one side while
  // leaving the other unchanged, so the recursion terminates.
  if (b.op() == Op::Or)
    for (std::size_t i = 0; i < b.arity(); ++i)
      if (entails(a, b.kid(i)))
        return true;
  if (b.op() == Op::And) {
    bool all = true;
    for (std::size_t i = 0; all && i < b.arity(); ++i)
      all = entails(a, b.kid(i));
    if (all)
      return true;
  }
  if (a.op() == Op::And)
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (entails(a.kid(i), b))
        return true;
  if (a.op() == Op::Or) {
    bool all = true;
    for (std::size_t i = 0; all && i < a.arity(); ++i)
      all = entails(a.kid(i), b);
    if (all)
      return true;
  }

  // β1 U β2 is satisfied immediately when β2 holds now.
  if (b.op() == Op::Until && entails(a, b.right()))
    return true;
  // α1 R α2 forces α2 now.
  if (a.op() == Op::Release && entails(a.right(), b))
    return true;

  // Monotonicity.  The extra disjuncts allow collapsing nested F and G:
  // F α ⊑ F β already when α ⊑ F β, and dually G α ⊑ G β when G α ⊑ β.
  if (a.op() == Op::Next && b.op() == Op::Next)
    return entails(a.kid(0), b.kid(0));
  if (a.op() == Op::Until && b.op() == Op::Until)
    return entails(a.left(), b.left()) &&
           (entails(a.right(), b.right()) || entails(a.right(), b));
  if (a.op() == Op::Release && b.op() == Op::Release)
    return entails(a.left(), b.left()) &&
           (entails(a.right(), b.right()) || entails(a, b.right()));
  return false;
}

// ---------------------------------------------------------------------------
// Skeleton CNF / DNF.

namespace {

// A formula viewed as a list of Or-members (resp. And-members).
std::vector<Formula> members(const Formula& f, Op junction) {
  if (f.op() == junction)
    return f.kids();
  return {f};
}

Formula distribute(const std::vector<Formula>& factors, Op inner) {
  // factors: each a junction of `inner`-members; result distributes the
  // outer junction over them.  For CNF inner == Op::Or and the outer
  // junction is And, for DNF the other way around.
  std::vector<std::vector<Formula>> lists;
  lists.reserve(factors.size());
  for (const Formula& f : factors)
    lists.push_back(members(f, inner == Op::Or ? Op::And : Op::Or));
  // Odometer over the cartesian product.
  std::vector<std::size_t> pick(lists.size(), 0);
  std::vector<Formula> combos;
  while (true) {
    std::vector<Formula> chosen;
    chosen.reserve(lists.size());
    for (std::size_t i = 0; i < lists.size(); ++i)
      chosen.push_back(lists[i][pick[i]]);
    combos.push_back(inner == Op::Or ? Formula::disj(chosen)
                                     : Formula::conj(chosen));
    std::size_t i = 0;
    for (; i < lists.size(); ++i) {
      if (++pick[i] < lists[i].size())
        break;
      pick[i] = 0;
    }
    if (i == lists.size())
      break;
  }
  return inner == Op::Or ? Formula::conj(combos) : Formula::disj(combos);
}

Formula normal_form(const Formula& f, bool cnf) {
  if (f.op() == Op::Or) {
    std::vector<Formula> kids;
    kids.reserve(f.arity());
    for (std::size_t i = 0; i < f.arity(); ++i)
      kids.push_back(normal_form(f.kid(i), cnf));
    if (!cnf)
      return Formula::disj(kids);
    // CNF of a disjunction: distribute Or over the kids' And-members.
    return distribute(kids, Op::Or);
  }
  if (f.op() == Op::And) {
    std::vector<Formula> kids;
    kids.reserve(f.arity());
    for (std::size_t i = 0; i < f.arity(); ++i)
      kids.push_back(normal_form(f.kid(i), cnf));
    if (cnf)
      return Formula::conj(kids);
    return distribute(kids, Op::And);
  }
  return f; // literals, constants and temporal subformulas are opaque
}

} // namespace

Formula to_cnf(const Formula& f) { return normal_form(f, true); }
Formula to_dnf(const Formula& f) { return normal_form(f, false); }

// ---------------------------------------------------------------------------
// Simplification.

namespace {

// Remove Or-members whose language another member already covers, and dually
// And-members implied by another member.  Ties (mutual entailment) keep the
// earliest member.
std::vector<Formula> prune_members(std::vector<Formula> ks, bool disjunction) {
  std::vector<bool> keep(ks.size(), true);
  for (std::size_t i = 0; i < ks.size(); ++i)
    for (std::size_t j = 0; j < ks.size(); ++j) {
      if (i == j || !keep[j])
        continue;
      bool redundant = disjunction ? entails(ks[i], ks[j])
                                   : entails(ks[j], ks[i]);
      bool mutual = disjunction ? entails(ks[j], ks[i])
                                : entails(ks[i], ks[j]);
      if (redundant && (!mutual || j < i)) {
        keep[i] = false;
        break;
      }
    }
  std::vector<Formula> out;
  out.reserve(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i)
    if (keep[i])
      out.push_back(ks[i]);
  return out;
}

// The two until-elimination rules, applied when the rebuilt node is a
// fairness prefix over a genuine Until core.
Formula until_elimination(const Formula& f) {
  if (std::optional<Formula> core = f.gf_core(); core && core->op() == Op::Until)
    return Formula::always(Formula::eventually(core->right()));
  if (std::optional<Formula> core = f.fg_core(); core && core->op() == Op::Until) {
    Formula inf_right = Formula::always(Formula::eventually(core->right()));
    Formula tail = Formula::eventually(Formula::always(
        Formula::disj({core->left(), core->right()})));
    return Formula::conj({inf_right, tail});
  }
  return f;
}

class Simplifier {
public:
  Formula run(const Formula& f) {
    auto it = memo_.find(f.raw());
    if (it != memo_.end())
      return it->second;
    Formula out = compute(f);
    memo_.emplace(f.raw(), out);
    return out;
  }

private:
  Formula compute(const Formula& f) {
    switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
    case Op::NotAtom:
      return f;
    case Op::Next:
      return Formula::next(run(f.kid(0)));
    case Op::And:
    case Op::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.arity());
      for (std::size_t i = 0; i < f.arity(); ++i)
        kids.push_back(run(f.kid(i)));
      bool disjunction = f.op() == Op::Or;
      Formula g = disjunction ? Formula::disj(kids) : Formula::conj(kids);
      // Flattening may have changed the member list; prune on the result.
      if (g.op() == Op::And || g.op() == Op::Or)
        g = g.op() == Op::Or
                ? Formula::disj(prune_members(g.kids(), true))
                : Formula::conj(prune_members(g.kids(), false));
      return g;
    }
    case Op::Until:
      return until_elimination(
          Formula::until(run(f.left()), run(f.right())));
    case Op::Release:
      return until_elimination(
          Formula::release(run(f.left()), run(f.right())));
    }
    return f;
  }

  std::unordered_map<const FormulaNode*, Formula> memo_;
};

} // namespace

Formula simplify(const Formula& f) { return Simplifier().run(f); }

// ---------------------------------------------------------------------------
// Fairness normal form.

namespace {

// Is f of the shape F α (resp. G α)?  Fairness cores surface F/G through
// these; the interned representation keeps F = tt U α and G = ff R α.
bool f_shape(const Formula& f, Formula* core) {
  if (f.op() == Op::Until && f.left().is_true()) {
    *core = f.right();
    return true;
  }
  return false;
}

bool g_shape(const Formula& f, Formula* core) {
  if (f.op() == Op::Release && f.left().is_false()) {
    *core = f.right();
    return true;
  }
  return false;
}

// Push X below F, G, ∧ and ∨ so the split/extraction rules can see the
// temporal structure of a fairness core.  X over a genuine U/R stays put.
Formula push_x_inward(const Formula& f) {
  if (f.op() == Op::Next) {
    Formula kid = push_x_inward(f.kid(0));
    Formula core = kid;
    if (f_shape(kid, &core))
      return Formula::eventually(push_x_inward(Formula::next(core)));
    if (g_shape(kid, &core))
      return Formula::always(push_x_inward(Formula::next(core)));
    if (kid.op() == Op::And || kid.op() == Op::Or) {
      std::vector<Formula> pushed;
      pushed.reserve(kid.arity());
      for (std::size_t i = 0; i < kid.arity(); ++i)
        pushed.push_back(push_x_inward(Formula::next(kid.kid(i))));
      return kid.op() == Op::And ? Formula::conj(pushed)
                                 : Formula::disj(pushed);
    }
    return Formula::next(kid);
  }
  if (f.is_boolean_node() || f.op() == Op::Until || f.op() == Op::Release) {
    std::vector<Formula> kids;
    kids.reserve(f.arity());
    for (std::size_t i = 0; i < f.arity(); ++i)
      kids.push_back(push_x_inward(f.kid(i)));
    switch (f.op()) {
    case Op::And:
      return Formula::conj(kids);
    case Op::Or:
      return Formula::disj(kids);
    case Op::Until:
      return Formula::until(kids[0], kids[1]);
    default:
      return Formula::release(kids[0], kids[1]);
    }
  }
  return f;
}

// One rule application at an FG(χ) or GF(χ) redex; nullopt when normal.
std::optional<Formula> fairness_rule(const Formula& f) {
  Formula chi = f;
  bool is_fg = false;
  if (std::optional<Formula> c = f.fg_core()) {
    chi = *c;
    is_fg = true;
  } else if (std::optional<Formula> c = f.gf_core()) {
    chi = *c;
    is_fg = false;
  } else {
    return std::nullopt;
  }

  Formula core = chi;
  // FG(Fφ) → GFφ, GF(Fφ) → GFφ and the two G-variants.
  if (f_shape(chi, &core))
    return Formula::always(Formula::eventually(core));
  if (g_shape(chi, &core))
    return Formula::eventually(Formula::always(core));
  // FG(Xφ) → FGφ, GF(Xφ) → GFφ.
  if (chi.op() == Op::Next)
    return is_fg ? Formula::eventually(Formula::always(chi.kid(0)))
                 : Formula::always(Formula::eventually(chi.kid(0)));

  // FG splits over ∧, GF over ∨.
  if ((is_fg && chi.op() == Op::And) || (!is_fg && chi.op() == Op::Or)) {
    std::vector<Formula> parts;
    parts.reserve(chi.arity());
    for (std::size_t i = 0; i < chi.arity(); ++i)
      parts.push_back(
          is_fg ? Formula::eventually(Formula::always(chi.kid(i)))
                : Formula::always(Formula::eventually(chi.kid(i))));
    return is_fg ? Formula::conj(parts) : Formula::disj(parts);
  }

  // FG(φ ∨ Fψ) → FGφ ∨ GFψ and FG(φ ∨ Gψ) → FGφ ∨ FGψ; dually
  // GF(φ ∧ Fψ) → GFφ ∧ GFψ and GF(φ ∧ Gψ) → GFφ ∧ FGψ.  All F- and
  // G-topped members come out at once.
  if ((is_fg && chi.op() == Op::Or) || (!is_fg && chi.op() == Op::And)) {
    std::vector<Formula> rest, extracted;
    for (std::size_t i = 0; i < chi.arity(); ++i) {
      Formula m = chi.kid(i);
      if (f_shape(m, &core))
        extracted.push_back(Formula::always(Formula::eventually(core)));
      else if (g_shape(m, &core))
        extracted.push_back(Formula::eventually(Formula::always(core)));
      else
        rest.push_back(m);
    }
    if (!extracted.empty()) {
      Formula residue =
          is_fg ? Formula::eventually(Formula::always(Formula::disj(rest)))
                : Formula::always(Formula::eventually(Formula::conj(rest)));
      extracted.push_back(residue);
      return is_fg ? Formula::disj(extracted) : Formula::conj(extracted);
    }
  }

  if (!chi.in_ltl_x()) {
    // Surface buried F/G so the rules above can fire next round, then fall
    // back to restructuring the skeleton.  Only applied when it makes
    // progress — cores outside the fairness fragment are left alone.
    Formula pushed = push_x_inward(chi);
    if (pushed != chi)
      return is_fg ? Formula::eventually(Formula::always(pushed))
                   : Formula::always(Formula::eventually(pushed));
    Formula restructured = is_fg ? to_cnf(chi) : to_dnf(chi);
    if (restructured != chi)
      return is_fg ? Formula::eventually(Formula::always(restructured))
                   : Formula::always(Formula::eventually(restructured));
  }
  return std::nullopt;
}

class Normalizer {
public:
  Formula run(const Formula& f) {
    auto it = memo_.find(f.raw());
    if (it != memo_.end())
      return it->second;
    Formula out = compute(f);
    memo_.emplace(f.raw(), out);
    return out;
  }

private:
  Formula compute(const Formula& f) {
    Formula g = f;
    switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
    case Op::NotAtom:
      return f;
    case Op::Next:
      g = Formula::next(run(f.kid(0)));
      break;
    case Op::And:
    case Op::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.arity());
      for (std::size_t i = 0; i < f.arity(); ++i)
        kids.push_back(run(f.kid(i)));
      g = f.op() == Op::And ? Formula::conj(kids) : Formula::disj(kids);
      break;
    }
    case Op::Until:
      g = Formula::until(run(f.left()), run(f.right()));
      break;
    case Op::Release:
      g = Formula::release(run(f.left()), run(f.right()));
      break;
    }
    if (std::optional<Formula> rewritten = fairness_rule(g))
      return run(*rewritten);
    return g;
  }

  std::unordered_map<const FormulaNode*, Formula> memo_;
};

} // namespace

Formula fairness_normal_form(const Formula& f) { return Normalizer().run(f); }

Formula rewrite(Formula f) {
  std::unordered_set<const FormulaNode*> seen;
  while (seen.insert(f.raw()).second) {
    Formula g = fairness_normal_form(simplify(f));
    if (g == f)
      break;
    f = g;
  }
  return f;
}

} // namespace delag
