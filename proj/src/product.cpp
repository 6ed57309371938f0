#include "delag/product.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>

#include "delag/fairness.hpp"
#include "delag/fallback.hpp"
#include "delag/rewrite.hpp"
#include "delag/safety.hpp"

namespace delag {

namespace {

struct Component {
  Formula leaf;
  Fragment frag = Fragment::Unsupported;
  bool inf_type = true;        // contributes Inf(mark) when resolved accepting
  bool fairness = false;
  bool external = false;
  bool shared_buffer = false;  // runs on the global history buffer
  Formula core;                // fairness operand
  std::size_t window = 0;
  Mask aligned_mask;           // right-aligned to the shared buffer length
  Tela tela;                   // backing automaton unless shared_buffer
  int acc_trap = -1;
  int rej_trap = -1;
  int mark_count = 1;
  std::vector<int> projection; // external only: global letter mapping
};

struct PState {
  std::vector<int> comp;
  std::vector<Letter> buf;

  bool operator<(const PState& o) const {
    if (comp != o.comp) return comp < o.comp;
    return buf < o.buf;
  }
};

struct PiggybackPair {
  int carrier = -1;   // fairness component whose mark absorbs the other
  int absorbed = -1;  // (co)safety component folded away
  bool conj_context = true;
};

struct TransformEffect {
  std::uint64_t rej_mask = 0;
  std::uint64_t acc_mask = 0;
  std::uint64_t release_mask = 0;
};

class ProductBuilder {
public:
  ProductBuilder(Formula g, const TranslateOptions& opts)
      : g_(g), opts_(opts), ap_(atoms(g)) {
    if (ap_.size() > kMaxTelaAps) {
      throw bound_error("too many atomic propositions for explicit alphabet: " +
                        std::to_string(ap_.size()));
    }
    letters_ = std::size_t{1} << ap_.size();
    conj_sets_ = conjunct_sets(g_);
    disj_sets_ = disjunct_sets(g_);
    build_components();
    if (opts_.piggyback) select_piggyback();
  }

  Tela build(TranslateDetails* details);

private:
  void build_components();
  void select_piggyback();
  int comp_of(const Formula& leaf) const {
    auto it = comp_index_.find(leaf);
    return it == comp_index_.end() ? -1 : it->second;
  }

  bool resolved_true(const Formula& x, const std::vector<int>& comp) const;
  bool resolved_false(const Formula& x, const std::vector<int>& comp) const;
  bool release_ready(std::size_t i, const std::vector<int>& comp) const;
  Formula resolve_skeleton(const Formula& node,
                           const std::vector<int>& comp) const;
  void apply_transform(std::vector<int>& comp);

  bool live_sat(std::size_t i, const std::vector<Letter>& buf, Letter nu) const;
  std::vector<Letter> advance_buffer(const std::vector<Letter>& buf, Letter nu,
                                     const std::vector<int>& next_comp) const;
  std::pair<PState, MarkSet> step(const PState& s, Letter nu);

  int intern(PState s);
  Acceptance lift(const Formula& node) const;
  Acceptance component_acceptance(std::size_t i) const;

  Formula g_;
  TranslateOptions opts_;
  std::vector<std::string> ap_;
  std::size_t letters_ = 0;

  std::vector<std::vector<Formula>> conj_sets_;
  std::vector<std::vector<Formula>> disj_sets_;

  std::vector<Component> comps_;
  std::map<Formula, int, FormulaLess> comp_index_;
  std::vector<int> mark_base_;
  int total_marks_ = 0;
  std::size_t shared_len_ = 0;

  std::vector<PiggybackPair> pb_pairs_;
  std::set<Formula, FormulaLess> pb_to_tt_;
  std::set<Formula, FormulaLess> pb_to_ff_;

  std::map<PState, int> state_index_;
  std::vector<PState> states_;
  std::vector<std::vector<Edge>> edges_;
  std::unordered_map<std::string, TransformEffect> transform_memo_;
};

void ProductBuilder::build_components() {
  std::vector<Formula> leaves = skeleton_leaves(g_);
  for (const Formula& leaf : leaves) {
    Component c;
    c.leaf = leaf;
    c.frag = classify(leaf);
    switch (c.frag) {
      case Fragment::Cosafety: {
        SafetyAutomaton sa = build_cosafety(leaf, ap_, opts_.state_bound);
        c.tela = std::move(sa.tela);
        c.acc_trap = sa.acc_trap;
        c.rej_trap = sa.rej_trap;
        c.inf_type = true;
        break;
      }
      case Fragment::Safety: {
        SafetyAutomaton sa = build_safety(leaf, ap_, opts_.state_bound);
        c.tela = std::move(sa.tela);
        c.acc_trap = sa.acc_trap;
        c.rej_trap = sa.rej_trap;
        c.inf_type = false;
        break;
      }
      case Fragment::FairnessGF:
      case Fragment::FairnessFG: {
        bool gf = c.frag == Fragment::FairnessGF;
        c.fairness = true;
        c.inf_type = gf;
        c.core = gf ? *leaf.gf_core() : *leaf.fg_core();
        FairnessWindow fw = fairness_window(c.core, ap_);
        c.window = fw.window;
        c.aligned_mask = fw.window_mask; // right-aligned later
        c.shared_buffer = opts_.enhanced && opts_.global_history;
        if (!c.shared_buffer) {
          c.tela = gf ? translate_gf(c.core, ap_) : translate_fg(c.core, ap_);
        }
        break;
      }
      case Fragment::FairnessBoolean:
        // Leaves are literals or temporal formulas, never boolean nodes.
        throw tela_error("internal error: boolean skeleton leaf " +
                         to_string(leaf));
      case Fragment::Unsupported: {
        if (opts_.fallback_command.empty()) {
          throw unsupported_error(
              "subformula outside the built-in fragments, external "
              "translator required: " + to_string(leaf), leaf);
        }
        FallbackOptions fo;
        fo.command_template = opts_.fallback_command;
        fo.raw_substitution = opts_.fallback_raw_substitution;
        fo.timeout_seconds = opts_.fallback_timeout_seconds;
        c.tela = translate_external(leaf, fo);
        c.external = true;
        c.mark_count = std::max(c.tela.mark_count, 0);
        c.projection = ap_projection(ap_, c.tela.ap);
        break;
      }
    }
    comp_index_.emplace(c.leaf, static_cast<int>(comps_.size()));
    comps_.push_back(std::move(c));
  }

  total_marks_ = 0;
  for (const Component& c : comps_) {
    mark_base_.push_back(total_marks_);
    total_marks_ += c.mark_count;
  }
  if (total_marks_ > kMaxMarks) {
    throw bound_error("too many acceptance marks: " +
                      std::to_string(total_marks_));
  }

  shared_len_ = 0;
  for (const Component& c : comps_) {
    if (c.shared_buffer) shared_len_ = std::max(shared_len_, c.window);
  }
  for (Component& c : comps_) {
    if (c.shared_buffer) {
      Mask aligned(shared_len_ - c.window, 0);
      aligned.insert(aligned.end(), c.aligned_mask.begin(),
                     c.aligned_mask.end());
      c.aligned_mask = std::move(aligned);
    }
  }
}

namespace {
int count_in_skeleton(const Formula& node, const Formula& leaf) {
  if (node == leaf) return 1;
  if (!node.is_boolean_node()) return 0;
  int n = 0;
  for (std::size_t i = 0; i < node.arity(); ++i) {
    n += count_in_skeleton(node.kid(i), leaf);
  }
  return n;
}
}  // namespace

void ProductBuilder::select_piggyback() {
  std::set<Formula, FormulaLess> absorbed;
  auto scan = [&](const std::vector<std::vector<Formula>>& sets,
                  bool conj_context) {
    for (const auto& members : sets) {
      int carrier = -1;
      for (const Formula& m : members) {
        int i = comp_of(m);
        if (i < 0 || !comps_[i].fairness) continue;
        if (count_in_skeleton(g_, m) != 1) continue;
        carrier = i;
        break;
      }
      if (carrier < 0) continue;
      for (const Formula& m : members) {
        int i = comp_of(m);
        if (i < 0 || i == carrier) continue;
        Fragment want = conj_context ? Fragment::Cosafety : Fragment::Safety;
        if (comps_[i].frag != want) continue;
        if (count_in_skeleton(g_, m) != 1) continue;
        if (absorbed.count(m)) continue;
        absorbed.insert(m);
        pb_pairs_.push_back({carrier, i, conj_context});
        (conj_context ? pb_to_tt_ : pb_to_ff_).insert(m);
      }
    }
  };
  scan(conj_sets_, true);
  scan(disj_sets_, false);
}

bool ProductBuilder::resolved_true(const Formula& x,
                                   const std::vector<int>& comp) const {
  if (x.is_true()) return true;
  if (x.is_false()) return false;
  int i = comp_of(x);
  if (i >= 0) return comp[i] == kCompAcc;
  if (x.op() == Op::And) {
    for (std::size_t k = 0; k < x.arity(); ++k) {
      if (!resolved_true(x.kid(k), comp)) return false;
    }
    return true;
  }
  if (x.op() == Op::Or) {
    for (std::size_t k = 0; k < x.arity(); ++k) {
      if (resolved_true(x.kid(k), comp)) return true;
    }
    return false;
  }
  return false;
}

bool ProductBuilder::resolved_false(const Formula& x,
                                    const std::vector<int>& comp) const {
  if (x.is_true()) return false;
  if (x.is_false()) return true;
  int i = comp_of(x);
  if (i >= 0) return comp[i] == kCompRej;
  if (x.op() == Op::And) {
    for (std::size_t k = 0; k < x.arity(); ++k) {
      if (resolved_false(x.kid(k), comp)) return true;
    }
    return false;
  }
  if (x.op() == Op::Or) {
    for (std::size_t k = 0; k < x.arity(); ++k) {
      if (!resolved_false(x.kid(k), comp)) return false;
    }
    return true;
  }
  return false;
}

bool ProductBuilder::release_ready(std::size_t i,
                                   const std::vector<int>& comp) const {
  const Formula& psi = comps_[i].leaf;
  bool in_any_set = false;
  auto contains = [&](const std::vector<Formula>& set) {
    return std::find(set.begin(), set.end(), psi) != set.end();
  };
  for (const auto& members : conj_sets_) {
    if (!contains(members)) continue;
    in_any_set = true;
    bool ready = true;
    for (const Formula& chi : members) {
      if (chi == psi || !chi.in_ltl_ux()) continue;
      if (!resolved_true(chi, comp)) {
        ready = false;
        break;
      }
    }
    if (ready) return true;
  }
  for (const auto& members : disj_sets_) {
    if (!contains(members)) continue;
    in_any_set = true;
    bool ready = true;
    for (const Formula& chi : members) {
      if (chi == psi || !chi.in_ltl_rx()) continue;
      if (!resolved_false(chi, comp)) {
        ready = false;
        break;
      }
    }
    if (ready) return true;
  }
  return !in_any_set;
}

Formula ProductBuilder::resolve_skeleton(const Formula& node,
                                         const std::vector<int>& comp) const {
  int i = comp_of(node);
  if (i >= 0) {
    if (comp[i] == kCompAcc) return Formula::tt();
    if (comp[i] == kCompRej) return Formula::ff();
    return node;
  }
  if (node.is_boolean_node()) {
    std::vector<Formula> kids;
    kids.reserve(node.arity());
    for (std::size_t k = 0; k < node.arity(); ++k) {
      kids.push_back(resolve_skeleton(node.kid(k), comp));
    }
    return node.op() == Op::And ? Formula::conj(std::move(kids))
                                : Formula::disj(std::move(kids));
  }
  return node;
}

void ProductBuilder::apply_transform(std::vector<int>& comp) {
  std::string key(comps_.size(), 'u');
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (comp[i] == kCompAcc) key[i] = 'a';
    else if (comp[i] == kCompRej) key[i] = 'r';
    else if (comp[i] == kCompHold) key[i] = 'h';
  }
  auto it = transform_memo_.find(key);
  if (it == transform_memo_.end()) {
    TransformEffect eff;
    std::vector<int> pattern(comps_.size(), 0);
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      pattern[i] = key[i] == 'a' ? kCompAcc : key[i] == 'r' ? kCompRej
                   : key[i] == 'h' ? kCompHold : 0;
    }
    Formula resolved = resolve_skeleton(g_, pattern);
    // Silence components the formula's value no longer depends on.
    std::vector<Formula> supp = support(resolved);
    auto in_support = [&](const Formula& leaf) {
      return std::find(supp.begin(), supp.end(), leaf) != supp.end();
    };
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      if (key[i] == 'a' || key[i] == 'r') continue;
      if (comps_[i].external) continue; // external components always run
      const Formula& leaf = comps_[i].leaf;
      if (in_support(leaf)) continue;
      // When both polarities of a literal fall outside the support they must
      // settle as one consistent choice (positive accepting, negated
      // rejecting): no run can make both false, and with the base outside
      // the support either consistent value leaves the verdict unchanged.
      // Silencing both as rejecting would judge tautologies like a | !a
      // unsatisfied.
      bool settle_acc = false;
      if (leaf.op() == Op::Atom) {
        int j = comp_of(Formula::natom(leaf.name()));
        settle_acc = j >= 0 && key[j] != 'a' && key[j] != 'r';
      }
      if (settle_acc) {
        eff.acc_mask |= std::uint64_t{1} << i;
        pattern[i] = kCompAcc;
      } else {
        eff.rej_mask |= std::uint64_t{1} << i;
        pattern[i] = kCompRej;
      }
    }
    // Release held fairness components whose waiting no longer helps.
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      if (pattern[i] != kCompHold) continue;
      if (release_ready(i, pattern)) eff.release_mask |= std::uint64_t{1} << i;
    }
    it = transform_memo_.emplace(std::move(key), eff).first;
  }
  const TransformEffect& eff = it->second;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if ((eff.rej_mask >> i) & 1) {
      comp[i] = kCompRej;
    } else if ((eff.acc_mask >> i) & 1) {
      comp[i] = kCompAcc;
    } else if ((eff.release_mask >> i) & 1) {
      comp[i] = comps_[i].shared_buffer ? kCompLive : comps_[i].tela.initial;
    }
  }
}

bool ProductBuilder::live_sat(std::size_t i, const std::vector<Letter>& buf,
                              Letter nu) const {
  const Component& c = comps_[i];
  std::vector<Letter> word(buf.end() - c.window, buf.end());
  word.push_back(nu);
  return sat_on_padded(c.core, word, ap_);
}

std::vector<Letter> ProductBuilder::advance_buffer(
    const std::vector<Letter>& buf, Letter nu,
    const std::vector<int>& next_comp) const {
  std::vector<Letter> nb(buf.begin() + 1, buf.end());
  nb.push_back(nu);
  Mask live(shared_len_, 0);
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (next_comp[i] == kCompLive) {
      live = mask_join(live, comps_[i].aligned_mask);
    }
  }
  return word_meet(std::move(nb), live);
}

std::pair<PState, MarkSet> ProductBuilder::step(const PState& s, Letter nu) {
  PState next;
  next.comp.resize(comps_.size());
  MarkSet marks = 0;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    const Component& c = comps_[i];
    int cur = s.comp[i];
    switch (cur) {
      case kCompAcc:
        if (c.inf_type) marks |= MarkSet{1} << mark_base_[i];
        next.comp[i] = kCompAcc;
        break;
      case kCompRej:
        if (!c.inf_type) marks |= MarkSet{1} << mark_base_[i];
        next.comp[i] = kCompRej;
        break;
      case kCompHold:
        next.comp[i] = kCompHold;
        break;
      case kCompLive: {
        bool sat = live_sat(i, s.buf, nu);
        if (sat == c.inf_type) marks |= MarkSet{1} << mark_base_[i];
        next.comp[i] = kCompLive;
        break;
      }
      default: {
        Letter col = c.external ? project_letter(nu, c.projection) : nu;
        const Edge& e = c.tela.edges[cur][col];
        marks |= e.marks << mark_base_[i];
        int t = e.target;
        if (!c.external && opts_.enhanced) {
          if (t == c.acc_trap) t = kCompAcc;
          else if (t == c.rej_trap) t = kCompRej;
        }
        next.comp[i] = t;
        break;
      }
    }
  }
  if (opts_.enhanced) apply_transform(next.comp);
  if (shared_len_ > 0) next.buf = advance_buffer(s.buf, nu, next.comp);
  return {std::move(next), marks};
}

int ProductBuilder::intern(PState s) {
  auto it = state_index_.find(s);
  if (it != state_index_.end()) return it->second;
  if (states_.size() >= opts_.state_bound) {
    throw bound_error("state bound exceeded while composing " + to_string(g_));
  }
  int id = static_cast<int>(states_.size());
  state_index_.emplace(s, id);
  states_.push_back(std::move(s));
  edges_.emplace_back(letters_);
  return id;
}

Acceptance ProductBuilder::component_acceptance(std::size_t i) const {
  const Component& c = comps_[i];
  if (c.external) {
    std::vector<int> remap(c.mark_count);
    for (int m = 0; m < c.mark_count; ++m) remap[m] = mark_base_[i] + m;
    return c.tela.acceptance.renumber(remap);
  }
  return c.inf_type ? Acceptance::inf(mark_base_[i])
                    : Acceptance::fin(mark_base_[i]);
}

Acceptance ProductBuilder::lift(const Formula& node) const {
  if (node.is_true()) return Acceptance::tt();
  if (node.is_false()) return Acceptance::ff();
  if (node.is_boolean_node()) {
    std::vector<Acceptance> kids;
    kids.reserve(node.arity());
    for (std::size_t k = 0; k < node.arity(); ++k) {
      kids.push_back(lift(node.kid(k)));
    }
    return node.op() == Op::And ? Acceptance::conj(std::move(kids))
                                : Acceptance::disj(std::move(kids));
  }
  if (pb_to_tt_.count(node)) return Acceptance::tt();
  if (pb_to_ff_.count(node)) return Acceptance::ff();
  int i = comp_of(node);
  if (i < 0) throw tela_error("internal error: unmapped leaf " + to_string(node));
  return component_acceptance(static_cast<std::size_t>(i));
}

Tela ProductBuilder::build(TranslateDetails* details) {
  // Initial state: fairness components wait in enhanced mode, everything
  // else starts at its automaton's initial state.
  PState init;
  init.comp.resize(comps_.size());
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    const Component& c = comps_[i];
    if (opts_.enhanced && c.fairness) {
      init.comp[i] = kCompHold;
    } else if (!c.external && opts_.enhanced && c.tela.initial == c.acc_trap) {
      init.comp[i] = kCompAcc;
    } else if (!c.external && opts_.enhanced && c.tela.initial == c.rej_trap) {
      init.comp[i] = kCompRej;
    } else {
      init.comp[i] = c.tela.initial;
    }
  }
  if (opts_.enhanced) apply_transform(init.comp);
  init.buf.assign(shared_len_, 0);
  intern(std::move(init));

  for (std::size_t s = 0; s < states_.size(); ++s) {
    for (Letter nu = 0; nu < letters_; ++nu) {
      PState st = states_[s]; // copy: states_ may reallocate during intern
      auto [next, marks] = step(st, nu);
      Edge e;
      e.marks = marks;
      e.target = intern(std::move(next));
      edges_[s][nu] = e;
    }
  }

  // Mark adjustments for folded (co)safety components.
  for (const PiggybackPair& p : pb_pairs_) {
    const Component& carrier = comps_[p.carrier];
    const MarkSet cbit = MarkSet{1} << mark_base_[p.carrier];
    for (std::size_t s = 0; s < states_.size(); ++s) {
      int a = states_[s].comp[p.absorbed];
      bool resolved;
      if (opts_.enhanced) {
        resolved = a == (p.conj_context ? kCompAcc : kCompRej);
      } else {
        resolved = a == (p.conj_context ? comps_[p.absorbed].acc_trap
                                        : comps_[p.absorbed].rej_trap);
      }
      if (resolved) continue;
      for (Letter nu = 0; nu < letters_; ++nu) {
        bool add = p.conj_context != carrier.inf_type;
        if (add) {
          edges_[s][nu].marks |= cbit;
        } else {
          edges_[s][nu].marks &= ~cbit;
        }
      }
    }
  }

  Acceptance acceptance = lift(g_);

  // Compact marks: piggybacking can leave a component's mark unused.
  MarkSet used = acceptance.marks_used();
  std::vector<int> remap(static_cast<std::size_t>(total_marks_), -1);
  int next_mark = 0;
  for (int b = 0; b < total_marks_; ++b) {
    if ((used >> b) & 1) remap[b] = next_mark++;
  }
  if (next_mark != total_marks_) {
    for (auto& row : edges_) {
      for (Edge& e : row) {
        MarkSet compacted = 0;
        for (int b = 0; b < total_marks_; ++b) {
          if (((e.marks >> b) & 1) && remap[b] >= 0) {
            compacted |= MarkSet{1} << remap[b];
          }
        }
        e.marks = compacted;
      }
    }
    acceptance = acceptance.renumber(remap);
  }

  Tela out;
  out.ap = ap_;
  out.initial = 0;
  out.edges = std::move(edges_);
  out.acceptance = std::move(acceptance);
  out.mark_count = next_mark;
  out.validate();

  if (details) {
    details->components.clear();
    details->fragments.clear();
    details->mark_base.clear();
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      details->components.push_back(comps_[i].leaf);
      details->fragments.push_back(comps_[i].frag);
      int base = mark_base_[i];
      details->mark_base.push_back(base < total_marks_ && remap[base] >= 0
                                       ? remap[base] : -1);
    }
    details->state_comp.clear();
    details->state_buffer.clear();
    for (const PState& s : states_) {
      details->state_comp.push_back(s.comp);
      details->state_buffer.push_back(s.buf);
    }
  }
  return out;
}

}  // namespace

Tela translate(const Formula& f, const TranslateOptions& opts,
               TranslateDetails* details) {
  Formula g = rewrite(f);
  if (details) {
    *details = TranslateDetails{};
    details->rewritten = g;
  }
  if (g.is_constant()) {
    Tela out;
    out.initial = 0;
    out.edges = {{Edge{0, 0}}};
    out.acceptance = g.is_true() ? Acceptance::tt() : Acceptance::ff();
    out.mark_count = 0;
    out.validate();
    return out;
  }
  ProductBuilder builder(g, opts);
  return builder.build(details);
}

}  // namespace delag
