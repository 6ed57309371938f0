#include "delag/fairness.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace delag {

namespace {

int atom_index(const std::string& name, const std::vector<std::string>& ap) {
  auto it = std::find(ap.begin(), ap.end(), name);
  if (it == ap.end()) {
    throw tela_error("atom '" + name + "' is not in the atom list");
  }
  return static_cast<int>(it - ap.begin());
}

}  // namespace

Mask mask_join(const Mask& a, const Mask& b) {
  Mask out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] |= a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] |= b[i];
  return out;
}

std::vector<Letter> word_meet(std::vector<Letter> w, const Mask& m) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] &= i < m.size() ? m[i] : 0;
  }
  return w;
}

Mask mask_closure(Mask m) {
  Letter acc = 0;
  for (Letter& bits : m) {
    acc |= bits;
    bits = acc;
  }
  return m;
}

Mask mask_drop(Mask m) {
  if (!m.empty()) m.pop_back();
  return m;
}

Mask relevant_history(const Formula& f, const std::vector<std::string>& ap) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return {};
    case Op::Atom:
    case Op::NotAtom:
      return {Letter{1} << atom_index(f.name(), ap)};
    case Op::And:
    case Op::Or: {
      Mask out;
      for (std::size_t i = 0; i < f.arity(); ++i) {
        out = mask_join(out, relevant_history(f.kid(i), ap));
      }
      return out;
    }
    case Op::Next: {
      Mask inner = relevant_history(f.kid(0), ap);
      inner.insert(inner.begin(), 0);
      return inner;
    }
    case Op::Until:
    case Op::Release:
      throw tela_error("relevant history is defined only for formulas without U/R: " +
                       to_string(f));
  }
  throw tela_error("unreachable formula operator");
}

namespace {

bool sat_at(const Formula& f, const std::vector<Letter>& w, std::size_t i,
            const std::vector<std::string>& ap) {
  switch (f.op()) {
    case Op::True:
      return true;
    case Op::False:
      return false;
    case Op::Atom:
    case Op::NotAtom: {
      bool holds =
          i < w.size() && ((w[i] >> atom_index(f.name(), ap)) & 1) != 0;
      return (f.op() == Op::Atom) == holds;
    }
    case Op::And:
      for (std::size_t k = 0; k < f.arity(); ++k) {
        if (!sat_at(f.kid(k), w, i, ap)) return false;
      }
      return true;
    case Op::Or:
      for (std::size_t k = 0; k < f.arity(); ++k) {
        if (sat_at(f.kid(k), w, i, ap)) return true;
      }
      return false;
    case Op::Next:
      return sat_at(f.kid(0), w, i + 1, ap);
    case Op::Until:
    case Op::Release:
      throw tela_error("finite-word evaluation is defined only for formulas without U/R");
  }
  throw tela_error("unreachable formula operator");
}

}  // namespace

bool sat_on_padded(const Formula& f, const std::vector<Letter>& w,
                   const std::vector<std::string>& ap) {
  return sat_at(f, w, 0, ap);
}

FairnessWindow fairness_window(const Formula& core,
                               const std::vector<std::string>& ap) {
  FairnessWindow fw{core, 0, {}};
  Mask h = relevant_history(core, ap);
  fw.window = h.empty() ? 0 : h.size() - 1;
  fw.window_mask = mask_drop(mask_closure(std::move(h)));
  return fw;
}

namespace {

Tela translate_buffer(const Formula& core, const std::vector<std::string>& ap,
                      bool inf_type) {
  if (ap.size() > kMaxTelaAps) {
    throw tela_error("too many atomic propositions for explicit alphabet");
  }
  FairnessWindow fw = fairness_window(core, ap);
  const std::size_t letters = std::size_t{1} << ap.size();

  Tela out;
  out.ap = ap;
  out.initial = 0;
  out.mark_count = 1;
  out.acceptance = inf_type ? Acceptance::inf(0) : Acceptance::fin(0);

  std::map<std::vector<Letter>, int> index;
  std::vector<std::vector<Letter>> buffers;
  auto intern = [&](std::vector<Letter> buf) {
    auto [it, inserted] = index.emplace(std::move(buf), buffers.size());
    if (inserted) {
      buffers.push_back(it->first);
      out.edges.emplace_back(letters);
    }
    return it->second;
  };

  intern(std::vector<Letter>(fw.window, 0));
  for (std::size_t s = 0; s < buffers.size(); ++s) {
    std::vector<Letter> word = buffers[s];
    for (Letter nu = 0; nu < letters; ++nu) {
      word.push_back(nu);
      bool sat = sat_on_padded(core, word, ap);
      std::vector<Letter> next(word.begin() + 1, word.end());
      word.pop_back();
      next = word_meet(std::move(next), fw.window_mask);
      Edge e;
      e.target = intern(std::move(next));
      if (sat == inf_type) e.marks = 1;
      out.edges[s][nu] = e;
    }
  }
  return out;
}

}  // namespace

Tela translate_gf(const Formula& core, const std::vector<std::string>& ap) {
  return translate_buffer(core, ap, true);
}

Tela translate_fg(const Formula& core, const std::vector<std::string>& ap) {
  return translate_buffer(core, ap, false);
}

}  // namespace delag
