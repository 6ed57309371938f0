#include "delag/oracle.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace delag {

namespace {

// Evaluates every subformula at every position of the lasso, bottom-up and
// memoized on the interned node pointer.  Positions 0..stem-1 lie on the
// stem, stem..total-1 on the loop; next() wraps the last loop position back
// to the loop start.
class LassoEval {
public:
  explicit LassoEval(const Lasso& w)
      : w_(w), stem_(w.stem.size()), total_(w.stem.size() + w.loop.size()) {}

  bool truth_at_origin(const Formula& f) { return eval(f)[0] != 0; }

private:
  std::size_t next(std::size_t i) const {
    return i + 1 < total_ ? i + 1 : stem_;
  }

  Letter letter(std::size_t i) const {
    return i < stem_ ? w_.stem[i] : w_.loop[i - stem_];
  }

  int ap_index(const std::string& name) const {
    for (std::size_t i = 0; i < w_.ap.size(); ++i)
      if (w_.ap[i] == name)
        return static_cast<int>(i);
    return -1;
  }

  const std::vector<char>& eval(const Formula& f) {
    auto it = memo_.find(f.raw());
    if (it != memo_.end())
      return it->second;
    std::vector<char> val(total_, 0);
    switch (f.op()) {
    case Op::True:
      std::fill(val.begin(), val.end(), 1);
      break;
    case Op::False:
      break;
    case Op::Atom:
    case Op::NotAtom: {
      int idx = ap_index(f.name());
      for (std::size_t i = 0; i < total_; ++i) {
        bool holds = idx >= 0 && (letter(i) >> idx & 1);
        val[i] = (f.op() == Op::Atom) == holds;
      }
      break;
    }
    case Op::And: {
      std::fill(val.begin(), val.end(), 1);
      for (std::size_t k = 0; k < f.arity(); ++k) {
        const std::vector<char>& kid = eval(f.kid(k));
        for (std::size_t i = 0; i < total_; ++i)
          val[i] = val[i] && kid[i];
      }
      break;
    }
    case Op::Or: {
      for (std::size_t k = 0; k < f.arity(); ++k) {
        const std::vector<char>& kid = eval(f.kid(k));
        for (std::size_t i = 0; i < total_; ++i)
          val[i] = val[i] || kid[i];
      }
      break;
    }
    case Op::Next: {
      const std::vector<char>& kid = eval(f.kid(0));
      for (std::size_t i = 0; i < total_; ++i)
        val[i] = kid[next(i)];
      break;
    }
    case Op::Until:
    case Op::Release: {
      const std::vector<char>& l = eval(f.left());
      const std::vector<char>& r = eval(f.right());
      bool is_until = f.op() == Op::Until;
      // Least (U) / greatest (R) fixpoint of the one-step expansion on the
      // loop: initialize to the fixpoint's bottom and sweep backwards until
      // stable; each sweep pushes information through the wrap edge once,
      // so |loop|+1 sweeps always converge.
      if (!is_until)
        std::fill(val.begin() + stem_, val.end(), 1);
      for (std::size_t sweep = 0; sweep <= w_.loop.size(); ++sweep) {
        bool changed = false;
        for (std::size_t i = total_; i-- > stem_;) {
          char now = is_until ? (r[i] || (l[i] && val[next(i)]))
                              : (r[i] && (l[i] || val[next(i)]));
          if (now != val[i]) {
            val[i] = now;
            changed = true;
          }
        }
        if (!changed)
          break;
      }
      // The stem unrolls backwards off the loop values.
      for (std::size_t i = stem_; i-- > 0;)
        val[i] = is_until ? (r[i] || (l[i] && val[i + 1]))
                          : (r[i] && (l[i] || val[i + 1]));
      break;
    }
    }
    return memo_.emplace(f.raw(), std::move(val)).first->second;
  }

  const Lasso& w_;
  std::size_t stem_;
  std::size_t total_;
  std::unordered_map<const FormulaNode*, std::vector<char>> memo_;
};

std::vector<std::string> ap_union(std::vector<std::string> a,
                                  const std::vector<std::string>& b) {
  for (const std::string& name : b)
    if (std::find(a.begin(), a.end(), name) == a.end())
      a.push_back(name);
  std::sort(a.begin(), a.end());
  return a;
}

// Calls fn on every lasso over 2^k letters with the given bounds; stops and
// returns the lasso for which fn returned true.
template <typename Fn>
std::optional<Lasso> search_exhaustive(const std::vector<std::string>& ap,
                                       const LassoBounds& bounds, Fn&& fn) {
  std::size_t letters = std::size_t(1) << ap.size();
  Lasso w;
  w.ap = ap;
  for (int stem_len = 0; stem_len <= bounds.stem_max; ++stem_len) {
    w.stem.assign(stem_len, 0);
    while (true) {
      for (int loop_len = 1; loop_len <= bounds.loop_max; ++loop_len) {
        w.loop.assign(loop_len, 0);
        while (true) {
          if (fn(w))
            return w;
          std::size_t i = 0;
          for (; i < w.loop.size(); ++i) {
            if (++w.loop[i] < letters)
              break;
            w.loop[i] = 0;
          }
          if (i == w.loop.size())
            break;
        }
      }
      std::size_t i = 0;
      for (; i < w.stem.size(); ++i) {
        if (++w.stem[i] < letters)
          break;
        w.stem[i] = 0;
      }
      if (i == w.stem.size())
        break;
    }
  }
  return std::nullopt;
}

template <typename Fn>
std::optional<Lasso> search_sampled(const std::vector<std::string>& ap,
                                    const LassoBounds& bounds, Fn&& fn) {
  std::size_t letters = std::size_t(1) << ap.size();
  std::mt19937 rng(bounds.seed);
  std::uniform_int_distribution<int> stem_len(0, bounds.stem_max);
  std::uniform_int_distribution<int> loop_len(1, std::max(1, bounds.loop_max));
  std::uniform_int_distribution<Letter> letter(
      0, static_cast<Letter>(letters - 1));
  Lasso w;
  w.ap = ap;
  // Cheap deterministic pass first: every single-letter loop.
  if (letters <= 4096) {
    w.stem.clear();
    for (std::size_t v = 0; v < letters; ++v) {
      w.loop.assign(1, static_cast<Letter>(v));
      if (fn(w))
        return w;
    }
  }
  for (std::size_t n = 0; n < bounds.samples; ++n) {
    w.stem.resize(stem_len(rng));
    for (Letter& v : w.stem)
      v = letter(rng);
    w.loop.resize(loop_len(rng));
    for (Letter& v : w.loop)
      v = letter(rng);
    if (fn(w))
      return w;
  }
  return std::nullopt;
}

template <typename Fn>
std::optional<Lasso> search_lassos(const std::vector<std::string>& ap,
                                   const LassoBounds& bounds, Fn&& fn) {
  if (ap.size() > kMaxTelaAps)
    throw tela_error("too many atomic propositions for lasso search");
  if (ap.size() <= bounds.max_atoms_exhaustive)
    return search_exhaustive(ap, bounds, fn);
  return search_sampled(ap, bounds, fn);
}

} // namespace

bool ltl_sat_lasso(const Formula& f, const Lasso& w) {
  if (w.loop.empty())
    throw tela_error("lasso loop must be non-empty");
  return LassoEval(w).truth_at_origin(f);
}

std::optional<Lasso> equiv_on_lassos(const Formula& f, const Tela& a,
                                     const LassoBounds& bounds) {
  std::vector<std::string> ap = ap_union(atoms(f), a.ap);
  return search_lassos(ap, bounds, [&](const Lasso& w) {
    return ltl_sat_lasso(f, w) != accepts_lasso(a, w);
  });
}

std::optional<Lasso> telas_equiv_on_lassos(const Tela& a, const Tela& b,
                                           const LassoBounds& bounds) {
  std::vector<std::string> ap = ap_union(a.ap, b.ap);
  return search_lassos(ap, bounds, [&](const Lasso& w) {
    return accepts_lasso(a, w) != accepts_lasso(b, w);
  });
}

} // namespace delag
