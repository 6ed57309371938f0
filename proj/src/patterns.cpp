#include "delag/patterns.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace delag {

namespace {

Formula fg(Formula f) { return Formula::eventually(Formula::always(std::move(f))); }
Formula gf(Formula f) { return Formula::always(Formula::eventually(std::move(f))); }

Formula pair_r(int i) {
  const std::string idx = std::to_string(i);
  return Formula::conj({fg(Formula::atom("a" + idx)),
                        gf(Formula::atom("b" + idx))});
}

Formula pair_s(int i) {
  const std::string idx = std::to_string(i);
  return Formula::disj({fg(Formula::atom("a" + idx)),
                        gf(Formula::atom("b" + idx))});
}

void require_nonnegative(int n) {
  if (n < 0) throw std::invalid_argument("pattern index must be >= 0");
}

}  // namespace

Formula rabin_pattern(int n) {
  require_nonnegative(n);
  if (n == 0) return pair_r(0);
  return Formula::disj({pair_r(n), streett_pattern(n - 1)});
}

Formula streett_pattern(int n) {
  require_nonnegative(n);
  if (n == 0) return pair_s(0);
  return Formula::conj({pair_s(n), rabin_pattern(n - 1)});
}

Formula history_pattern(int n) {
  require_nonnegative(n);
  Formula a = Formula::atom("a");
  Formula b = Formula::atom("b");
  if (n == 0) return fg(Formula::disj({a, b}));
  Formula xb = b;
  for (int i = 0; i < n; ++i) xb = Formula::next(std::move(xb));
  Formula lead = n % 2 == 0 ? a : Formula::natom("a");
  return Formula::disj(
      {fg(Formula::disj({std::move(lead), std::move(xb)})),
       history_pattern(n - 1)});
}

namespace {

// Skeleton compiled to a closure over a leaf-membership bitmask.
struct SkeletonEval {
  std::vector<Formula> leaves;

  bool eval(const Formula& node, std::uint32_t set) const {
    if (node.is_true()) return true;
    if (node.is_false()) return false;
    if (node.op() == Op::And) {
      for (std::size_t i = 0; i < node.arity(); ++i) {
        if (!eval(node.kid(i), set)) return false;
      }
      return true;
    }
    if (node.op() == Op::Or) {
      for (std::size_t i = 0; i < node.arity(); ++i) {
        if (eval(node.kid(i), set)) return true;
      }
      return false;
    }
    auto it = std::find(leaves.begin(), leaves.end(), node);
    return it != leaves.end() && ((set >> (it - leaves.begin())) & 1) != 0;
  }
};

}  // namespace

std::vector<std::vector<Formula>> good_leaf_sets(const Formula& f) {
  SkeletonEval se{skeleton_leaves(f)};
  const std::vector<Formula>& leaves = se.leaves;
  const std::size_t n = leaves.size();
  if (n > 24) {
    throw std::invalid_argument("too many skeleton leaves to enumerate");
  }
  std::vector<std::vector<Formula>> out;
  auto holds = [&](std::uint32_t set) { return se.eval(f, set); };
  for (std::uint32_t set = 0; set < (std::uint32_t{1} << n); ++set) {
    if (!holds(set)) continue;
    // The skeleton is monotone, so removing one element at a time decides
    // minimality.
    bool minimal = true;
    for (std::size_t i = 0; i < n && minimal; ++i) {
      if ((set >> i) & 1) minimal = !holds(set & ~(std::uint32_t{1} << i));
    }
    if (!minimal) continue;
    std::vector<Formula> members;
    for (std::size_t i = 0; i < n; ++i) {
      if ((set >> i) & 1) members.push_back(leaves[i]);
    }
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace delag
