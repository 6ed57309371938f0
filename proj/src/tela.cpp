#include "delag/tela.hpp"

#include <algorithm>
#include <sstream>

namespace delag {

void Tela::validate() const {
  if (ap.size() > kMaxTelaAps)
    throw tela_error("too many atomic propositions (" +
                     std::to_string(ap.size()) + ")");
  if (edges.empty())
    throw tela_error("automaton has no states");
  if (initial < 0 || static_cast<std::size_t>(initial) >= edges.size())
    throw tela_error("initial state out of range");
  if (mark_count < 0 || mark_count > kMaxMarks)
    throw tela_error("mark count out of range");
  MarkSet valid_marks =
      mark_count == kMaxMarks ? ~MarkSet(0) : (MarkSet(1) << mark_count) - 1;
  if ((acceptance.marks_used() & ~valid_marks) != 0)
    throw tela_error("acceptance uses an undeclared mark");
  for (const auto& row : edges) {
    if (row.size() != letter_count())
      throw tela_error("state is not complete");
    for (const Edge& e : row) {
      if (e.target < 0 || static_cast<std::size_t>(e.target) >= edges.size())
        throw tela_error("edge target out of range");
      if ((e.marks & ~valid_marks) != 0)
        throw tela_error("edge uses an undeclared mark");
    }
  }
}

std::string to_string(const Lasso& w) {
  auto letter = [&](Letter v) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < w.ap.size(); ++i)
      if (v >> i & 1) {
        if (!first)
          out += ",";
        out += w.ap[i];
        first = false;
      }
    return out + "}";
  };
  std::string out = "stem =";
  for (Letter v : w.stem)
    out += " " + letter(v);
  if (w.stem.empty())
    out += " (empty)";
  out += " ; loop =";
  for (Letter v : w.loop)
    out += " " + letter(v);
  return out;
}

std::vector<int> ap_projection(const std::vector<std::string>& from,
                               const std::vector<std::string>& to) {
  std::vector<int> map(from.size(), -1);
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto it = std::find(to.begin(), to.end(), from[i]);
    if (it != to.end())
      map[i] = static_cast<int>(it - to.begin());
  }
  return map;
}

Letter project_letter(Letter v, const std::vector<int>& projection) {
  Letter out = 0;
  for (std::size_t i = 0; i < projection.size(); ++i)
    if (projection[i] >= 0 && (v >> i & 1))
      out |= Letter(1) << projection[i];
  return out;
}

bool accepts_lasso(const Tela& a, const Lasso& w) {
  if (w.loop.empty())
    throw tela_error("lasso loop must be non-empty");
  std::vector<int> proj = ap_projection(w.ap, a.ap);

  int state = a.initial;
  for (Letter v : w.stem)
    state = a.edges[state][project_letter(v, proj)].target;

  // Iterate (state, loop position) pairs until a pair repeats; the marks on
  // the cycle between the repeats are exactly those seen infinitely often.
  std::vector<int> seen(a.state_count() * w.loop.size(), -1);
  std::vector<MarkSet> trail;
  int pos = 0;
  while (true) {
    std::size_t key = static_cast<std::size_t>(state) * w.loop.size() + pos;
    if (seen[key] >= 0) {
      MarkSet inf = 0;
      for (std::size_t i = seen[key]; i < trail.size(); ++i)
        inf |= trail[i];
      return a.acceptance.evaluate(inf);
    }
    seen[key] = static_cast<int>(trail.size());
    const Edge& e = a.edges[state][project_letter(w.loop[pos], proj)];
    trail.push_back(e.marks);
    state = e.target;
    pos = (pos + 1) % static_cast<int>(w.loop.size());
  }
}

Tela complement(Tela a) {
  a.acceptance = a.acceptance.dual();
  return a;
}

int acceptance_size(const Tela& a) { return a.acceptance.leaf_count(); }

} // namespace delag
