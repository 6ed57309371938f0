#include "delag/acceptance.hpp"

#include <sstream>

namespace delag {

Acceptance Acceptance::tt() { return {}; }

Acceptance Acceptance::ff() {
  Acceptance a;
  a.kind = Kind::False;
  return a;
}

Acceptance Acceptance::fin(int mark) {
  Acceptance a;
  a.kind = Kind::Fin;
  a.mark = mark;
  return a;
}

Acceptance Acceptance::inf(int mark) {
  Acceptance a;
  a.kind = Kind::Inf;
  a.mark = mark;
  return a;
}

namespace {

Acceptance build_nary(Acceptance::Kind kind, std::vector<Acceptance> kids) {
  using Kind = Acceptance::Kind;
  const Kind neutral_kind = kind == Kind::And ? Kind::True : Kind::False;
  const Kind absorbing_kind = kind == Kind::And ? Kind::False : Kind::True;
  std::vector<Acceptance> flat;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    Acceptance k = kids[i];
    if (k.kind == kind) {
      for (Acceptance& kk : k.kids)
        kids.push_back(std::move(kk));
      continue;
    }
    if (k.kind == absorbing_kind)
      return kind == Kind::And ? Acceptance::ff() : Acceptance::tt();
    if (k.kind == neutral_kind)
      continue;
    flat.push_back(std::move(k));
  }
  if (flat.empty())
    return kind == Kind::And ? Acceptance::tt() : Acceptance::ff();
  if (flat.size() == 1)
    return flat[0];
  Acceptance out;
  out.kind = kind;
  out.kids = std::move(flat);
  return out;
}

} // namespace

Acceptance Acceptance::conj(std::vector<Acceptance> kids) {
  return build_nary(Kind::And, std::move(kids));
}

Acceptance Acceptance::disj(std::vector<Acceptance> kids) {
  return build_nary(Kind::Or, std::move(kids));
}

bool Acceptance::evaluate(MarkSet inf_marks) const {
  switch (kind) {
  case Kind::True:
    return true;
  case Kind::False:
    return false;
  case Kind::Fin:
    return !(inf_marks >> mark & 1);
  case Kind::Inf:
    return inf_marks >> mark & 1;
  case Kind::And:
    for (const Acceptance& k : kids)
      if (!k.evaluate(inf_marks))
        return false;
    return true;
  case Kind::Or:
    for (const Acceptance& k : kids)
      if (k.evaluate(inf_marks))
        return true;
    return false;
  }
  return false;
}

Acceptance Acceptance::dual() const {
  Acceptance out = *this;
  switch (kind) {
  case Kind::True:
    out.kind = Kind::False;
    break;
  case Kind::False:
    out.kind = Kind::True;
    break;
  case Kind::Fin:
    out.kind = Kind::Inf;
    break;
  case Kind::Inf:
    out.kind = Kind::Fin;
    break;
  case Kind::And:
    out.kind = Kind::Or;
    for (Acceptance& k : out.kids)
      k = k.dual();
    break;
  case Kind::Or:
    out.kind = Kind::And;
    for (Acceptance& k : out.kids)
      k = k.dual();
    break;
  }
  return out;
}

int Acceptance::leaf_count() const {
  if (kind == Kind::Fin || kind == Kind::Inf)
    return 1;
  int n = 0;
  for (const Acceptance& k : kids)
    n += k.leaf_count();
  return n;
}

MarkSet Acceptance::marks_used() const {
  if (kind == Kind::Fin || kind == Kind::Inf)
    return MarkSet(1) << mark;
  MarkSet m = 0;
  for (const Acceptance& k : kids)
    m |= k.marks_used();
  return m;
}

Acceptance Acceptance::renumber(const std::vector<int>& map) const {
  Acceptance out = *this;
  if (kind == Kind::Fin || kind == Kind::Inf)
    out.mark = map[mark];
  for (Acceptance& k : out.kids)
    k = k.renumber(map);
  return out;
}

namespace {

// HOA precedence: '&' binds tighter than '|'.
void print_acc(std::ostringstream& out, const Acceptance& a, bool in_and) {
  using Kind = Acceptance::Kind;
  switch (a.kind) {
  case Kind::True:
    out << 't';
    return;
  case Kind::False:
    out << 'f';
    return;
  case Kind::Fin:
    out << "Fin(" << a.mark << ')';
    return;
  case Kind::Inf:
    out << "Inf(" << a.mark << ')';
    return;
  case Kind::And:
    for (std::size_t i = 0; i < a.kids.size(); ++i) {
      if (i)
        out << " & ";
      bool paren = a.kids[i].kind == Kind::Or;
      if (paren)
        out << '(';
      print_acc(out, a.kids[i], true);
      if (paren)
        out << ')';
    }
    return;
  case Kind::Or: {
    bool paren = in_and;
    if (paren)
      out << '(';
    for (std::size_t i = 0; i < a.kids.size(); ++i) {
      if (i)
        out << " | ";
      print_acc(out, a.kids[i], false);
    }
    if (paren)
      out << ')';
    return;
  }
  }
}

} // namespace

std::string Acceptance::to_text() const {
  std::ostringstream out;
  print_acc(out, *this, false);
  return out.str();
}

namespace {

bool is_leaf(const Acceptance& a, Acceptance::Kind kind, int mark) {
  return a.kind == kind && a.mark == mark;
}

// Matches And/Or over pairs (Fin(2i) op Inf(2i+1)) in ascending order.
bool is_pair_form(const Acceptance& a, Acceptance::Kind outer,
                  Acceptance::Kind inner, std::size_t* pairs) {
  using Kind = Acceptance::Kind;
  std::vector<const Acceptance*> items;
  if (a.kind == outer)
    for (const Acceptance& k : a.kids)
      items.push_back(&k);
  else
    items.push_back(&a);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Acceptance& p = *items[i];
    if (p.kind != inner || p.kids.size() != 2)
      return false;
    if (!is_leaf(p.kids[0], Kind::Fin, static_cast<int>(2 * i)) ||
        !is_leaf(p.kids[1], Kind::Inf, static_cast<int>(2 * i + 1)))
      return false;
  }
  *pairs = items.size();
  return true;
}

} // namespace

std::optional<std::string> Acceptance::named_class(int mark_count) const {
  using Kind = Acceptance::Kind;
  if (kind == Kind::True)
    return std::string("all");
  if (kind == Kind::False)
    return std::string("none");
  if (mark_count == 1 && is_leaf(*this, Kind::Inf, 0))
    return std::string("Buchi");
  if (mark_count == 1 && is_leaf(*this, Kind::Fin, 0))
    return std::string("co-Buchi");

  // generalized-Buchi: Inf(0) & ... & Inf(k-1)
  {
    std::vector<const Acceptance*> items;
    if (kind == Kind::And)
      for (const Acceptance& k : kids)
        items.push_back(&k);
    bool ok = !items.empty();
    for (std::size_t i = 0; ok && i < items.size(); ++i)
      ok = is_leaf(*items[i], Kind::Inf, static_cast<int>(i));
    if (ok && static_cast<int>(items.size()) == mark_count)
      return "generalized-Buchi " + std::to_string(items.size());
  }
  // generalized-co-Buchi: Fin(0) | ... | Fin(k-1)
  {
    std::vector<const Acceptance*> items;
    if (kind == Kind::Or)
      for (const Acceptance& k : kids)
        items.push_back(&k);
    bool ok = !items.empty();
    for (std::size_t i = 0; ok && i < items.size(); ++i)
      ok = is_leaf(*items[i], Kind::Fin, static_cast<int>(i));
    if (ok && static_cast<int>(items.size()) == mark_count)
      return "generalized-co-Buchi " + std::to_string(items.size());
  }
  std::size_t pairs = 0;
  if (is_pair_form(*this, Kind::Or, Kind::And, &pairs) &&
      static_cast<int>(2 * pairs) == mark_count)
    return "Rabin " + std::to_string(pairs);
  {
    // Streett pairs are Fin(2i) | Inf(2i+1) joined by And.
    std::vector<const Acceptance*> items;
    if (kind == Kind::And)
      for (const Acceptance& k : kids)
        items.push_back(&k);
    else
      items.push_back(this);
    bool ok = true;
    for (std::size_t i = 0; ok && i < items.size(); ++i) {
      const Acceptance& p = *items[i];
      ok = p.kind == Kind::Or && p.kids.size() == 2 &&
           is_leaf(p.kids[0], Kind::Fin, static_cast<int>(2 * i)) &&
           is_leaf(p.kids[1], Kind::Inf, static_cast<int>(2 * i + 1));
    }
    if (ok && static_cast<int>(2 * items.size()) == mark_count)
      return "Streett " + std::to_string(items.size());
  }
  return std::nullopt;
}

bool Acceptance::operator==(const Acceptance& o) const {
  if (kind != o.kind || mark != o.mark || kids.size() != o.kids.size())
    return false;
  for (std::size_t i = 0; i < kids.size(); ++i)
    if (!(kids[i] == o.kids[i]))
      return false;
  return true;
}

} // namespace delag
