#include "delag/hoa.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace delag {

// ---------------------------------------------------------------------------
// Serialization.

namespace {

// BFS renumbering from the initial state, letters ascending.
std::vector<int> canonical_order(const Tela& a, int* reachable_count) {
  std::vector<int> number(a.state_count(), -1);
  std::vector<int> queue;
  number[a.initial] = 0;
  queue.push_back(a.initial);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int s = queue[head];
    for (const Edge& e : a.edges[s])
      if (number[e.target] < 0) {
        number[e.target] = static_cast<int>(queue.size());
        queue.push_back(e.target);
      }
  }
  *reachable_count = static_cast<int>(queue.size());
  return number;
}

void print_label(std::ostringstream& out, Letter v, std::size_t ap_count) {
  if (ap_count == 0) {
    out << 't';
    return;
  }
  for (std::size_t i = 0; i < ap_count; ++i) {
    if (i)
      out << '&';
    if (!(v >> i & 1))
      out << '!';
    out << i;
  }
}

void print_marks(std::ostringstream& out, MarkSet marks) {
  if (!marks)
    return;
  out << " {";
  bool first = true;
  for (int i = 0; i < kMaxMarks; ++i)
    if (marks >> i & 1) {
      if (!first)
        out << ' ';
      out << i;
      first = false;
    }
  out << '}';
}

} // namespace

std::string serialize_hoa(const Tela& a) {
  a.validate();
  int reachable = 0;
  std::vector<int> number = canonical_order(a, &reachable);
  std::vector<int> order(reachable);
  for (std::size_t s = 0; s < a.state_count(); ++s)
    if (number[s] >= 0)
      order[number[s]] = static_cast<int>(s);

  std::ostringstream out;
  out << "HOA: v1\n";
  out << "tool: \"delag\"\n";
  out << "States: " << reachable << '\n';
  out << "Start: 0\n";
  out << "AP: " << a.ap.size();
  for (const std::string& name : a.ap)
    out << " \"" << name << '"';
  out << '\n';
  out << "Acceptance: " << a.mark_count << ' ' << a.acceptance.to_text()
      << '\n';
  out << "acc-name: "
      << a.acceptance.named_class(a.mark_count).value_or("none") << '\n';
  out << "properties: deterministic complete trans-acc\n";
  out << "--BODY--\n";
  for (int n = 0; n < reachable; ++n) {
    out << "State: " << n << '\n';
    const std::vector<Edge>& row = a.edges[order[n]];
    for (std::size_t v = 0; v < row.size(); ++v) {
      out << '[';
      print_label(out, static_cast<Letter>(v), a.ap.size());
      out << "] " << number[row[v].target];
      print_marks(out, row[v].marks);
      out << '\n';
    }
  }
  out << "--END--\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

struct HoaLexer {
  const std::string& text;
  std::size_t pos = 0;

  explicit HoaLexer(const std::string& t) : text(t) {}

  void skip_space() {
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '*') {
        std::size_t end = text.find("*/", pos + 2);
        if (end == std::string::npos)
          throw hoa_error("unterminated comment");
        pos = end + 2;
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_space();
    return pos >= text.size();
  }

  char peek() {
    skip_space();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool try_char(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect_char(char c) {
    if (!try_char(c))
      throw hoa_error(std::string("expected '") + c + "'");
  }

  // Header names (colon included), identifiers, --BODY-- style markers.
  std::string word() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_' || text[pos] == '-' || text[pos] == '!'))
      ++pos;
    if (start == pos)
      throw hoa_error("expected a word");
    if (pos < text.size() && text[pos] == ':')
      ++pos; // header name: keep the colon attached
    return text.substr(start, pos - start);
  }

  long integer() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (start == pos)
      throw hoa_error("expected an integer");
    return std::strtol(text.substr(start, pos - start).c_str(), nullptr, 10);
  }

  std::string quoted() {
    skip_space();
    if (pos >= text.size() || text[pos] != '"')
      throw hoa_error("expected a quoted string");
    ++pos;
    std::string out;
    while (pos < text.size() && text[pos] != '"') {
      if (text[pos] == '\\' && pos + 1 < text.size())
        ++pos;
      out.push_back(text[pos++]);
    }
    if (pos >= text.size())
      throw hoa_error("unterminated string");
    ++pos;
    return out;
  }

  bool peek_digit() {
    skip_space();
    return pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]));
  }
};

// Acceptance condition: t | f | Fin(n) | Inf(n) | (...) with & and |.
Acceptance parse_acc_expr(HoaLexer& lex);

Acceptance parse_acc_primary(HoaLexer& lex) {
  if (lex.try_char('(')) {
    Acceptance inner = parse_acc_expr(lex);
    lex.expect_char(')');
    return inner;
  }
  std::string w = lex.word();
  if (w == "t")
    return Acceptance::tt();
  if (w == "f")
    return Acceptance::ff();
  if (w == "Fin" || w == "Inf") {
    lex.expect_char('(');
    if (lex.peek() == '!')
      throw hoa_error("unknown acceptance primitive: complemented set");
    long mark = lex.integer();
    lex.expect_char(')');
    return w == "Fin" ? Acceptance::fin(static_cast<int>(mark))
                      : Acceptance::inf(static_cast<int>(mark));
  }
  throw hoa_error("unknown acceptance primitive '" + w + "'");
}

Acceptance parse_acc_and(HoaLexer& lex) {
  std::vector<Acceptance> kids{parse_acc_primary(lex)};
  while (lex.try_char('&'))
    kids.push_back(parse_acc_primary(lex));
  return kids.size() == 1 ? kids[0] : Acceptance::conj(std::move(kids));
}

Acceptance parse_acc_expr(HoaLexer& lex) {
  std::vector<Acceptance> kids{parse_acc_and(lex)};
  while (lex.try_char('|'))
    kids.push_back(parse_acc_and(lex));
  return kids.size() == 1 ? kids[0] : Acceptance::disj(std::move(kids));
}

// Label formulas: boolean combinations of AP indices.  We evaluate the
// formula once per letter rather than building a BDD; alphabets are small.
struct LabelExpr {
  enum class K { True, False, Ap, Not, And, Or } k;
  int ap = -1;
  std::vector<LabelExpr> kids;

  bool eval(Letter v) const {
    switch (k) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Ap:
      return v >> ap & 1;
    case K::Not:
      return !kids[0].eval(v);
    case K::And:
      for (const LabelExpr& e : kids)
        if (!e.eval(v))
          return false;
      return true;
    case K::Or:
      for (const LabelExpr& e : kids)
        if (e.eval(v))
          return true;
      return false;
    }
    return false;
  }
};

LabelExpr parse_label_expr(HoaLexer& lex, int ap_count);

LabelExpr parse_label_primary(HoaLexer& lex, int ap_count) {
  if (lex.try_char('!')) {
    LabelExpr e;
    e.k = LabelExpr::K::Not;
    e.kids.push_back(parse_label_primary(lex, ap_count));
    return e;
  }
  if (lex.try_char('(')) {
    LabelExpr inner = parse_label_expr(lex, ap_count);
    lex.expect_char(')');
    return inner;
  }
  if (lex.peek_digit()) {
    long idx = lex.integer();
    if (idx < 0 || idx >= ap_count)
      throw hoa_error("label references AP " + std::to_string(idx) +
                      " out of range");
    LabelExpr e;
    e.k = LabelExpr::K::Ap;
    e.ap = static_cast<int>(idx);
    return e;
  }
  std::string w = lex.word();
  if (w == "t")
    return LabelExpr{LabelExpr::K::True, -1, {}};
  if (w == "f")
    return LabelExpr{LabelExpr::K::False, -1, {}};
  throw hoa_error("bad label token '" + w + "'");
}

LabelExpr parse_label_and(HoaLexer& lex, int ap_count) {
  LabelExpr first = parse_label_primary(lex, ap_count);
  if (lex.peek() != '&')
    return first;
  LabelExpr e;
  e.k = LabelExpr::K::And;
  e.kids.push_back(std::move(first));
  while (lex.try_char('&'))
    e.kids.push_back(parse_label_primary(lex, ap_count));
  return e;
}

LabelExpr parse_label_expr(HoaLexer& lex, int ap_count) {
  LabelExpr first = parse_label_and(lex, ap_count);
  if (lex.peek() != '|')
    return first;
  LabelExpr e;
  e.k = LabelExpr::K::Or;
  e.kids.push_back(std::move(first));
  while (lex.try_char('|'))
    e.kids.push_back(parse_label_and(lex, ap_count));
  return e;
}

MarkSet parse_marks(HoaLexer& lex, int mark_count) {
  MarkSet marks = 0;
  if (!lex.try_char('{'))
    return marks;
  while (!lex.try_char('}')) {
    long m = lex.integer();
    if (m < 0 || m >= mark_count)
      throw hoa_error("mark " + std::to_string(m) + " out of range");
    marks |= MarkSet(1) << m;
  }
  return marks;
}

} // namespace

Tela parse_hoa(const std::string& text, const HoaParseOptions& opts) {
  HoaLexer lex(text);

  long n_states = -1;
  long start = -1;
  bool saw_ap = false, saw_acc = false;
  std::vector<std::string> ap;
  Acceptance acceptance = Acceptance::tt();
  long mark_count = 0;

  // --- header ---
  // Unknown headers (tool:, name:, properties:, extensions) are skipped by
  // consuming value tokens until the next word ending in ':' or --BODY--.
  bool body = false;
  bool skipping = false;
  while (!body) {
    if (lex.eof())
      throw hoa_error("missing --BODY--");
    char c = lex.peek();
    if (c == '"' || std::isdigit(static_cast<unsigned char>(c))) {
      if (!skipping)
        throw hoa_error("malformed header");
      if (c == '"')
        lex.quoted();
      else
        lex.integer();
      continue;
    }
    std::string w = lex.word();
    if (w == "--BODY--") {
      body = true;
      continue;
    }
    if (w.empty() || w.back() != ':') {
      if (!skipping)
        throw hoa_error("malformed header near '" + w + "'");
      continue; // a value of an unknown header
    }
    skipping = false;
    w.pop_back();
    if (w == "HOA") {
      std::string v = lex.word();
      if (v != "v1")
        throw hoa_error("unsupported HOA version '" + v + "'");
    } else if (w == "States") {
      n_states = lex.integer();
    } else if (w == "Start") {
      if (start >= 0)
        throw hoa_error("multiple initial states are not supported");
      start = lex.integer();
      if (lex.peek() == '&')
        throw hoa_error("conjunctive initial states are not supported");
    } else if (w == "AP") {
      saw_ap = true;
      long n = lex.integer();
      if (n < 0 || static_cast<std::size_t>(n) > kMaxTelaAps)
        throw hoa_error("unsupported AP count");
      for (long i = 0; i < n; ++i)
        ap.push_back(lex.quoted());
    } else if (w == "Acceptance") {
      saw_acc = true;
      mark_count = lex.integer();
      if (mark_count < 0 || mark_count > kMaxMarks)
        throw hoa_error("unsupported acceptance set count");
      acceptance = parse_acc_expr(lex);
    } else if (w == "Alias") {
      throw hoa_error("aliases are not supported");
    } else {
      skipping = true;
    }
  }
  if (n_states < 0 || start < 0 || !saw_ap || !saw_acc)
    throw hoa_error("incomplete header (need States, Start, AP, Acceptance)");
  if (n_states == 0)
    throw hoa_error("automaton has no states");
  if (start >= n_states)
    throw hoa_error("initial state out of range");

  Tela a;
  a.ap = ap;
  a.initial = static_cast<int>(start);
  a.acceptance = acceptance;
  a.mark_count = static_cast<int>(mark_count);
  std::size_t letters = std::size_t(1) << ap.size();
  a.edges.assign(n_states, std::vector<Edge>(letters, Edge{-1, 0}));

  // --- body ---
  int cur = -1;
  MarkSet cur_state_marks = 0;
  std::size_t implicit_next = 0;
  std::vector<bool> defined(n_states, false);
  while (true) {
    if (lex.eof())
      throw hoa_error("missing --END--");
    if (lex.peek() == 'S' || lex.peek() == '-') {
      std::string w = lex.word();
      if (w == "--END--")
        break;
      if (w != "State:")
        throw hoa_error("malformed body near '" + w + "'");
      if (lex.try_char('[')) // state labels are not supported
        throw hoa_error("state labels are not supported");
      long s = lex.integer();
      if (s < 0 || s >= n_states)
        throw hoa_error("state " + std::to_string(s) + " out of range");
      if (defined[s])
        throw hoa_error("state " + std::to_string(s) + " defined twice");
      defined[s] = true;
      cur = static_cast<int>(s);
      implicit_next = 0;
      if (lex.peek() == '"')
        lex.quoted(); // optional state name
      cur_state_marks = parse_marks(lex, a.mark_count);
      continue;
    }
    if (cur < 0)
      throw hoa_error("edge before any State:");

    // One edge: either "[label] target {marks}" or "target {marks}".
    std::vector<std::size_t> matched;
    if (lex.try_char('[')) {
      LabelExpr label = parse_label_expr(lex, static_cast<int>(ap.size()));
      lex.expect_char(']');
      for (std::size_t v = 0; v < letters; ++v)
        if (label.eval(static_cast<Letter>(v)))
          matched.push_back(v);
    } else {
      if (implicit_next >= letters)
        throw hoa_error("too many implicit edges on state " +
                        std::to_string(cur));
      matched.push_back(implicit_next++);
    }
    long target = lex.integer();
    if (target < 0 || target >= n_states)
      throw hoa_error("edge target out of range");
    MarkSet marks = parse_marks(lex, a.mark_count) | cur_state_marks;
    for (std::size_t v : matched) {
      if (a.edges[cur][v].target != -1)
        throw hoa_error("nondeterministic: state " + std::to_string(cur) +
                        " has overlapping edges");
      a.edges[cur][v] = Edge{static_cast<int>(target), marks};
    }
  }

  bool incomplete = false;
  for (const auto& row : a.edges)
    for (const Edge& e : row)
      if (e.target == -1)
        incomplete = true;
  if (incomplete) {
    if (!opts.allow_incomplete)
      throw hoa_error("automaton is incomplete");
    a = complete_with_rejecting_sink(std::move(a));
  }
  a.validate();
  return a;
}

Tela complete_with_rejecting_sink(Tela a) {
  bool any_hole = false;
  for (const auto& row : a.edges)
    for (const Edge& e : row)
      if (e.target == -1)
        any_hole = true;
  if (!any_hole)
    return a;

  // Look for a mark set the acceptance condition rejects; the sink loops
  // with those marks.  When the condition is a tautology over mark sets,
  // conjoin a fresh Fin mark instead (it never occurs elsewhere, so other
  // runs are unaffected).
  std::optional<MarkSet> rejecting;
  if (a.mark_count <= 16) {
    for (MarkSet m = 0; m < (MarkSet(1) << a.mark_count); ++m)
      if (!a.acceptance.evaluate(m)) {
        rejecting = m;
        break;
      }
  } else {
    if (!a.acceptance.evaluate(0))
      rejecting = MarkSet(0);
  }
  MarkSet sink_marks;
  if (rejecting) {
    sink_marks = *rejecting;
  } else {
    if (a.mark_count >= kMaxMarks)
      throw hoa_error("cannot add completion mark: too many marks");
    sink_marks = MarkSet(1) << a.mark_count;
    a.acceptance = Acceptance::conj(
        {a.acceptance, Acceptance::fin(a.mark_count)});
    a.mark_count += 1;
  }

  int sink = static_cast<int>(a.state_count());
  for (auto& row : a.edges)
    for (Edge& e : row)
      if (e.target == -1)
        e = Edge{sink, 0};
  a.edges.emplace_back(a.letter_count(), Edge{sink, sink_marks});
  return a;
}

} // namespace delag
