#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "delag/formula.hpp"
#include "delag/oracle.hpp"
#include "delag/safety.hpp"

using namespace delag;

TEST_CASE("single derivative steps") {
  std::vector<std::string> ap{"a", "b"};
  CHECK(af_step(parse("a"), 0b01, ap) == Formula::tt());
  CHECK(af_step(parse("a"), 0b10, ap) == Formula::ff());
  CHECK(af_step(parse("!a"), 0b10, ap) == Formula::tt());
  CHECK(af_step(parse("X (a & b)"), 0b00, ap) == parse("a & b"));
  CHECK(af_step(parse("a U b"), 0b01, ap) == parse("a U b"));
  CHECK(af_step(parse("a U b"), 0b10, ap) == Formula::tt());
  CHECK(af_step(parse("a U b"), 0b00, ap) == Formula::ff());
  CHECK(af_step(parse("G a"), 0b01, ap) == parse("G a"));
  CHECK(af_step(parse("G a"), 0b00, ap) == Formula::ff());
  CHECK(af_step(parse("a R b"), 0b10, ap) == parse("a R b"));
  CHECK(af_step(parse("a R b"), 0b11, ap) == Formula::tt());
  CHECK(af_step(parse("a R b"), 0b01, ap) == Formula::ff());
}

TEST_CASE("reach automaton for F (b1 & F b2)") {
  std::vector<std::string> ap{"b1", "b2"};
  SafetyAutomaton a = build_cosafety(parse("F (b1 & F b2)"), ap);
  CHECK(a.tela.state_count() == 3);
  CHECK(a.acc_trap >= 0);
  CHECK(a.rej_trap == -1);
  CHECK(a.tela.acceptance == Acceptance::inf(0));

  // The accepting trap loops with the mark; every other edge is unmarked.
  for (std::size_t s = 0; s < a.tela.state_count(); ++s) {
    for (const Edge& e : a.tela.edges[s]) {
      if (static_cast<int>(s) == a.acc_trap) {
        CHECK(e.target == a.acc_trap);
        CHECK(e.marks == 1);
      } else {
        CHECK(e.marks == 0);
      }
    }
  }
  CHECK(!equiv_on_lassos(parse("F (b1 & F b2)"), a.tela).has_value());
}

TEST_CASE("avoid automaton for G a") {
  SafetyAutomaton a = build_safety(parse("G a"), {"a"});
  CHECK(a.tela.state_count() == 2);
  CHECK(a.rej_trap >= 0);
  CHECK(a.acc_trap == -1);
  CHECK(a.tela.acceptance == Acceptance::fin(0));
  for (const Edge& e : a.tela.edges[a.rej_trap]) {
    CHECK(e.target == a.rej_trap);
    CHECK(e.marks == 1);
  }
  CHECK(!equiv_on_lassos(parse("G a"), a.tela).has_value());
}

TEST_CASE("literals get both traps") {
  SafetyAutomaton a = build_cosafety(parse("a"), {"a"});
  CHECK(a.tela.state_count() == 3);
  CHECK(a.acc_trap >= 0);
  CHECK(a.rej_trap >= 0);
  // The rejecting trap of a reach automaton loops unmarked.
  for (const Edge& e : a.tela.edges[a.rej_trap]) {
    CHECK(e.target == a.rej_trap);
    CHECK(e.marks == 0);
  }
  CHECK(!equiv_on_lassos(parse("a"), a.tela).has_value());
}

TEST_CASE("release automaton keeps an accepting trap unmarked") {
  SafetyAutomaton a = build_safety(parse("a R b"), {"a", "b"});
  CHECK(a.tela.state_count() == 3);
  CHECK(a.acc_trap >= 0);
  CHECK(a.rej_trap >= 0);
  for (const Edge& e : a.tela.edges[a.acc_trap]) {
    CHECK(e.target == a.acc_trap);
    CHECK(e.marks == 0);
  }
  CHECK(!equiv_on_lassos(parse("a R b"), a.tela).has_value());
}

TEST_CASE("derivative states collapse propositionally") {
  // X(a|b) and X(b|a) parse to one node; deeper states reached by different
  // letters but with equivalent skeletons share a state.
  std::vector<std::string> ap{"a", "b"};
  SafetyAutomaton s = build_cosafety(parse("(a & X (a U b)) | (b & X (a U b))"), ap);
  CHECK(!equiv_on_lassos(parse("(a & X (a U b)) | (b & X (a U b))"), s.tela)
             .has_value());
}

TEST_CASE("nested until stays within the fragment") {
  std::vector<std::string> ap{"a", "b", "c"};
  Formula f = parse("(a U b) U c");
  Tela t = translate_cosafety(f, ap);
  CHECK(!equiv_on_lassos(f, t).has_value());

  Formula g = parse("(a R b) R c");
  Tela u = translate_safety(g, ap);
  CHECK(!equiv_on_lassos(g, u).has_value());
}

TEST_CASE("fragment and bound violations") {
  CHECK_THROWS_AS(build_cosafety(parse("G a"), {"a"}), tela_error);
  CHECK_THROWS_AS(build_safety(parse("F a"), {"a"}), tela_error);
  CHECK_THROWS_AS(build_cosafety(parse("F (b1 & F b2)"), {"b1", "b2"}, 2),
                  bound_error);
  // bound_error is a tela_error, so generic handlers keep working.
  CHECK_THROWS_AS(build_cosafety(parse("F (b1 & F b2)"), {"b1", "b2"}, 2),
                  tela_error);
}

TEST_CASE("constants translate to a single trap") {
  SafetyAutomaton t = build_cosafety(Formula::tt(), {"a"});
  CHECK(t.tela.state_count() == 1);
  CHECK(t.acc_trap == 0);
  CHECK(!equiv_on_lassos(Formula::tt(), t.tela).has_value());

  SafetyAutomaton f = build_safety(Formula::ff(), {"a"});
  CHECK(f.tela.state_count() == 1);
  CHECK(f.rej_trap == 0);
  CHECK(!equiv_on_lassos(Formula::ff(), f.tela).has_value());
}
