#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "delag/formula.hpp"
#include "delag/rewrite.hpp"

using namespace delag;

TEST_CASE("entailment preorder") {
  CHECK(entails(parse("a"), parse("a")));
  CHECK(entails(parse("false"), parse("a")));
  CHECK(entails(parse("a"), parse("true")));
  CHECK(entails(parse("a & b"), parse("a")));
  CHECK(entails(parse("a"), parse("a | b")));
  CHECK(entails(parse("a & b"), parse("a | b")));
  CHECK(!entails(parse("a | b"), parse("a & b")));
  CHECK(entails(parse("X a"), parse("X (a | b)")));
  CHECK(entails(parse("a U b"), parse("(a | c) U (b | c)")));
  CHECK(entails(parse("b"), parse("a U b")));
  CHECK(entails(parse("a R b"), parse("b")));
  // An Until entails a weaker Until whose right side absorbs the whole goal.
  CHECK(entails(parse("F (b1 & F b2)"), parse("F b2")));
  CHECK(!entails(parse("F b2"), parse("F (b1 & F b2)")));
}

TEST_CASE("simplify prunes subsumed members") {
  CHECK(simplify(parse("a | (a & b)")) == parse("a"));
  CHECK(simplify(parse("a & (a | b)")) == parse("a"));
  CHECK(simplify(parse("F b2 | F (b1 & F b2)")) == parse("F b2"));
  CHECK(simplify(parse("(a & b) | (a & b & c)")) == parse("a & b"));
  CHECK(simplify(parse("a | b")) == parse("a | b"));
}

TEST_CASE("until elimination under fairness prefixes") {
  CHECK(simplify(parse("G F (a U b)")) == parse("G F b"));
  CHECK(simplify(parse("F G (a U b)")) == parse("G F b & F G (a | b)"));
}

TEST_CASE("fairness normal form: single-step shapes") {
  CHECK(fairness_normal_form(parse("F G (F a)")) == parse("G F a"));
  CHECK(fairness_normal_form(parse("G F (F a)")) == parse("G F a"));
  CHECK(fairness_normal_form(parse("F G (G a)")) == parse("F G a"));
  CHECK(fairness_normal_form(parse("G F (G a)")) == parse("F G a"));
  CHECK(fairness_normal_form(parse("F G (X a)")) == parse("F G a"));
  CHECK(fairness_normal_form(parse("G F (X a)")) == parse("G F a"));
}

TEST_CASE("fairness normal form: conjunction and disjunction splits") {
  CHECK(fairness_normal_form(parse("F G (a & b)")) ==
        parse("F G a & F G b"));
  CHECK(fairness_normal_form(parse("G F (a | b)")) ==
        parse("G F a | G F b"));
  // Splits only fire where sound: FG does not distribute over |, GF not
  // over &, for arguments still inside LTL(X).
  CHECK(fairness_normal_form(parse("F G (a | X b)")) == parse("F G (a | X b)"));
  CHECK(fairness_normal_form(parse("G F (a & X b)")) == parse("G F (a & X b)"));
}

TEST_CASE("fairness normal form: extraction of F and G members") {
  CHECK(fairness_normal_form(parse("F G (a | F b)")) ==
        parse("F G a | G F b"));
  CHECK(fairness_normal_form(parse("G F (a & F b)")) ==
        parse("G F a & G F b"));
  CHECK(fairness_normal_form(parse("F G (a | G b)")) ==
        parse("F G a | F G b"));
  CHECK(fairness_normal_form(parse("G F (a & G b)")) ==
        parse("G F a & F G b"));
  // All eventual members are extracted at once.
  CHECK(fairness_normal_form(parse("F G (a | F b | F c)")) ==
        parse("F G a | G F b | G F c"));
  // Residue-free extraction.
  CHECK(fairness_normal_form(parse("F G (F a | G b)")) ==
        parse("G F a | F G b"));
}

TEST_CASE("fairness normal form: nested arguments normalize fully") {
  Formula f = fairness_normal_form(parse("F G ((a | F b) & c)"));
  CHECK(f == parse("(F G a | G F b) & F G c"));
  // An X above an F is commuted inward so extraction can fire.
  CHECK(fairness_normal_form(parse("F G (a | X F b)")) ==
        parse("F G a | G F b"));
  CHECK(fairness_normal_form(parse("G F (a & X G b)")) ==
        parse("G F a & F G b"));
}

TEST_CASE("fairness normal form is idempotent") {
  for (const char* text : {
           "F G (F a)", "G F (a | b)", "F G ((a | F b) & c)",
           "G F (a & F b) | F G (c | G d)", "F G (a | X F b)",
       }) {
    Formula once = fairness_normal_form(parse(text));
    CHECK(fairness_normal_form(once) == once);
  }
}

TEST_CASE("rewrite drives mixed formulas into the fairness fragment") {
  CHECK(rewrite(parse("G F (a U b)")) == parse("G F b"));
  CHECK(rewrite(parse("F G (a U b)")) == parse("G F b & F G (a | b)"));
  CHECK(rewrite(parse("G F (G c)")) == parse("F G c"));
  // Fixpoint: rewriting the result changes nothing.
  Formula r = rewrite(parse("F G ((a U b) | F c)"));
  CHECK(rewrite(r) == r);
}

TEST_CASE("cnf and dnf act on the propositional skeleton") {
  CHECK(to_cnf(parse("(a & b) | c")) == parse("(a | c) & (b | c)"));
  CHECK(to_cnf(parse("(a | c) & (b | c)")) == parse("(a | c) & (b | c)"));
  Formula dnf = to_dnf(parse("(F a | G b) & (F c | G d)"));
  CHECK(dnf == parse("(F a & F c) | (F a & G d) | (G b & F c) | (G b & G d)"));
  CHECK(prop_equiv(dnf, parse("(F a | G b) & (F c | G d)")));
}

TEST_CASE("rewrite keeps formulas outside the fairness fragment intact") {
  CHECK(rewrite(parse("a U b")) == parse("a U b"));
  CHECK(rewrite(parse("G (a R b)")) == simplify(parse("G (a R b)")));
  CHECK(rewrite(parse("G (!c1 | F c2)")) == parse("G (!c1 | F c2)"));
}
