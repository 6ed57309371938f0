#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "delag/formula.hpp"

using namespace delag;

TEST_CASE("parsing produces negation normal form") {
  CHECK(parse("!(a U b)") == Formula::release(Formula::natom("a"),
                                              Formula::natom("b")));
  CHECK(parse("!(a & b)") ==
        Formula::disj({Formula::natom("a"), Formula::natom("b")}));
  CHECK(parse("!X a") == Formula::next(Formula::natom("a")));
  CHECK(parse("!F a") == parse("G !a"));
  CHECK(parse("!G a") == parse("F !a"));
  CHECK(parse("!!a") == Formula::atom("a"));
}

TEST_CASE("derived operators expand") {
  CHECK(parse("a -> b") == parse("!a | b"));
  CHECK(parse("a <-> b") == parse("(a & b) | (!a & !b)"));
  CHECK(parse("F a") == Formula::until(Formula::tt(), Formula::atom("a")));
  CHECK(parse("G a") == Formula::release(Formula::ff(), Formula::atom("a")));
  CHECK(parse("true") == Formula::tt());
  CHECK(parse("tt") == Formula::tt());
  CHECK(parse("1") == Formula::tt());
  CHECK(parse("false") == Formula::ff());
  CHECK(parse("ff") == Formula::ff());
  CHECK(parse("0") == Formula::ff());
}

TEST_CASE("precedence and associativity") {
  CHECK(parse("a | b & c") == parse("a | (b & c)"));
  CHECK(parse("X a U b") == parse("(X a) U b"));
  CHECK(parse("a U b U c") == parse("a U (b U c)"));
  CHECK(parse("a U b | c") == parse("(a U b) | c"));
  CHECK(parse("a -> b -> c") == parse("a -> (b -> c)"));
}

TEST_CASE("boolean children are flattened, deduplicated, and sorted") {
  CHECK(parse("b & a & b") == parse("a & b"));
  CHECK(parse("(a & b) & c") == parse("a & (b & c)"));
  CHECK(parse("a | a") == Formula::atom("a"));
  CHECK(to_string(parse("b & a")) == to_string(parse("a & b")));
}

TEST_CASE("constructor-level constant folding") {
  Formula a = Formula::atom("a");
  CHECK(Formula::until(a, Formula::tt()) == Formula::tt());
  CHECK(Formula::until(a, Formula::ff()) == Formula::ff());
  CHECK(Formula::until(Formula::ff(), a) == a);
  CHECK(Formula::until(a, a) == a);
  CHECK(Formula::release(a, Formula::tt()) == Formula::tt());
  CHECK(Formula::release(Formula::tt(), a) == a);
  CHECK(Formula::next(Formula::tt()) == Formula::tt());
  CHECK(Formula::next(Formula::ff()) == Formula::ff());
  CHECK(Formula::conj({a, Formula::ff()}) == Formula::ff());
  CHECK(Formula::disj({a, Formula::tt()}) == Formula::tt());
}

TEST_CASE("printing round-trips") {
  for (const char* text : {
           "a", "!a", "a & b", "a | (b & X c)", "a U (b R c)", "F (a & F b)",
           "G (!a | F b)", "G F (a & X b)", "F G a | G F b",
           "X X (a U (b & !c))",
       }) {
    Formula f = parse(text);
    CHECK(parse(to_string(f)) == f);
  }
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse("a &"), parse_error);
  CHECK_THROWS_AS(parse("(a"), parse_error);
  CHECK_THROWS_AS(parse("a b"), parse_error);
  CHECK_THROWS_AS(parse(""), parse_error);
  CHECK_THROWS_AS(parse("U a"), parse_error);
}

TEST_CASE("fragment classification") {
  CHECK(classify(parse("a")) == Fragment::Cosafety);
  CHECK(classify(parse("!a")) == Fragment::Cosafety);
  CHECK(classify(parse("F (a & F b)")) == Fragment::Cosafety);
  CHECK(classify(parse("a U b")) == Fragment::Cosafety);
  CHECK(classify(parse("G a")) == Fragment::Safety);
  CHECK(classify(parse("a R b")) == Fragment::Safety);
  CHECK(classify(parse("G F a")) == Fragment::FairnessGF);
  CHECK(classify(parse("F G (a & X b)")) == Fragment::FairnessFG);
  CHECK(classify(parse("G F a & F G b")) == Fragment::FairnessBoolean);
  CHECK(classify(parse("G F a | F G (a | X b)")) == Fragment::FairnessBoolean);
  CHECK(classify(parse("G (!a | F b)")) == Fragment::Unsupported);
  CHECK(classify(parse("G F (a U b)")) == Fragment::Unsupported);
}

TEST_CASE("gf and fg core recognizers") {
  CHECK(*parse("G F a").gf_core() == Formula::atom("a"));
  CHECK(!parse("G F a").fg_core().has_value());
  CHECK(*parse("F G (a | X b)").fg_core() == parse("a | X b"));
  CHECK(!parse("F a").gf_core().has_value());
  CHECK(!parse("G a").gf_core().has_value());
}

TEST_CASE("skeleton leaves come in first-occurrence depth-first order") {
  Formula f = parse("F b | (G F a & F b)");
  auto leaves = skeleton_leaves(f);
  REQUIRE(leaves.size() == 2);
  // Shared F b maps to one leaf.
  CHECK(((leaves[0] == parse("F b") && leaves[1] == parse("G F a")) ||
         (leaves[0] == parse("G F a") && leaves[1] == parse("F b"))));

  auto lit = skeleton_leaves(parse("a & F b"));
  REQUIRE(lit.size() == 2);
  CHECK(std::find(lit.begin(), lit.end(), Formula::atom("a")) != lit.end());
}

TEST_CASE("conjunct and disjunct sets") {
  Formula f = parse("(G F a & F b) | G c");
  auto cs = conjunct_sets(f);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].size() == 2);
  auto ds = disjunct_sets(f);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].size() == 2);
}

TEST_CASE("propositional support and equivalence") {
  CHECK(support(parse("a | !a")).empty());
  auto s = support(parse("a & F b"));
  CHECK(s.size() == 2);
  CHECK(prop_equiv(parse("a | !a"), parse("true")));
  CHECK(prop_equiv(parse("F a | F a"), parse("F a")));
  CHECK(!prop_equiv(parse("F a | F (b & F a)"), parse("F a")));
  CHECK(!prop_equiv(parse("F a"), parse("F b")));
}

TEST_CASE("substitute replaces subtrees and re-canonicalizes") {
  Formula f = parse("(F a & b) | F a");
  Formula g = substitute(f, {parse("F a")}, Formula::tt());
  CHECK(g == Formula::tt());
  Formula h = substitute(f, {parse("F a")}, Formula::ff());
  CHECK(h == Formula::ff());
}

TEST_CASE("atoms are collected sorted and unique") {
  auto names = atoms(parse("b1 & F (a1 | X b1)"));
  REQUIRE(names.size() == 2);
  CHECK(names[0] == "a1");
  CHECK(names[1] == "b1");
}

TEST_CASE("ltl fragment flags") {
  CHECK(parse("a U (X b)").in_ltl_ux());
  CHECK(!parse("a U (X b)").in_ltl_rx());
  CHECK(parse("X (a & b)").in_ltl_x());
  CHECK(!parse("F a").in_ltl_x());
}
