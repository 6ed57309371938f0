#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "delag/formula.hpp"
#include "delag/oracle.hpp"
#include "delag/product.hpp"
#include "delag/rewrite.hpp"
#include "delag/safety.hpp"

#include <algorithm>
#include <string>

using namespace delag;

namespace {

Tela tr(const std::string& f, TranslateOptions opts = {},
        TranslateDetails* details = nullptr) {
  return translate(parse(f), opts, details);
}

bool language_matches(const std::string& f, const Tela& t) {
  return !equiv_on_lassos(parse(f), t).has_value();
}

TranslateOptions standard() {
  TranslateOptions o;
  o.enhanced = false;
  o.global_history = false;
  return o;
}

}  // namespace

TEST_CASE("waiting fairness and resolved reach goals compose tightly") {
  const std::string f = "G F (a1 & X a2) & F (b1 & F b2)";
  TranslateDetails d;
  Tela t = tr(f, {}, &d);
  CHECK(t.state_count() == 4);
  CHECK(t.mark_count == 2);
  CHECK(acceptance_size(t) == 2);
  CHECK(language_matches(f, t));

  REQUIRE(d.components.size() == 2);
  CHECK(d.components[0] == parse("F (b1 & F b2)"));
  CHECK(d.components[1] == parse("G F (a1 & X a2)"));
  CHECK(d.fragments[0] == Fragment::Cosafety);
  CHECK(d.fragments[1] == Fragment::FairnessGF);

  // The fairness component waits exactly while the reach component runs.
  REQUIRE(d.state_comp.size() == 4);
  bool saw_loaded_buffer = false;
  for (std::size_t s = 0; s < d.state_comp.size(); ++s) {
    const std::vector<int>& comp = d.state_comp[s];
    CHECK((comp[1] == kCompHold) == (comp[0] >= 0));
    if (comp[0] == kCompAcc) CHECK(comp[1] == kCompLive);
    REQUIRE(d.state_buffer[s].size() == 1);
    if (comp[0] >= 0) {
      CHECK(d.state_buffer[s][0] == 0); // nothing buffered while waiting
    }
    if (d.state_buffer[s][0] != 0) {
      CHECK(d.state_buffer[s][0] == 1); // only a1 is ever remembered
      saw_loaded_buffer = true;
    }
  }
  CHECK(saw_loaded_buffer);
}

TEST_CASE("the standard product accepts the same languages") {
  for (const char* f : {
           "G F (a & X b) & F (a & b)",
           "F G a | G b",
           "G F a & F G b",
           "(F a & G b) | F G (a & X b)",
           "G F (a & X a) | (b U a)",
       }) {
    Tela enh = tr(f);
    Tela std_ = tr(f, standard());
    INFO(f);
    CHECK(!telas_equiv_on_lassos(enh, std_).has_value());
    CHECK(language_matches(f, enh));
    CHECK(language_matches(f, std_));
  }
}

TEST_CASE("global history can be disabled without changing the language") {
  TranslateOptions no_gh;
  no_gh.global_history = false;
  for (const char* f : {
           "G F (a & X b) & G F (b & X a)",
           "F G (a & X b) | G F b",
           "G F (a & X b) & F (a & b)",
       }) {
    Tela on = tr(f);
    Tela off = tr(f, no_gh);
    INFO(f);
    CHECK(!telas_equiv_on_lassos(on, off).has_value());
    CHECK(on.state_count() <= off.state_count());
  }
}

TEST_CASE("irrelevant components are silenced") {
  TranslateDetails d;
  Tela t = tr("F a | F b", {}, &d);
  CHECK(language_matches("F a | F b", t));
  bool saw_first_won = false;
  bool saw_second_won = false;
  for (const std::vector<int>& comp : d.state_comp) {
    if (comp[0] == kCompAcc && comp[1] == kCompRej) saw_first_won = true;
    if (comp[0] == kCompRej && comp[1] == kCompAcc) saw_second_won = true;
  }
  CHECK(saw_first_won);
  CHECK(saw_second_won);
}

TEST_CASE("held fairness is released when a disjoined safety dies") {
  TranslateDetails d;
  Tela t = tr("F G a | G b", {}, &d);
  CHECK(language_matches("F G a | G b", t));
  REQUIRE(d.components.size() == 2);
  CHECK(d.fragments[0] == Fragment::FairnessFG);
  CHECK(d.fragments[1] == Fragment::Safety);
  CHECK(d.state_comp[0][0] == kCompHold);
  CHECK(d.state_comp[0][1] >= 0);
  bool saw_release = false;
  for (const std::vector<int>& comp : d.state_comp) {
    // Waiting ends exactly when the safety component dies.
    CHECK((comp[0] == kCompLive) == (comp[1] == kCompRej));
    saw_release |= comp[0] == kCompLive;
  }
  CHECK(saw_release);
}

TEST_CASE("piggybacking folds reach goals into fairness marks") {
  struct Case {
    const char* f;
    int plain_acc;
  };
  for (const Case& c : {Case{"F G a & F b", 2}, Case{"G F a & F b", 2},
                        Case{"F G a | G b", 2}, Case{"G F a | G b", 2}}) {
    TranslateOptions pb;
    pb.piggyback = true;
    Tela without = tr(c.f);
    Tela with = tr(c.f, pb);
    INFO(c.f);
    CHECK(acceptance_size(without) == c.plain_acc);
    CHECK(acceptance_size(with) == 1);
    CHECK(with.mark_count == 1);
    CHECK(!telas_equiv_on_lassos(with, without).has_value());
    CHECK(language_matches(c.f, with));
  }
}

TEST_CASE("piggybacking composes with the standard product") {
  TranslateOptions pb = standard();
  pb.piggyback = true;
  for (const char* f : {"F G a & F b", "G F a | G b"}) {
    Tela t = tr(f, pb);
    INFO(f);
    CHECK(acceptance_size(t) == 1);
    CHECK(language_matches(f, t));
  }
}

TEST_CASE("piggybacking skips repeated leaves") {
  // b U a occurs twice in the skeleton, so folding it into either fairness
  // mark would be unsound; the translation must keep it a real component.
  const std::string f = "(G F a & (b U a)) | (F G b & (b U a))";
  TranslateOptions pb;
  pb.piggyback = true;
  Tela t = tr(f, pb);
  CHECK(language_matches(f, t));
}

TEST_CASE("details expose the mark layout") {
  TranslateDetails d;
  tr("G F a & F b", {}, &d);
  REQUIRE(d.mark_base.size() == 2);
  CHECK(d.mark_base[0] == 0);
  CHECK(d.mark_base[1] == 1);

  TranslateOptions pb;
  pb.piggyback = true;
  TranslateDetails dp;
  tr("G F a & F b", pb, &dp);
  REQUIRE(dp.mark_base.size() == 2);
  CHECK(dp.mark_base[0] == -1); // folded away
  CHECK(dp.mark_base[1] == 0);  // compacted down
}

TEST_CASE("single literals and plain reach formulas translate directly") {
  Tela a = tr("a");
  CHECK(a.state_count() == 3);
  CHECK(language_matches("a", a));

  Tela u = tr("a U b");
  CHECK(language_matches("a U b", u));

  Tela r = tr("a R b");
  CHECK(language_matches("a R b", r));
}

TEST_CASE("constants collapse to one state") {
  // The acceptance condition keeps its skeleton shape, but the language must
  // be the constant one and the product must not blow up the state space.
  Tela t = tr("a | !a | F b");
  CHECK(t.state_count() == 1);
  CHECK(language_matches("true", t));

  Tela f = tr("a & !a");
  CHECK(f.state_count() == 1);
  CHECK(language_matches("false", f));
}

TEST_CASE("complementary literal pairs settle consistently") {
  // A pruned pair must never be judged at the all-false valuation no run can
  // produce: the positive side settles accepting, the negated side rejecting.
  TranslateDetails d;
  Tela g = tr("(a | !a) & F b", {}, &d);
  REQUIRE(d.components.size() == 3);
  REQUIRE(d.components[0] == parse("a"));
  REQUIRE(d.components[1] == parse("!a"));
  CHECK(d.state_comp[0][0] == kCompAcc);
  CHECK(d.state_comp[0][1] == kCompRej);
  CHECK(language_matches("F b", g));

  Tela h = tr("(a & !a) | G b");
  CHECK(language_matches("G b", h));

  Tela two = tr("(a | !a) & (b | !b)");
  CHECK(two.state_count() == 1);
  CHECK(language_matches("true", two));
}

TEST_CASE("rewriting happens before composition") {
  TranslateDetails d;
  // G F F φ is not directly translatable; the rewrite collapses it.
  Tela t = tr("X F a & G F F (b & X b)", {}, &d);
  CHECK(language_matches("X F a & G F F (b & X b)", t));
  CHECK(d.rewritten == parse("X F a & G F (b & X b)"));
}

TEST_CASE("unsupported subformulas name the culprit") {
  try {
    tr("G (d1 -> F d2)");
    FAIL("expected unsupported_error");
  } catch (const unsupported_error& e) {
    CHECK(e.subformula() == rewrite(parse("G (d1 -> F d2)")));
    CHECK(std::string(e.what()).find("d1") != std::string::npos);
  }

  // Inside a product the same leaf is still the culprit.
  CHECK_THROWS_AS(tr("F a & G (d1 -> F d2)"), unsupported_error);
}

TEST_CASE("external translations participate in products") {
  TranslateOptions opts;
  opts.fallback_command = std::string(STUB_TRANSLATOR_PATH) + " %f";
  TranslateDetails d;
  const std::string f = "G (c1 -> F c2) & F b";
  Tela t = translate(parse(f), opts, &d);
  CHECK(language_matches(f, t));
  REQUIRE(d.fragments.size() == 2);
  CHECK(std::count(d.fragments.begin(), d.fragments.end(),
                   Fragment::Unsupported) == 1);
  // External component states are never replaced by sentinels.
  for (const std::vector<int>& comp : d.state_comp) {
    bool any_external_sentinel = false;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (d.fragments[i] == Fragment::Unsupported && comp[i] < 0) {
        any_external_sentinel = true;
      }
    }
    CHECK(!any_external_sentinel);
  }
}

TEST_CASE("state bounds abort oversized compositions") {
  TranslateOptions tight;
  tight.state_bound = 2;
  CHECK_THROWS_AS(tr("F (b1 & F b2)", tight), bound_error);
}

TEST_CASE("fairness disjunction needs one state") {
  TranslateDetails d;
  Tela t = tr("G F a | F G b", {}, &d);
  CHECK(t.state_count() == 1);
  CHECK(t.mark_count == 2);
  CHECK(language_matches("G F a | F G b", t));
  CHECK(t.acceptance.named_class(2) == "Streett 1");
}
