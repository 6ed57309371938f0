#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <string>

#include "delag/fallback.hpp"
#include "delag/formula.hpp"
#include "delag/oracle.hpp"
#include "delag/tela.hpp"

using namespace delag;

namespace {

FallbackOptions stub_options() {
  FallbackOptions opts;
  opts.command_template = std::string(STUB_TRANSLATOR_PATH) + " %f";
  return opts;
}

std::string failure_message(const std::function<void()>& run) {
  try {
    run();
  } catch (const fallback_error& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("external translator output is ingested faithfully") {
  Tela a = translate_external(parse("G (c1 -> F c2)"), stub_options());
  CHECK(a.state_count() == 2);
  CHECK(a.ap == std::vector<std::string>{"c1", "c2"});
  CHECK(a.mark_count == 1);
  CHECK(a.acceptance == Acceptance::inf(0));
  CHECK(!equiv_on_lassos(parse("G (c1 -> F c2)"), a).has_value());
  // And it really is the request/response language, not something weaker.
  CHECK(equiv_on_lassos(parse("G F c2"), a).has_value());
}

TEST_CASE("state-based marks and unknown headers are handled") {
  Tela a = translate_external(parse("G (d1 -> F d2)"), stub_options());
  CHECK(a.state_count() == 2);
  CHECK(a.mark_count == 1);
  CHECK(!equiv_on_lassos(parse("G (d1 -> F d2)"), a).has_value());
}

TEST_CASE("partial output is completed with a rejecting sink") {
  Tela a = translate_external(parse("F p_partial"), stub_options());
  REQUIRE(a.state_count() == 2);
  CHECK(a.ap == std::vector<std::string>{"x"});
  CHECK(a.mark_count == 1);
  // Letter 0 (!x) had no edge: it now enters the unmarked sink.
  CHECK(a.edges[0][0] == Edge{1, 0});
  CHECK(a.edges[0][1] == Edge{0, 1});
  CHECK(a.edges[1][0] == Edge{1, 0});
  CHECK(a.edges[1][1] == Edge{1, 0});
  CHECK(!equiv_on_lassos(parse("G x"), a).has_value());
}

TEST_CASE("unrecognized formulas get the trivial universal automaton") {
  Tela a = translate_external(parse("q1 U q2"), stub_options());
  CHECK(a.state_count() == 1);
  CHECK(a.ap.empty());
  CHECK(a.mark_count == 0);
  CHECK(a.acceptance == Acceptance::tt());
  CHECK(!equiv_on_lassos(parse("true"), a).has_value());
}

TEST_CASE("nondeterministic output is rejected") {
  std::string msg = failure_message(
      [] { translate_external(parse("F p_nondet"), stub_options()); });
  CHECK(contains(msg, "rejected"));
  CHECK(contains(msg, "nondeterministic"));
}

TEST_CASE("nonzero exit is reported with the tool's first stderr line") {
  std::string msg = failure_message(
      [] { translate_external(parse("F p_fail"), stub_options()); });
  CHECK(contains(msg, "exit 1"));
  CHECK(contains(msg, "stderr"));
  CHECK(contains(msg, "cannot translate"));
}

TEST_CASE("slow translators hit the timeout") {
  FallbackOptions opts = stub_options();
  opts.timeout_seconds = 1;
  std::string msg = failure_message(
      [&] { translate_external(parse("F p_slow"), opts); });
  CHECK(contains(msg, "timed out"));
  CHECK(contains(msg, "1 s"));
}

TEST_CASE("command template validation") {
  FallbackOptions no_placeholder;
  no_placeholder.command_template = STUB_TRANSLATOR_PATH;
  std::string msg = failure_message(
      [&] { translate_external(parse("F a"), no_placeholder); });
  CHECK(contains(msg, "%f"));

  FallbackOptions empty;
  std::string msg2 =
      failure_message([&] { translate_external(parse("F a"), empty); });
  CHECK(contains(msg2, "no fallback command"));
}

TEST_CASE("formula quoting for the shell") {
  // Quoted (default): the whole formula reaches the tool as one argument,
  // shell metacharacters included.
  Tela a =
      translate_external(parse("a & no_such_command_zz"), stub_options());
  CHECK(a.state_count() == 1);
  CHECK(a.acceptance == Acceptance::tt());

  // Raw substitution hands "&" to the shell, which then fails to find the
  // second "command".
  FallbackOptions raw = stub_options();
  raw.raw_substitution = true;
  std::string msg = failure_message(
      [&] { translate_external(parse("a & no_such_command_zz"), raw); });
  CHECK(contains(msg, "exit 127"));

  // Raw substitution itself is fine for shell-safe formulas.
  Tela b = translate_external(parse("F p_partial"), raw);
  CHECK(b.state_count() == 2);
}
