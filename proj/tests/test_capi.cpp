#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "delag.h"

namespace {

std::string take_string(char* s) {
  std::string out = s != nullptr ? s : "";
  delag_string_free(s);
  return out;
}

struct Parsed {
  delag_formula* f = nullptr;
  ~Parsed() { delag_formula_free(f); }
};

struct Translated {
  delag_automaton* a = nullptr;
  ~Translated() { delag_automaton_free(a); }
};

}  // namespace

TEST_CASE("parsing and printing through the C interface") {
  Parsed p;
  char* err = nullptr;
  REQUIRE(delag_parse("a -> b", &p.f, &err) == DELAG_OK);
  CHECK(err == nullptr);

  char* text = nullptr;
  REQUIRE(delag_formula_print(p.f, &text) == DELAG_OK);
  CHECK(take_string(text) == "b | !a");

  Parsed bad;
  CHECK(delag_parse("a U", &bad.f, &err) == DELAG_ERR_SYNTAX);
  CHECK(bad.f == nullptr);
  std::string msg = take_string(err);
  CHECK(!msg.empty());

  CHECK(delag_parse(nullptr, &bad.f, nullptr) == DELAG_ERR_INVALID_ARG);
  CHECK(delag_parse("a", nullptr, nullptr) == DELAG_ERR_INVALID_ARG);
}

TEST_CASE("translation, accessors, and HOA round trip") {
  Parsed p;
  REQUIRE(delag_parse("G F a", &p.f, nullptr) == DELAG_OK);

  Translated t;
  char* err = nullptr;
  REQUIRE(delag_translate(p.f, nullptr, &t.a, &err) == DELAG_OK);
  CHECK(delag_automaton_state_count(t.a) == 1);
  CHECK(delag_automaton_mark_count(t.a) == 1);
  CHECK(delag_automaton_acceptance_size(t.a) == 1);

  char* hoa = nullptr;
  REQUIRE(delag_automaton_to_hoa(t.a, &hoa) == DELAG_OK);
  std::string text = take_string(hoa);
  CHECK(text.rfind("HOA: v1", 0) == 0);

  Translated back;
  REQUIRE(delag_parse_hoa(text.c_str(), &back.a, &err) == DELAG_OK);
  CHECK(delag_automaton_state_count(back.a) == 1);
  char* hoa2 = nullptr;
  REQUIRE(delag_automaton_to_hoa(back.a, &hoa2) == DELAG_OK);
  CHECK(take_string(hoa2) == text);

  Translated garbage;
  CHECK(delag_parse_hoa("not an automaton", &garbage.a, &err) ==
        DELAG_ERR_HOA);
  CHECK(!take_string(err).empty());

  CHECK(delag_automaton_state_count(nullptr) == 0);
  CHECK(delag_automaton_mark_count(nullptr) == 0);
  CHECK(delag_automaton_acceptance_size(nullptr) == 0);
}

TEST_CASE("bounded equivalence checking") {
  Parsed gfa;
  REQUIRE(delag_parse("G F a", &gfa.f, nullptr) == DELAG_OK);
  Translated t;
  REQUIRE(delag_translate(gfa.f, nullptr, &t.a, nullptr) == DELAG_OK);

  int equivalent = -1;
  char* cex = nullptr;
  REQUIRE(delag_check_equivalence(gfa.f, t.a, 2, 3, &equivalent, &cex,
                                  nullptr) == DELAG_OK);
  CHECK(equivalent == 1);
  CHECK(cex == nullptr);

  Parsed fga;
  REQUIRE(delag_parse("F G a", &fga.f, nullptr) == DELAG_OK);
  Translated other;
  REQUIRE(delag_translate(fga.f, nullptr, &other.a, nullptr) == DELAG_OK);
  REQUIRE(delag_check_equivalence(gfa.f, other.a, 2, 3, &equivalent, &cex,
                                  nullptr) == DELAG_OK);
  CHECK(equivalent == 0);
  std::string word = take_string(cex);
  CHECK(word.find("loop") != std::string::npos);

  char* err = nullptr;
  CHECK(delag_check_equivalence(gfa.f, t.a, 2, 0, &equivalent, nullptr,
                                &err) == DELAG_ERR_INVALID_ARG);
  CHECK(!take_string(err).empty());
  CHECK(delag_check_equivalence(gfa.f, t.a, 2, 3, nullptr, nullptr, nullptr) ==
        DELAG_ERR_INVALID_ARG);
}

TEST_CASE("pattern formulas through the C interface") {
  Parsed pat;
  char* err = nullptr;
  REQUIRE(delag_pattern("rabin", 1, &pat.f, &err) == DELAG_OK);
  char* text = nullptr;
  REQUIRE(delag_formula_print(pat.f, &text) == DELAG_OK);
  std::string printed = take_string(text);
  CHECK(printed.find("a1") != std::string::npos);
  CHECK(printed.find("b0") != std::string::npos);

  Translated t;
  REQUIRE(delag_translate(pat.f, nullptr, &t.a, &err) == DELAG_OK);
  CHECK(delag_automaton_state_count(t.a) == 1);
  CHECK(delag_automaton_mark_count(t.a) == 4);
  CHECK(delag_automaton_acceptance_size(t.a) == 4);

  Parsed bad;
  CHECK(delag_pattern("buchi", 1, &bad.f, &err) == DELAG_ERR_INVALID_ARG);
  CHECK(take_string(err).find("unknown pattern kind") != std::string::npos);
  CHECK(delag_pattern("rabin", -1, &bad.f, &err) == DELAG_ERR_INVALID_ARG);
  delag_string_free(err);
  CHECK(delag_pattern(nullptr, 1, &bad.f, nullptr) == DELAG_ERR_INVALID_ARG);
}

TEST_CASE("translation errors map to status codes") {
  Parsed p;
  REQUIRE(delag_parse("G (d1 -> F d2)", &p.f, nullptr) == DELAG_OK);

  Translated t;
  char* err = nullptr;
  CHECK(delag_translate(p.f, nullptr, &t.a, &err) == DELAG_ERR_UNSUPPORTED);
  CHECK(take_string(err).find("d1") != std::string::npos);

  delag_options* opts = delag_options_new();
  REQUIRE(opts != nullptr);
  delag_options_set_fallback_command(opts, "false %f");
  CHECK(delag_translate(p.f, opts, &t.a, &err) == DELAG_ERR_FALLBACK);
  CHECK(!take_string(err).empty());
  delag_options_free(opts);

  Parsed reach;
  REQUIRE(delag_parse("F (b1 & F b2)", &reach.f, nullptr) == DELAG_OK);
  delag_options* bounded = delag_options_new();
  delag_options_set_state_bound(bounded, 2);
  CHECK(delag_translate(reach.f, bounded, &t.a, &err) ==
        DELAG_ERR_STATE_BOUND);
  CHECK(!take_string(err).empty());
  delag_options_free(bounded);

  CHECK(delag_translate(nullptr, nullptr, &t.a, nullptr) ==
        DELAG_ERR_INVALID_ARG);
  CHECK(delag_translate(p.f, nullptr, nullptr, nullptr) ==
        DELAG_ERR_INVALID_ARG);
}

TEST_CASE("option toggles keep the language intact") {
  Parsed p;
  REQUIRE(delag_parse("G F a & F b", &p.f, nullptr) == DELAG_OK);

  const int toggles[][3] = {
      // enhanced, global history, piggyback
      {1, 1, 0},
      {0, 0, 0},
      {1, 0, 1},
      {1, 1, 1},
  };
  for (const auto& t : toggles) {
    delag_options* opts = delag_options_new();
    delag_options_set_enhanced(opts, t[0]);
    delag_options_set_global_history(opts, t[1]);
    delag_options_set_piggyback(opts, t[2]);
    Translated out;
    char* err = nullptr;
    REQUIRE(delag_translate(p.f, opts, &out.a, &err) == DELAG_OK);
    int equivalent = 0;
    REQUIRE(delag_check_equivalence(p.f, out.a, 2, 3, &equivalent, nullptr,
                                    nullptr) == DELAG_OK);
    CHECK(equivalent == 1);
    delag_options_free(opts);
  }

  // Null handles are ignored by the setters and releases.
  delag_options_set_enhanced(nullptr, 1);
  delag_options_free(nullptr);
  delag_formula_free(nullptr);
  delag_automaton_free(nullptr);
  delag_string_free(nullptr);
}
