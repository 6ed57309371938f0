// Command-line front end for the LTL-to-deterministic-Emerson-Lei
// translator.  Talks to the library exclusively through its C interface.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "delag.h"

namespace {

// Owning, move-only wrappers over the C handles.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(Handle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
  Handle& operator=(Handle&& o) noexcept {
    if (this != &o) {
      Free(ptr);
      ptr = o.ptr;
      o.ptr = nullptr;
    }
    return *this;
  }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
};

using FormulaHandle = Handle<delag_formula, delag_formula_free>;
using AutomatonHandle = Handle<delag_automaton, delag_automaton_free>;
using StringHandle = Handle<char, delag_string_free>;

struct OptionsHandle {
  delag_options* ptr = nullptr;
  OptionsHandle() : ptr(delag_options_new()) {}
  OptionsHandle(const OptionsHandle&) = delete;
  OptionsHandle& operator=(const OptionsHandle&) = delete;
  ~OptionsHandle() { delag_options_free(ptr); }
};

int exit_code_for(delag_status status) {
  switch (status) {
    case DELAG_OK:
      return 0;
    case DELAG_ERR_SYNTAX:
      return 2;
    case DELAG_ERR_UNSUPPORTED:
      return 3;
    case DELAG_ERR_STATE_BOUND:
      return 4;
    default:
      return 1;
  }
}

[[noreturn]] void fail(delag_status status, const StringHandle& error) {
  std::cerr << "delag: "
            << (error.ptr != nullptr ? error.ptr : "unknown error") << "\n";
  std::exit(exit_code_for(status));
}

struct TranslateFlags {
  bool standard = false;
  bool enhanced = false;
  bool no_global_history = false;
  bool piggyback = false;
  std::string fallback_cmd;
  bool fallback_raw = false;
  int fallback_timeout = 60;
  std::size_t state_bound = 100000;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--standard", standard,
                  "use the plain component product");
    cmd->add_flag("--enhanced", enhanced,
                  "use the enhanced product (default)");
    cmd->add_flag("--no-global-history", no_global_history,
                  "give each fairness component its own history buffer");
    cmd->add_flag("--piggyback", piggyback,
                  "fold eligible (co)safety components into fairness marks");
    cmd->add_option("--fallback-cmd", fallback_cmd,
                    "external translator command, %f is the formula "
                    "(default: $DELAG_FALLBACK_CMD)");
    cmd->add_flag("--fallback-raw", fallback_raw,
                  "substitute %f without shell quoting");
    cmd->add_option("--fallback-timeout", fallback_timeout,
                    "external translator timeout in seconds");
    cmd->add_option("--state-bound", state_bound,
                    "maximum number of automaton states");
  }

  void apply(delag_options* o) const {
    delag_options_set_enhanced(o, standard ? 0 : 1);
    delag_options_set_global_history(o, no_global_history ? 0 : 1);
    delag_options_set_piggyback(o, piggyback ? 1 : 0);
    delag_options_set_state_bound(o, state_bound);
    std::string cmd = fallback_cmd;
    if (cmd.empty()) {
      const char* env = std::getenv("DELAG_FALLBACK_CMD");
      if (env != nullptr) cmd = env;
    }
    delag_options_set_fallback_command(o, cmd.c_str());
    delag_options_set_fallback_raw(o, fallback_raw ? 1 : 0);
    delag_options_set_fallback_timeout(o, fallback_timeout);
  }
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "delag: cannot read " << path << "\n";
    std::exit(1);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FormulaHandle parse_or_exit(const std::string& text) {
  FormulaHandle f;
  StringHandle error;
  delag_status st = delag_parse(text.c_str(), &f.ptr, &error.ptr);
  if (st != DELAG_OK) fail(st, error);
  return f;
}

AutomatonHandle translate_or_exit(const FormulaHandle& f,
                                  const TranslateFlags& flags) {
  OptionsHandle opts;
  flags.apply(opts.ptr);
  AutomatonHandle a;
  StringHandle error;
  delag_status st = delag_translate(f.ptr, opts.ptr, &a.ptr, &error.ptr);
  if (st != DELAG_OK) fail(st, error);
  return a;
}

int cmd_translate(const std::string& formula_text, const std::string& file,
                  const TranslateFlags& flags, bool stats,
                  const std::string& out_path) {
  std::string text = formula_text;
  if (!file.empty()) text = trim(read_file(file));
  FormulaHandle f = parse_or_exit(text);
  AutomatonHandle a = translate_or_exit(f, flags);

  StringHandle hoa;
  if (delag_automaton_to_hoa(a.ptr, &hoa.ptr) != DELAG_OK) {
    std::cerr << "delag: serialization failed\n";
    return 1;
  }
  if (out_path.empty()) {
    std::cout << hoa.ptr;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "delag: cannot write " << out_path << "\n";
      return 1;
    }
    out << hoa.ptr;
  }
  if (stats) {
    std::cerr << "states=" << delag_automaton_state_count(a.ptr)
              << " acc_sets=" << delag_automaton_mark_count(a.ptr)
              << " acc_size=" << delag_automaton_acceptance_size(a.ptr)
              << "\n";
  }
  return 0;
}

int cmd_pattern(const std::string& kind, int n) {
  FormulaHandle f;
  StringHandle error;
  delag_status st = delag_pattern(kind.c_str(), n, &f.ptr, &error.ptr);
  if (st != DELAG_OK) fail(st, error);
  StringHandle text;
  if (delag_formula_print(f.ptr, &text.ptr) != DELAG_OK) {
    std::cerr << "delag: printing failed\n";
    return 1;
  }
  std::cout << text.ptr << "\n";
  return 0;
}

int cmd_check(const std::string& formula_text, const std::string& hoa_path,
              int stem_max, int loop_max, const TranslateFlags& flags) {
  FormulaHandle f = parse_or_exit(formula_text);
  AutomatonHandle a;
  if (hoa_path.empty()) {
    a = translate_or_exit(f, flags);
  } else {
    StringHandle error;
    delag_status st =
        delag_parse_hoa(read_file(hoa_path).c_str(), &a.ptr, &error.ptr);
    if (st != DELAG_OK) fail(st, error);
  }
  int equivalent = 0;
  StringHandle cex;
  StringHandle error;
  delag_status st = delag_check_equivalence(f.ptr, a.ptr, stem_max, loop_max,
                                            &equivalent, &cex.ptr, &error.ptr);
  if (st != DELAG_OK) fail(st, error);
  if (equivalent != 0) {
    std::cout << "equivalent within bounds\n";
    return 0;
  }
  std::cout << "counterexample: " << (cex.ptr != nullptr ? cex.ptr : "?")
            << "\n";
  return 1;
}

int cmd_bench(const std::string& table) {
  const bool history = table == "history";
  const char* kind = history ? "history" : "rabin";
  std::vector<std::size_t> states;
  std::vector<int> acc;
  for (int n = 0; n <= 7; ++n) {
    FormulaHandle f;
    StringHandle error;
    delag_status st = delag_pattern(kind, n, &f.ptr, &error.ptr);
    if (st != DELAG_OK) fail(st, error);
    AutomatonHandle a = translate_or_exit(f, TranslateFlags{});
    states.push_back(delag_automaton_state_count(a.ptr));
    acc.push_back(delag_automaton_acceptance_size(a.ptr));
  }
  auto row = [&](const std::string& label, auto get) {
    std::cout << std::left << std::setw(10) << label << std::right;
    for (int n = 0; n <= 7; ++n) std::cout << std::setw(6) << get(n);
    std::cout << "\n";
  };
  std::cout << "pattern: " << kind << "\n";
  row("n", [](int n) { return n; });
  row("states", [&](int n) { return states[static_cast<std::size_t>(n)]; });
  row("acc-size", [&](int n) { return acc[static_cast<std::size_t>(n)]; });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTL to deterministic Emerson-Lei automata"};
  app.require_subcommand(1);

  // translate
  auto* t = app.add_subcommand("translate", "translate a formula to HOA");
  std::string t_formula;
  std::string t_file;
  bool t_stats = false;
  std::string t_out;
  auto* t_formula_opt = t->add_option("--formula", t_formula, "formula text");
  auto* t_file_opt = t->add_option("--file", t_file, "read the formula from a file");
  t_formula_opt->excludes(t_file_opt);
  TranslateFlags t_flags;
  t_flags.attach(t);
  t->add_flag("--stats", t_stats, "print a states/acceptance summary to stderr");
  t->add_option("-o,--output", t_out, "write HOA here instead of stdout");

  // pattern
  auto* p = app.add_subcommand("pattern", "print a benchmark formula family member");
  std::string p_kind;
  int p_n = 0;
  p->add_option("kind", p_kind, "rabin | streett | history")->required();
  p->add_option("n", p_n, "family index (>= 0)")->required();

  // check
  auto* c = app.add_subcommand(
      "check", "compare a formula against an automaton on bounded lassos");
  std::string c_formula;
  std::string c_hoa;
  int c_stem = 2;
  int c_loop = 3;
  c->add_option("--formula", c_formula, "formula text")->required();
  c->add_option("--hoa", c_hoa,
                "HOA file to compare against (default: own translation)");
  c->add_option("--stem-max", c_stem, "maximum stem length");
  c->add_option("--loop-max", c_loop, "maximum loop length");
  TranslateFlags c_flags;
  c_flags.attach(c);

  // bench
  auto* b = app.add_subcommand("bench", "print a size table for a formula family");
  std::string b_table;
  b->add_option("table", b_table, "rabin-acc | history")
      ->required()
      ->check(CLI::IsMember({"rabin-acc", "history"}));

  CLI11_PARSE(app, argc, argv);

  if (t->parsed()) {
    if (t_formula.empty() && t_file.empty()) {
      std::cerr << "delag: translate needs --formula or --file\n";
      return 2;
    }
    return cmd_translate(t_formula, t_file, t_flags, t_stats, t_out);
  }
  if (p->parsed()) return cmd_pattern(p_kind, p_n);
  if (c->parsed()) return cmd_check(c_formula, c_hoa, c_stem, c_loop, c_flags);
  if (b->parsed()) return cmd_bench(b_table);
  return 1;
}
