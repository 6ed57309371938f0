#include "delag.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "delag/fallback.hpp"
#include "delag/formula.hpp"
#include "delag/hoa.hpp"
#include "delag/oracle.hpp"
#include "delag/patterns.hpp"
#include "delag/product.hpp"
#include "delag/safety.hpp"
#include "delag/tela.hpp"

struct delag_formula {
  delag::Formula f;
};

struct delag_automaton {
  delag::Tela a;
};

struct delag_options {
  delag::TranslateOptions o;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) {
    std::memcpy(out, s.c_str(), s.size() + 1);
  }
  return out;
}

void set_error(char** error, const std::string& message) {
  if (error != nullptr) *error = dup_string(message);
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
delag_status guarded(char** error, Fn&& fn) {
  try {
    return fn();
  } catch (const delag::parse_error& e) {
    set_error(error, e.what());
    return DELAG_ERR_SYNTAX;
  } catch (const delag::unsupported_error& e) {
    set_error(error, e.what());
    return DELAG_ERR_UNSUPPORTED;
  } catch (const delag::bound_error& e) {
    set_error(error, e.what());
    return DELAG_ERR_STATE_BOUND;
  } catch (const delag::fallback_error& e) {
    set_error(error, e.what());
    return DELAG_ERR_FALLBACK;
  } catch (const delag::hoa_error& e) {
    set_error(error, e.what());
    return DELAG_ERR_HOA;
  } catch (const std::invalid_argument& e) {
    set_error(error, e.what());
    return DELAG_ERR_INVALID_ARG;
  } catch (const std::exception& e) {
    set_error(error, e.what());
    return DELAG_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

delag_status delag_parse(const char* text, delag_formula** out, char** error) {
  if (text == nullptr || out == nullptr) {
    set_error(error, "null argument");
    return DELAG_ERR_INVALID_ARG;
  }
  return guarded(error, [&] {
    *out = new delag_formula{delag::parse(text)};
    return DELAG_OK;
  });
}

delag_status delag_formula_print(const delag_formula* f, char** out) {
  if (f == nullptr || out == nullptr) return DELAG_ERR_INVALID_ARG;
  return guarded(nullptr, [&] {
    *out = dup_string(delag::to_string(f->f));
    return *out != nullptr ? DELAG_OK : DELAG_ERR_INTERNAL;
  });
}

delag_status delag_pattern(const char* kind, int n, delag_formula** out,
                           char** error) {
  if (kind == nullptr || out == nullptr) {
    set_error(error, "null argument");
    return DELAG_ERR_INVALID_ARG;
  }
  return guarded(error, [&]() -> delag_status {
    std::string k = kind;
    delag::Formula f;
    if (k == "rabin") {
      f = delag::rabin_pattern(n);
    } else if (k == "streett") {
      f = delag::streett_pattern(n);
    } else if (k == "history") {
      f = delag::history_pattern(n);
    } else {
      set_error(error, "unknown pattern kind: " + k);
      return DELAG_ERR_INVALID_ARG;
    }
    *out = new delag_formula{f};
    return DELAG_OK;
  });
}

void delag_formula_free(delag_formula* f) { delete f; }

delag_options* delag_options_new(void) {
  return new (std::nothrow) delag_options{};
}

void delag_options_free(delag_options* o) { delete o; }

void delag_options_set_enhanced(delag_options* o, int enabled) {
  if (o != nullptr) o->o.enhanced = enabled != 0;
}

void delag_options_set_global_history(delag_options* o, int enabled) {
  if (o != nullptr) o->o.global_history = enabled != 0;
}

void delag_options_set_piggyback(delag_options* o, int enabled) {
  if (o != nullptr) o->o.piggyback = enabled != 0;
}

void delag_options_set_state_bound(delag_options* o, size_t bound) {
  if (o != nullptr) o->o.state_bound = bound;
}

void delag_options_set_fallback_command(delag_options* o, const char* tmpl) {
  if (o != nullptr) o->o.fallback_command = tmpl != nullptr ? tmpl : "";
}

void delag_options_set_fallback_raw(delag_options* o, int raw) {
  if (o != nullptr) o->o.fallback_raw_substitution = raw != 0;
}

void delag_options_set_fallback_timeout(delag_options* o, int seconds) {
  if (o != nullptr) o->o.fallback_timeout_seconds = seconds;
}

delag_status delag_translate(const delag_formula* f, const delag_options* o,
                             delag_automaton** out, char** error) {
  if (f == nullptr || out == nullptr) {
    set_error(error, "null argument");
    return DELAG_ERR_INVALID_ARG;
  }
  return guarded(error, [&] {
    delag::TranslateOptions opts = o != nullptr ? o->o : delag::TranslateOptions{};
    *out = new delag_automaton{delag::translate(f->f, opts)};
    return DELAG_OK;
  });
}

delag_status delag_parse_hoa(const char* text, delag_automaton** out,
                             char** error) {
  if (text == nullptr || out == nullptr) {
    set_error(error, "null argument");
    return DELAG_ERR_INVALID_ARG;
  }
  return guarded(error, [&] {
    *out = new delag_automaton{delag::parse_hoa(text)};
    return DELAG_OK;
  });
}

delag_status delag_automaton_to_hoa(const delag_automaton* a, char** out) {
  if (a == nullptr || out == nullptr) return DELAG_ERR_INVALID_ARG;
  return guarded(nullptr, [&] {
    *out = dup_string(delag::serialize_hoa(a->a));
    return *out != nullptr ? DELAG_OK : DELAG_ERR_INTERNAL;
  });
}

size_t delag_automaton_state_count(const delag_automaton* a) {
  return a != nullptr ? a->a.state_count() : 0;
}

int delag_automaton_mark_count(const delag_automaton* a) {
  return a != nullptr ? a->a.mark_count : 0;
}

int delag_automaton_acceptance_size(const delag_automaton* a) {
  return a != nullptr ? delag::acceptance_size(a->a) : 0;
}

void delag_automaton_free(delag_automaton* a) { delete a; }

delag_status delag_check_equivalence(const delag_formula* f,
                                     const delag_automaton* a, int stem_max,
                                     int loop_max, int* equivalent,
                                     char** counterexample, char** error) {
  if (f == nullptr || a == nullptr || equivalent == nullptr) {
    set_error(error, "null argument");
    return DELAG_ERR_INVALID_ARG;
  }
  if (stem_max < 0 || loop_max < 1) {
    set_error(error, "bounds must satisfy stem_max >= 0 and loop_max >= 1");
    return DELAG_ERR_INVALID_ARG;
  }
  return guarded(error, [&] {
    delag::LassoBounds bounds;
    bounds.stem_max = stem_max;
    bounds.loop_max = loop_max;
    auto cex = delag::equiv_on_lassos(f->f, a->a, bounds);
    *equivalent = cex.has_value() ? 0 : 1;
    if (cex.has_value() && counterexample != nullptr) {
      *counterexample = dup_string(delag::to_string(*cex));
    }
    return DELAG_OK;
  });
}

void delag_string_free(char* s) { std::free(s); }

}  // extern "C"
