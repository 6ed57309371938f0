#ifndef DELAG_H
#define DELAG_H

/* C interface to the LTL-to-deterministic-Emerson-Lei translator.
 *
 * All objects are opaque handles created and destroyed by this library.
 * Functions returning delag_status set their outputs only on DELAG_OK and,
 * when an error out-parameter is supplied, store a malloc'd description the
 * caller releases with delag_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum delag_status {
  DELAG_OK = 0,
  DELAG_ERR_SYNTAX = 1,      /* formula text could not be parsed */
  DELAG_ERR_UNSUPPORTED = 2, /* subformula needs an external translator */
  DELAG_ERR_STATE_BOUND = 3, /* state bound or alphabet limit exceeded */
  DELAG_ERR_FALLBACK = 4,    /* external translator failed */
  DELAG_ERR_HOA = 5,         /* automaton text could not be ingested */
  DELAG_ERR_INVALID_ARG = 6,
  DELAG_ERR_INTERNAL = 7,
} delag_status;

typedef struct delag_formula delag_formula;
typedef struct delag_automaton delag_automaton;
typedef struct delag_options delag_options;

/* ------------------------------------------------------------------ */
/* Formulas                                                            */

delag_status delag_parse(const char* text, delag_formula** out, char** error);
delag_status delag_formula_print(const delag_formula* f, char** out);

/* kind is "rabin", "streett", or "history"; n >= 0. */
delag_status delag_pattern(const char* kind, int n, delag_formula** out,
                           char** error);

void delag_formula_free(delag_formula* f);

/* ------------------------------------------------------------------ */
/* Translation options                                                 */

delag_options* delag_options_new(void);
void delag_options_free(delag_options* o);
void delag_options_set_enhanced(delag_options* o, int enabled);
void delag_options_set_global_history(delag_options* o, int enabled);
void delag_options_set_piggyback(delag_options* o, int enabled);
void delag_options_set_state_bound(delag_options* o, size_t bound);
void delag_options_set_fallback_command(delag_options* o, const char* tmpl);
void delag_options_set_fallback_raw(delag_options* o, int raw);
void delag_options_set_fallback_timeout(delag_options* o, int seconds);

/* ------------------------------------------------------------------ */
/* Translation and automata                                            */

/* options may be NULL for the defaults (enhanced product with a shared
 * history buffer, no piggybacking, state bound 100000, no fallback). */
delag_status delag_translate(const delag_formula* f, const delag_options* o,
                             delag_automaton** out, char** error);

delag_status delag_parse_hoa(const char* text, delag_automaton** out,
                             char** error);
delag_status delag_automaton_to_hoa(const delag_automaton* a, char** out);

size_t delag_automaton_state_count(const delag_automaton* a);
int delag_automaton_mark_count(const delag_automaton* a);
int delag_automaton_acceptance_size(const delag_automaton* a);

void delag_automaton_free(delag_automaton* a);

/* ------------------------------------------------------------------ */
/* Bounded language comparison                                         */

/* Compares the formula's language with the automaton's on every ultimately
 * periodic word with stem length <= stem_max and loop length in
 * [1, loop_max] (exhaustively for small alphabets, sampling otherwise).
 * On DELAG_OK, *equivalent is 1 or 0; when 0 and counterexample is
 * non-NULL it receives a malloc'd rendering of a separating word. */
delag_status delag_check_equivalence(const delag_formula* f,
                                     const delag_automaton* a, int stem_max,
                                     int loop_max, int* equivalent,
                                     char** counterexample, char** error);

void delag_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* DELAG_H */
