#ifndef PRESTAR_H
#define PRESTAR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum PrestarStatus {
  PRESTAR_STATUS_OK = 0,
  PRESTAR_STATUS_NULL_POINTER = 1,
  PRESTAR_STATUS_INVALID_UTF8 = 2,
  /**
   * Grammar or automaton text is malformed.
   */
  PRESTAR_STATUS_SYNTAX = 3,
  /**
   * A name is unknown, or not of the expected kind.
   */
  PRESTAR_STATUS_UNKNOWN_SYMBOL = 4,
  PRESTAR_STATUS_NOT_IN_LANGUAGE = 5,
  /**
   * Determinization exceeded its state limit.
   */
  PRESTAR_STATUS_RESOURCE_LIMIT = 6,
  PRESTAR_STATUS_INTERNAL = 7,
} PrestarStatus;

/**
 * An automaton text checked against a grammar; labels are resolved again
 * for each use since saturation and containment need different tables.
 */
typedef struct PrestarAutomaton PrestarAutomaton;

/**
 * A parsed grammar.
 */
typedef struct PrestarGrammar PrestarGrammar;

/**
 * A saturated automaton together with the symbol names it uses.
 */
typedef struct PrestarSaturated PrestarSaturated;

/**
 * Saturation counters.
 */
typedef struct PrestarCounters {
  uint64_t pops;
  uint64_t unit_fires;
  uint64_t binary_fires;
  uint64_t adds;
} PrestarCounters;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into this library from the same thread.
 */
const char *prestar_last_error(void);

/**
 * Library version as a static string.
 */
const char *prestar_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void prestar_string_free(char *s);

/**
 * Parses grammar text.
 *
 * # Safety
 * `source` must be a nul-terminated string; `out` must be writable.
 */
enum PrestarStatus prestar_grammar_parse(const char *source, struct PrestarGrammar **out);

/**
 * # Safety
 * `g` must come from [`prestar_grammar_parse`] and not have been freed.
 */
void prestar_grammar_free(struct PrestarGrammar *g);

/**
 * Replaces the start symbol.
 *
 * # Safety
 * `g` must be a live grammar handle; `name` a nul-terminated string.
 */
enum PrestarStatus prestar_grammar_set_start(struct PrestarGrammar *g, const char *name);

/**
 * The grammar in its text format.
 *
 * # Safety
 * `g` must be a live grammar handle; `out` must be writable.
 */
enum PrestarStatus prestar_grammar_render(const struct PrestarGrammar *g, char **out);

/**
 * Whether the whitespace-separated `word` is in the language.
 *
 * # Safety
 * `g` must be a live grammar handle, `word` a nul-terminated string and
 * `out` writable.
 */
enum PrestarStatus prestar_member(const struct PrestarGrammar *g, const char *word, bool *out);

/**
 * An indented derivation of `word`, or `NotInLanguage`.
 *
 * # Safety
 * As for [`prestar_member`].
 */
enum PrestarStatus prestar_parse(const struct PrestarGrammar *g, const char *word, char **out);

/**
 * # Safety
 * `g` must be a live grammar handle; `out` must be writable.
 */
enum PrestarStatus prestar_is_empty(const struct PrestarGrammar *g, bool *out);

/**
 * # Safety
 * `g` must be a live grammar handle; `out` must be writable.
 */
enum PrestarStatus prestar_is_finite(const struct PrestarGrammar *g, bool *out);

/**
 * Sorted variable names, one per line.
 *
 * # Safety
 * `g` must be a live grammar handle; `out` must be writable.
 */
enum PrestarStatus prestar_productive(const struct PrestarGrammar *g, char **out);

/**
 * Sorted variable names, one per line.
 *
 * # Safety
 * `g` must be a live grammar handle; `out` must be writable.
 */
enum PrestarStatus prestar_reachable(const struct PrestarGrammar *g, char **out);

/**
 * Sorted variable names, one per line.
 *
 * # Safety
 * `g` must be a live grammar handle; `out` must be writable.
 */
enum PrestarStatus prestar_useless(const struct PrestarGrammar *g, char **out);

/**
 * Sorted variable names, one per line.
 *
 * # Safety
 * `g` must be a live grammar handle; `out` must be writable.
 */
enum PrestarStatus prestar_nullable(const struct PrestarGrammar *g, char **out);

/**
 * Parses automaton text, resolving labels against `g`. Labels the grammar
 * does not know are accepted as extra terminals.
 *
 * # Safety
 * `g` must be a live grammar handle, `source` a nul-terminated string and
 * `out` writable.
 */
enum PrestarStatus prestar_automaton_parse(const struct PrestarGrammar *g,
                                           const char *source,
                                           struct PrestarAutomaton **out);

/**
 * # Safety
 * `a` must come from [`prestar_automaton_parse`] and not have been freed.
 */
void prestar_automaton_free(struct PrestarAutomaton *a);

/**
 * Saturates `a` under `g`.
 *
 * # Safety
 * `g` and `a` must be live handles; `out` must be writable.
 */
enum PrestarStatus prestar_saturate(const struct PrestarGrammar *g,
                                    const struct PrestarAutomaton *a,
                                    struct PrestarSaturated **out);

/**
 * # Safety
 * `s` must come from [`prestar_saturate`] and not have been freed.
 */
void prestar_saturated_free(struct PrestarSaturated *s);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum PrestarStatus prestar_saturated_counters(const struct PrestarSaturated *s,
                                              struct PrestarCounters *out);

/**
 * Number of transitions after saturation, input transitions included.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum PrestarStatus prestar_saturated_transition_count(const struct PrestarSaturated *s,
                                                      size_t *out);

/**
 * Whether the whitespace-separated sentential `form` is accepted.
 *
 * # Safety
 * `s` must be a live handle, `form` a nul-terminated string and `out`
 * writable.
 */
enum PrestarStatus prestar_saturated_accepts(const struct PrestarSaturated *s,
                                             const char *form,
                                             bool *out);

/**
 * GraphViz text; added transitions are dashed.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum PrestarStatus prestar_saturated_dot(const struct PrestarSaturated *s, char **out);

/**
 * Whether `L(g)` is contained in the language of `a`. With `complement`
 * set, `a` is taken to accept the complement of the target language and no
 * determinization happens; otherwise `a` is complemented within
 * `max_dfa_states` states.
 *
 * # Safety
 * `g` and `a` must be live handles; `out` must be writable.
 */
enum PrestarStatus prestar_contained(const struct PrestarGrammar *g,
                                     const struct PrestarAutomaton *a,
                                     bool complement,
                                     size_t max_dfa_states,
                                     bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRESTAR_H */
