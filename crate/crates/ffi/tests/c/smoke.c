#include <stdio.h>
#include <string.h>

#include "prestar.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    PrestarGrammar *g = NULL;
    CHECK(prestar_grammar_parse("A -> a | B B\nB -> A B | b\n", &g) == PRESTAR_STATUS_OK);
    CHECK(prestar_grammar_set_start(g, "B") == PRESTAR_STATUS_OK);

    bool member = false;
    CHECK(prestar_member(g, "a b", &member) == PRESTAR_STATUS_OK);
    CHECK(member);

    PrestarAutomaton *a = NULL;
    CHECK(prestar_automaton_parse(g,
                                  "states: q0 q1 q2\ninitial: q0\nfinal: q2\n"
                                  "q0 a q1\nq1 b q2\nq2 a q1\n",
                                  &a) == PRESTAR_STATUS_OK);
    PrestarSaturated *s = NULL;
    CHECK(prestar_saturate(g, a, &s) == PRESTAR_STATUS_OK);
    PrestarCounters counters;
    CHECK(prestar_saturated_counters(s, &counters) == PRESTAR_STATUS_OK);
    CHECK(counters.adds == 8);

    char *nullable = NULL;
    CHECK(prestar_nullable(g, &nullable) == PRESTAR_STATUS_OK);
    CHECK(strcmp(nullable, "") == 0);
    prestar_string_free(nullable);

    PrestarGrammar *bad = NULL;
    CHECK(prestar_grammar_parse("S a", &bad) == PRESTAR_STATUS_SYNTAX);
    CHECK(prestar_last_error() != NULL);

    prestar_saturated_free(s);
    prestar_automaton_free(a);
    prestar_grammar_free(g);
    printf("ok %s\n", prestar_version());
    return 0;
}
