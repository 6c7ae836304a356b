/*
 * C interface to the array-aware matching engine.
 *
 * All functions return aam_status; outputs are passed back through pointer
 * parameters. Strings returned through char** are heap-allocated and must be
 * released with aam_string_free. Graph handles are opaque and must be
 * released with aam_graph_free. On any non-zero status, aam_last_error()
 * returns a message describing the failure for the calling thread.
 */

#ifndef AAMATCH_H
#define AAMATCH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct aam_graph aam_graph;

typedef enum aam_status {
  AAM_OK = 0,
  AAM_ERROR_INVALID_ARGUMENT = 1,
  AAM_ERROR_PARSE = 2,
  AAM_ERROR_VALIDATION = 3,
  AAM_ERROR_LIMIT_EXCEEDED = 4,
  AAM_ERROR_INTERNAL = 5,
} aam_status;

typedef struct aam_match_options {
  int32_t run_simplify;     /* nonzero: run the forced-match pass first */
  int32_t run_match;        /* nonzero: run the augmenting-path phase */
  uint64_t max_iterations;  /* 0: default (10x scalar equation count) */
  int32_t include_timings;  /* nonzero: report wall-clock per phase */
  int32_t with_oracle;      /* nonzero: compare against the flattened maximum matching */
} aam_match_options;

const char* aam_version(void);
const char* aam_last_error(void);
void aam_string_free(char* text);
void aam_graph_free(aam_graph* graph);

/* Graph I/O. Documents follow the JSON schema described in docs/formats.md. */
aam_status aam_graph_from_json(const char* json_text, aam_graph** out_graph);
aam_status aam_graph_to_json(const aam_graph* graph, char** out_json);
aam_status aam_graph_clone(const aam_graph* graph, aam_graph** out_graph);

/* Node/arc/scalar counts plus the current matching state, as JSON. */
aam_status aam_graph_stats_json(const aam_graph* graph, char** out_json);

/* Matching-condition check; complete=0 validates a partial state. The result
 * is a JSON array of violation records (empty when the graph is valid). */
aam_status aam_graph_validate(const aam_graph* graph, int32_t complete,
                              char** out_violations_json);

/* Generators. */
aam_status aam_gen_wire(int64_t volumes, aam_graph** out_graph);
aam_status aam_gen_random(uint64_t seed, int32_t eq_nodes, int32_t var_nodes, int32_t max_size,
                          double density, aam_graph** out_graph);
/* clauses_text: one clause per line, '!' negates, '#' comments. Inputs are
 * normalized (unary duplication, complement renaming); the map JSON records
 * the normalized clauses, renames, and decode bookkeeping. */
aam_status aam_gen_max2sat(const char* clauses_text, aam_graph** out_graph, char** out_map_json);

/* Runs the matching pipeline in place and reports it (see docs/formats.md). */
aam_status aam_run_match(aam_graph* graph, const aam_match_options* options,
                         char** out_report_json);

/* Scalar expansion of the graph, capped (0 selects the default cap). */
aam_status aam_flatten_json(const aam_graph* graph, uint64_t scalar_cap, char** out_json);

/* Maximum-cardinality matching of the flattened graph. */
aam_status aam_oracle_hk_json(const aam_graph* graph, uint64_t scalar_cap, char** out_json);

/* Exhaustive minimum of the matched-arc metric over all complete matchings.
 * scalar_eq_cap 0 selects the default cap of 24 scalar equations. When
 * use_current_as_hint is nonzero and the graph carries a complete matching,
 * it seeds the search and bounds the result from above. */
aam_status aam_oracle_omega_json(const aam_graph* graph, uint64_t scalar_eq_cap,
                                 int32_t use_current_as_hint, char** out_json);

/* Reads the literal assignment off a completely matched encoder graph. */
aam_status aam_max2sat_decode(const aam_graph* graph, const char* map_json,
                              char** out_assignment_json);
/* Counts satisfied clauses of the map's normalized clause list. */
aam_status aam_max2sat_count_satisfied(const char* map_json, const char* assignment_json,
                                       int32_t* out_satisfied);

#ifdef __cplusplus
}
#endif

#endif /* AAMATCH_H */
