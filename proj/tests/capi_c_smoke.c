/* Compiled as plain C: proves the public header needs no C++ to consume. */

#include <stdio.h>
#include <string.h>

#include "aamatch.h"

int main(void) {
  if (aam_version() == NULL || strlen(aam_version()) == 0) {
    fprintf(stderr, "missing version\n");
    return 1;
  }

  aam_graph* graph = NULL;
  if (aam_gen_wire(8, &graph) != AAM_OK) {
    fprintf(stderr, "gen failed: %s\n", aam_last_error());
    return 1;
  }

  aam_match_options options;
  memset(&options, 0, sizeof(options));
  options.run_simplify = 1;
  options.run_match = 1;

  char* report = NULL;
  if (aam_run_match(graph, &options, &report) != AAM_OK) {
    fprintf(stderr, "match failed: %s\n", aam_last_error());
    aam_graph_free(graph);
    return 1;
  }

  int ok = strstr(report, "\"complete\": true") != NULL;
  aam_string_free(report);
  aam_graph_free(graph);
  if (!ok) {
    fprintf(stderr, "wire did not complete\n");
    return 1;
  }
  printf("c smoke test passed\n");
  return 0;
}
