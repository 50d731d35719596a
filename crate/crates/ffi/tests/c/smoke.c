#include <stdio.h>
#include <string.h>

#include "natfull.h"

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      const char *e = natfull_last_error();                          \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond, \
              e ? e : "no error");                                   \
      return 1;                                                      \
    }                                                                \
  } while (0)

int main(void) {
  char *json = NULL;
  CHECK(natfull_fixture_emit("FIX-PROJ", 0, NULL, &json) == NATFULL_STATUS_OK);

  NatfullInstance *inst = NULL;
  CHECK(natfull_instance_parse(json, &inst) == NATFULL_STATUS_OK);
  natfull_string_free(json);
  CHECK(natfull_instance_prime(inst) == 2);

  char *report = NULL;
  CHECK(natfull_analyze(inst, NATFULL_ANALYZER_SCALARS, NULL, 0, &report) == NATFULL_STATUS_OK);
  CHECK(strstr(report, "\"witness_section\"") != NULL);
  natfull_string_free(report);

  CHECK(natfull_analyze(inst, NATFULL_ANALYZER_SCALARS, "missing", 0, &report) == NATFULL_STATUS_UNKNOWN_ID);
  CHECK(natfull_last_error() != NULL);
  natfull_instance_free(inst);

  CHECK(natfull_instance_parse("{", &inst) == NATFULL_STATUS_PARSE);
  printf("ok %s\n", natfull_version());
  return 0;
}
