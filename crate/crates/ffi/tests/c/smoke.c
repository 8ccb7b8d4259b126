#include <stdio.h>
#include <string.h>

#include "homcat.h"

#define CHECK(call)                                                          \
  do {                                                                       \
    HomcatStatus s_ = (call);                                                \
    if (s_ != HOMCAT_STATUS_OK) {                                            \
      fprintf(stderr, "%s failed (%d): %s\n", #call, s_, homcat_last_error()); \
      return 1;                                                              \
    }                                                                        \
  } while (0)

int main(void) {
  HomcatRing *ring = NULL;
  CHECK(homcat_ring_new("preset:truncated_poly,p=2,n=3", &ring));
  HomcatRingInfo info;
  CHECK(homcat_ring_classify(ring, &info));
  if (!info.local || !info.gorenstein_local || info.dim != 3) return 2;

  const char *k = "{\"ring\": \"preset:truncated_poly,p=2,n=3\", \"dim\": 1, \"side\": \"right\","
                  " \"action\": [[[1]], [[0]], [[0]]]}";
  HomcatModule *m = NULL, *t = NULL;
  CHECK(homcat_module_new(k, &m));
  CHECK(homcat_module_tau(m, false, &t));
  bool iso = false;
  CHECK(homcat_module_is_isomorphic(m, t, &iso));
  if (!iso) return 3;

  HomcatModule *bad = NULL;
  if (homcat_module_new("{\"dim\": 1}", &bad) != HOMCAT_STATUS_INPUT) return 4;
  if (strlen(homcat_last_error()) == 0) return 5;

  char *json = NULL;
  CHECK(homcat_module_to_json(t, &json));
  if (strstr(json, "\"side\": \"right\"") == NULL) return 6;
  homcat_string_free(json);

  homcat_module_free(t);
  homcat_module_free(m);
  homcat_ring_free(ring);
  printf("ok\n");
  return 0;
}
