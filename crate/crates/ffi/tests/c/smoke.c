#include <stdio.h>
#include <string.h>
#include "hopfspecies.h"

int main(void) {
    HsGraph *g = NULL;
    const char *star = "{\"blocks\":[[\"a\"],[\"b\"],[\"c\"]],\"edges\":[[0,1],[0,2]]}";
    if (hs_graph_from_json(star, &g) != HS_STATUS_OK) return 1;
    char *poly = NULL;
    if (hs_chromatic(g, "1", &poly) != HS_STATUS_OK) return 2;
    printf("%s\n", poly);
    int ok = strcmp(poly, "{\"coeffs\":[\"0\",\"1\",\"-2\",\"1\"]}") == 0;
    hs_string_free(poly);
    uint64_t ao = 0;
    if (hs_acyclic_orientations(g, &ao) != HS_STATUS_OK || ao != 4) return 3;
    hs_graph_free(g);

    HsPoset *t = NULL;
    HsStatus s = hs_poset_from_json("{\"classes\":[[\"a\"],[\"b\"]],\"covers\":[[0,1],[1,0]]}", &t);
    if (s != HS_STATUS_DOMAIN || hs_last_error() == NULL) return 4;
    printf("%s\n", hs_last_error());
    return ok ? 0 : 5;
}
