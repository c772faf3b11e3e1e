#include <stdio.h>
#include "mendeleev.h"

int main(void) {
    MdlQuartet q;
    for (uint64_t z = 1; z <= 20; z++) {
        char *config = NULL;
        if (mdl_quartet_of(z, &q) != MDL_STATUS_OK || mdl_configuration(z, &config) != MDL_STATUS_OK) {
            fprintf(stderr, "error: %s\n", mdl_last_error());
            return 1;
        }
        printf("%3llu  (%u,%u,%u/2,%d/2)  %s\n", (unsigned long long)z, q.n, q.l, q.j2, q.m2, config);
        mdl_string_free(config);
    }
    MdlQuartet bad = {2, 2, 5, 1};
    uint64_t z;
    if (mdl_z_of(bad, &z) != MDL_STATUS_OK)
        printf("rejected: %s\n", mdl_last_error());
    return 0;
}
