#include <stdio.h>
#include "susylat.h"

static int check(SusylatStatus s, const char *what) {
    if (s != SUSYLAT_STATUS_OK) {
        fprintf(stderr, "%s failed (%d): %s\n", what, (int)s, susylat_last_error_message());
        return 1;
    }
    return 0;
}

int main(void) {
    SusylatLattice *lat = NULL;
    int64_t w = 0;
    if (check(susylat_lattice_octagon_square(2, 2, SUSYLAT_BOUNDARY_TORUS, &lat), "octagon")) return 1;
    if (check(susylat_witten_enumeration(lat, &w), "witten")) return 1;

    SusylatGroundStates *gs = NULL;
    if (check(susylat_ground_states(lat, 7, &gs), "ground states")) return 1;
    printf("sites %zu witten %lld total %llu h4 %llu\n", susylat_lattice_n_sites(lat), (long long)w,
           (unsigned long long)susylat_ground_states_total(gs), (unsigned long long)susylat_ground_states_h(gs, 4));
    susylat_ground_states_free(gs);
    susylat_lattice_free(lat);

    if (check(susylat_witten_transfer(5, 0, 0, 5, &w), "transfer")) return 1;
    printf("transfer %lld\n", (long long)w);

    SusylatStatus bad = susylat_lattice_from_spec("hexagon:3", &lat);
    printf("bad spec status %d\n", (int)bad);
    return 0;
}
