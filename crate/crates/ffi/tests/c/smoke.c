#include <math.h>
#include <stdio.h>
#include <string.h>

#include "schurlab.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    const double s = sqrt(3.0) / 2.0;
    const double triangle[6] = {0.0, 0.0, 1.0, 0.0, 0.5, s};
    SchurlabConfig *cfg = NULL;
    CHECK(schurlab_config_new_euclidean(triangle, 3, 2, &cfg) == SCHURLAB_STATUS_OK);
    CHECK(schurlab_config_len(cfg) == 3);
    CHECK(schurlab_config_dim(cfg) == 2);

    size_t count = 0;
    CHECK(schurlab_count_cliques(cfg, 2, 0.0, &count) == SCHURLAB_STATUS_OK);
    CHECK(count == 3);

    SchurlabAudit audit;
    CHECK(schurlab_audit(cfg, 0, 0.0, &audit) == SCHURLAB_STATUS_OK);
    CHECK(audit.cliques == 3 && audit.bound == 3 && audit.passed);

    double center[2];
    double radius = 0.0;
    CHECK(schurlab_min_enclosing_ball(cfg, center, 2, &radius) == SCHURLAB_STATUS_OK);
    CHECK(fabs(radius - 1.0 / sqrt(3.0)) < 1e-12);
    CHECK(schurlab_min_enclosing_ball(cfg, center, 1, &radius) == SCHURLAB_STATUS_BUFFER_TOO_SMALL);
    CHECK(schurlab_last_error() != NULL);
    schurlab_config_free(cfg);

    CHECK(schurlab_count_cliques(NULL, 2, 0.0, &count) == SCHURLAB_STATUS_NULL_POINTER);
    CHECK(schurlab_config_from_json("{", &cfg) == SCHURLAB_STATUS_JSON);

    SchurlabBody *body = NULL;
    CHECK(schurlab_body_regular_simplex(3, &body) == SCHURLAB_STATUS_OK);
    const double origin[3] = {0.0, 0.0, 0.0};
    bool inside = false;
    CHECK(schurlab_body_contains(body, origin, 3, &inside) == SCHURLAB_STATUS_OK);
    CHECK(inside);
    schurlab_body_free(body);

    SchurlabRedBlue rb;
    CHECK(schurlab_red_blue_margins(4, 1e-3, &rb) == SCHURLAB_STATUS_OK);
    CHECK(rb.passed && rb.min_blue_blue > 1.0 && rb.max_red_blue < 1.0);

    printf("ok %s\n", schurlab_version());
    return 0;
}
