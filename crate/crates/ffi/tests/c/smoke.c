#include <stdio.h>
#include <string.h>
#include "hochhom.h"

int main(void) {
    HochhomAlgebra *a = NULL;
    if (hochhom_algebra_new("truncated_poly(2)", &a) != HOCHHOM_STATUS_OK) return 10;
    if (hochhom_algebra_dim(a) != 2) return 11;

    HochhomReport *r = NULL;
    if (hochhom_homology(a, "sphere(1)", 4, true, 0, &r) != HOCHHOM_STATUS_OK) return 12;
    size_t len = 0;
    const size_t *dims = hochhom_report_dims(r, &len);
    size_t want[4] = {2, 1, 1, 1};
    if (len != 5) return 13;
    for (size_t i = 0; i < 4; i++)
        if (dims[i] != want[i]) return 14;
    char *json = hochhom_report_json(r, false);
    if (json == NULL || strstr(json, "\"homology\"") == NULL) return 15;
    hochhom_string_free(json);
    hochhom_report_free(r);

    if (hochhom_homology(a, "sphere(", 2, true, 0, &r) != HOCHHOM_STATUS_INVALID_INPUT) return 16;
    if (r != NULL || hochhom_last_error_message() == NULL) return 17;
    hochhom_algebra_free(a);

    HochhomJob *job = NULL;
    const char *cfg = "{\"command\":\"ext\",\"algebra\":\"truncated_poly(2)\",\"module\":\"augmentation\",\"N\":3}";
    if (hochhom_job_parse(cfg, &job) != HOCHHOM_STATUS_OK) return 18;
    if (hochhom_job_run(job, &r) != HOCHHOM_STATUS_OK) return 19;
    dims = hochhom_report_dims(r, &len);
    if (len != 4 || dims[3] != 1) return 20;
    hochhom_report_free(r);
    hochhom_job_free(job);
    printf("ok %s\n", hochhom_version());
    return 0;
}
