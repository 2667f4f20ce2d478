#include <stdio.h>
#include "cmapf.h"

static const char *INSTANCE =
    "nodes 1 2 3 4 5\n"
    "edge 1 2\nedge 2 3\nedge 3 4\nedge 3 5\nedge 4 5\nedge 5 1\n"
    "constraint 1: 1 4\nconstraint 1: 2 3\n"
    "pebble 1 1 3\n";

int main(void) {
    CmapfInstance *inst = NULL;
    if (cmapf_instance_parse(INSTANCE, &inst) != CMAPF_STATUS_OK) {
        fprintf(stderr, "%s\n", cmapf_last_error());
        return 1;
    }
    uintptr_t w[] = {1, 3, 5};
    bool ok = false;
    if (cmapf_is_independent(inst, w, 3, &ok) != CMAPF_STATUS_OK) return 1;
    printf("independent %d\n", ok);

    CmapfVerdict verdict;
    CmapfPlan *plan = NULL;
    if (cmapf_solve(inst, w, 3, false, &verdict, &plan) != CMAPF_STATUS_OK) return 1;
    if (verdict != CMAPF_VERDICT_FEASIBLE) return 1;
    printf("plan %zu:", (size_t)cmapf_plan_len(plan));
    for (uintptr_t i = 0; i < cmapf_plan_len(plan); i++) {
        uintptr_t a, b;
        cmapf_plan_move(plan, i, &a, &b);
        printf(" %zu->%zu", (size_t)a, (size_t)b);
    }
    printf("\n");
    if (cmapf_validate(inst, plan) != CMAPF_STATUS_OK) return 1;
    cmapf_plan_free(plan);
    cmapf_instance_free(inst);
    return 0;
}
