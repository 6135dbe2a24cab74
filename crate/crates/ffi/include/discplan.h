#ifndef DISCPLAN_H
#define DISCPLAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The nonzero values below 4 match the CLI exit codes.
 */
typedef enum DpStatus {
  DP_STATUS_OK = 0,
  DP_STATUS_INVALID_INPUT = 1,
  DP_STATUS_INFEASIBLE = 2,
  DP_STATUS_INVARIANT_VIOLATION = 3,
  DP_STATUS_NULL_ARGUMENT = 4,
  DP_STATUS_UTF8 = 5,
  DP_STATUS_PANIC = 6,
} DpStatus;

/**
 * Opaque plan handle; remembers the radius used for file units.
 */
typedef struct DpPlan DpPlan;

/**
 * Opaque scenario handle.
 */
typedef struct DpScenario DpScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a scenario from JSON text and stores a new handle in `out`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DpStatus dp_scenario_from_json(const char *json, struct DpScenario **out);

/**
 * # Safety
 * `s` must come from [`dp_scenario_from_json`] and not be freed twice.
 */
void dp_scenario_free(struct DpScenario *s);

/**
 * Checks the separation requirements.
 *
 * # Safety
 * `s` must be a live scenario handle.
 */
enum DpStatus dp_scenario_validate(const struct DpScenario *s);

/**
 * Validates and plans the scenario, storing a new plan handle in `out`.
 *
 * # Safety
 * `s` must be a live scenario handle and `out` a valid pointer.
 */
enum DpStatus dp_plan(const struct DpScenario *s, struct DpPlan **out);

/**
 * # Safety
 * `p` must come from [`dp_plan`] and not be freed twice.
 */
void dp_plan_free(struct DpPlan *p);

/**
 * Number of steps, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live plan handle.
 */
size_t dp_plan_step_count(const struct DpPlan *p);

/**
 * Total path length in scenario units, or NaN for a null handle.
 *
 * # Safety
 * `p` must be null or a live plan handle.
 */
double dp_plan_total_cost(const struct DpPlan *p);

/**
 * Optimal assignment cost in scenario units, or NaN for a null handle.
 *
 * # Safety
 * `p` must be null or a live plan handle.
 */
double dp_plan_lower_bound(const struct DpPlan *p);

/**
 * Plan JSON in scenario units. Free the result with [`dp_string_free`].
 *
 * # Safety
 * `p` must be a live plan handle and `out` a valid pointer.
 */
enum DpStatus dp_plan_to_json(const struct DpPlan *p, char **out);

/**
 * SVG drawing of the scenario and, if `p` is not null, the plan.
 *
 * # Safety
 * `s` must be a live scenario handle, `p` null or a live plan handle and
 * `out` a valid pointer.
 */
enum DpStatus dp_render_svg(const struct DpScenario *s, const struct DpPlan *p, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void dp_string_free(char *s);

/**
 * Message for the most recent failure on this thread; empty after a
 * success. Valid until the next call on the same thread.
 */
const char *dp_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISCPLAN_H */
