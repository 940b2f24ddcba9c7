#ifndef PWMARKOV_H
#define PWMARKOV_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(PWM_BUILDING_LIBRARY)
#define PWM_API __attribute__((visibility("default")))
#else
#define PWM_API
#endif

/* Rationals cross this boundary as "p/q" strings, integers as decimal strings.
 * Every entry point returns a status; on failure pwm_last_error() describes it.
 * Strings returned through `char** out` are malloc'd; release with pwm_free_string. */

typedef enum pwm_status {
  PWM_OK = 0,
  PWM_ERR_DOMAIN = 1,
  PWM_ERR_INTEGER_HIT = 2,
  PWM_ERR_ADMISSIBILITY = 3,
  PWM_ERR_SPEC = 4,
  PWM_ERR_PRECONDITION = 5,
  PWM_ERR_PRECISION = 6,
  PWM_ERR_UNSUPPORTED = 7,
  PWM_ERR_INTERNAL = 99
} pwm_status;

typedef enum pwm_format { PWM_FORMAT_JSON = 0, PWM_FORMAT_CSV = 1 } pwm_format;

typedef struct pwm_output {
  pwm_format format;
  int approx;        /* nonzero: add decimal renderings next to exact values */
  unsigned threads;  /* Monte Carlo only; results do not depend on it */
} pwm_output;

typedef struct pwm_system pwm_system;

PWM_API const char* pwm_version(void);
/* Message of the last failure on this thread ("" if none). */
PWM_API const char* pwm_last_error(void);
PWM_API void pwm_free_string(char* s);

/* zold_prefix: comma-separated n_1,n_2,... or NULL. */
PWM_API pwm_status pwm_system_builtin(const char* name, const char* zold_prefix, int zold_literal,
                                      pwm_system** out);
PWM_API pwm_status pwm_system_from_json(const char* json_text, pwm_system** out);
PWM_API void pwm_system_free(pwm_system* system);
PWM_API pwm_status pwm_system_name(const pwm_system* system, char** out);

PWM_API pwm_status pwm_eval(const pwm_system* system, const char* x, char** out);

/* On PWM_ERR_INTEGER_HIT *out still holds the partial orbit. */
PWM_API pwm_status pwm_orbit(const pwm_system* system, const char* x, uint64_t steps,
                             const pwm_output* fmt, char** out);
PWM_API pwm_status pwm_itinerary(const pwm_system* system, const char* x, uint64_t depth,
                                 const pwm_output* fmt, char** out);
PWM_API pwm_status pwm_cylinder(const pwm_system* system, const char* word, const pwm_output* fmt,
                                char** out);
PWM_API pwm_status pwm_admissible(const pwm_system* system, const char* word, int* result);
PWM_API pwm_status pwm_regressors(const pwm_system* system, const char* x, uint64_t depth,
                                  const pwm_output* fmt, char** out);

/* alpha and radii (comma-separated) may be NULL. */
PWM_API pwm_status pwm_classify(const pwm_system* system, const char* x, uint64_t max_steps,
                                const char* alpha, const char* radii, const pwm_output* fmt,
                                char** out);
PWM_API pwm_status pwm_series(const pwm_system* system, const char* x, uint64_t n,
                              const pwm_output* fmt, char** out);
PWM_API pwm_status pwm_positions(const pwm_system* system, const char* x, uint64_t n,
                                 const pwm_output* fmt, char** out);
/* n_list: comma-separated N values. */
PWM_API pwm_status pwm_bottleneck(const pwm_system* system, const char* n_list,
                                  const pwm_output* fmt, char** out);
PWM_API pwm_status pwm_ergod(const pwm_system* system, const char* x, const char* big_n,
                             const pwm_output* fmt, char** out);
PWM_API pwm_status pwm_pigeonhole(const pwm_system* system, const char* x, uint64_t horizon,
                                  const char* radii, const pwm_output* fmt, char** out);

PWM_API pwm_status pwm_pseudo_generate(const char* x0, const char* delta, uint64_t steps,
                                       uint64_t seed, const pwm_output* fmt, char** out);
/* mode: "shifted", "direct", "prepended" or NULL.
 * verify: NULL, "20delta", "21delta", "delta/4" or an explicit "p/q" epsilon.
 * A keyword verify picks the matching mode when mode is NULL.
 * *passed is 1/0 after a verification, -1 when none was requested. */
PWM_API pwm_status pwm_shadow(const pwm_system* system, const char* pseudo_json, const char* mode,
                              const char* verify, const pwm_output* fmt, char** out, int* passed);

PWM_API pwm_status pwm_transition_row(const pwm_system* system, const char* state,
                                      const pwm_output* fmt, char** out);
/* targets: comma-separated states. */
PWM_API pwm_status pwm_simulate_return(const pwm_system* system, const char* start,
                                       const char* targets, uint64_t walks, uint64_t cap,
                                       uint64_t seed, const pwm_output* fmt, char** out);
PWM_API pwm_status pwm_block_audit(const pwm_system* system, uint64_t walks, uint64_t steps,
                                   uint64_t seed, const pwm_output* fmt, char** out);
PWM_API pwm_status pwm_extransi_params(const char* n_list, const pwm_output* fmt, char** out);
PWM_API pwm_status pwm_extransi_walk(uint64_t walks, uint64_t steps, uint64_t seed,
                                     uint64_t start_block, const pwm_output* fmt, char** out);

/* *ok is 1 when every branch in [from, to] passed. */
PWM_API pwm_status pwm_validate(const pwm_system* system, const char* from, const char* to,
                                const pwm_output* fmt, char** out, int* ok);

#ifdef __cplusplus
}
#endif

#endif
