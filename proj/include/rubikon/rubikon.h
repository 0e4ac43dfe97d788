#ifndef RUBIKON_RUBIKON_H
#define RUBIKON_RUBIKON_H

/* C interface to the tutoring engine. Strings are UTF-8 and NUL-terminated.
 * Every function returning rk_status leaves its out-parameters untouched on
 * failure and records a message readable with rk_last_error() on the calling
 * thread. Strings returned through char** are owned by the caller and must
 * be released with rk_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RK_API __declspec(dllexport)
#else
#define RK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rk_status {
  RK_OK = 0,
  RK_BAD_LENGTH,
  RK_BAD_SYMBOL,
  RK_BAD_COLOR_COUNT,
  RK_CENTER_CONFLICT,
  RK_ILLEGAL_STATE,
  RK_NOT_ONE_MOVE,
  RK_PATTERN_MISMATCH,
  RK_BAD_LEVEL,
  RK_NO_ACTIVE_SKILL,
  RK_UNSATISFIABLE_CONTEXT,
  RK_OPEN_ATTEMPT,
  RK_SCHEMA_ERROR,
  RK_EMPTY_LOG,
  RK_CORRUPT_LOG,
  RK_UNDEFINED_METRIC,
  RK_INVALID_ARGUMENT,
  RK_IO,
  RK_INTERNAL
} rk_status;

typedef struct rk_session rk_session;

/* Milliseconds for messages that carry no client timestamp. */
typedef int64_t (*rk_clock_fn)(void* user);

RK_API const char* rk_status_name(rk_status status);
/* Message of the last failure on this thread; "" when there was none. */
RK_API const char* rk_last_error(void);
/* Integer detail of the last failure (CorruptLog: first bad seq), else -1. */
RK_API int64_t rk_last_error_detail(void);
RK_API void rk_string_free(char* s);
RK_API int rk_protocol_version(void);

/* config_json may be NULL for defaults; otherwise an object with optional
 * id, seed, params, start (facelet string) and start_ts. A NULL clock uses
 * the wall clock. */
RK_API rk_status rk_session_create(const char* config_json, rk_clock_fn clock, void* clock_user, rk_session** out);
RK_API void rk_session_destroy(rk_session* session);

/* One NDJSON client message in; the server messages out, one per line.
 * Rejected messages are answered with an Error line and still return RK_OK. */
RK_API rk_status rk_session_handle(rk_session* session, const char* line, char** out_lines);

RK_API size_t rk_session_event_count(const rk_session* session);
/* Events with seq >= from as JSON lines. */
RK_API rk_status rk_session_events(const rk_session* session, size_t from, char** out_jsonl);

/* Quarter-turn distance with free reorientation; *out_distance is -1 when it
 * exceeds cap. */
RK_API rk_status rk_min_steps(const char* from_facelet, const char* to_facelet, int cap, int* out_distance);

RK_API rk_status rk_kc_catalog(char** out_json);

/* Report {identical, first_mismatch_seq, events} for a JSON-lines log. */
RK_API rk_status rk_replay(const char* log_jsonl, char** out_report_json);

/* Process metrics of a JSON-lines log. */
RK_API rk_status rk_metrics(const char* log_jsonl, char** out_json);

/* config_json: object with optional policy, p, hint_level, seed,
 * max_attempts, max_moves, wander_budget, step_ms and params. Writes the
 * result summary and, when out_log_jsonl is not NULL, the session log. */
RK_API rk_status rk_simulate(const char* config_json, char** out_result_json, char** out_log_jsonl);

#ifdef __cplusplus
}
#endif

#endif
