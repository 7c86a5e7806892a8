/* C interface to the sualb solver library.
 *
 * All objects are opaque handles created and released through this API.
 * Functions return SUALB_OK (0) on success; on failure they return a
 * nonzero code and leave a message readable via sualb_last_error() on the
 * calling thread. Task ids cross this boundary 1-based, matching the file
 * formats. */

#ifndef SUALB_H
#define SUALB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sualb_instance sualb_instance;
typedef struct sualb_result sualb_result;

typedef enum {
    SUALB_OK = 0,
    SUALB_ERR_IO = 1,         /* file not readable/writable */
    SUALB_ERR_PARSE = 2,      /* malformed instance text */
    SUALB_ERR_INVALID = 3,    /* instance failed validation */
    SUALB_ERR_USAGE = 4,      /* bad arguments or missing fields */
    SUALB_ERR_INTERNAL = 5
} sualb_error;

typedef enum {
    SUALB_STATUS_OPTIMAL = 0,
    SUALB_STATUS_FEASIBLE = 1,
    SUALB_STATUS_INFEASIBLE = 2,
    SUALB_STATUS_TIMEOUT_NO_SOLUTION = 3
} sualb_solve_status;

typedef enum {
    SUALB_ROUND_FLOOR = 0,
    SUALB_ROUND_HALF_UP = 1,
    SUALB_ROUND_CEIL = 2
} sualb_rounding;

/* Message describing the most recent failure on this thread ("" if none). */
const char* sualb_last_error(void);

/* Strings returned through char** outputs are heap copies; release here. */
void sualb_string_free(char* s);

/* --- instances --------------------------------------------------------- */

int sualb_instance_load(const char* path, sualb_instance** out);
int sualb_instance_parse(const char* text, sualb_instance** out); /* .alb or canonical */
void sualb_instance_free(sualb_instance* inst);

int sualb_instance_task_count(const sualb_instance* inst);
const char* sualb_instance_name(const sualb_instance* inst);
/* -1 when the field is absent. */
long long sualb_instance_cycle_time(const sualb_instance* inst);
int sualb_instance_station_count(const sualb_instance* inst);

/* Validation report as text, one finding per line, prefixed "error:" or
 * "warning:". Returns SUALB_OK when there are no errors, SUALB_ERR_INVALID
 * otherwise; *report is set either way. problem_type: 1, 2 or 0 (unstated). */
int sualb_instance_validate(const sualb_instance* inst, int problem_type, char** report);

/* Parse-time warnings of the load/parse call that created the handle. */
int sualb_instance_warning_count(const sualb_instance* inst);
const char* sualb_instance_warning(const sualb_instance* inst, int idx);

int sualb_instance_write(const sualb_instance* inst, const char* path); /* canonical form */
int sualb_instance_derived_summary(const sualb_instance* inst, int problem_type, char** text);

/* round(sum of task times / cycle time) under the given policy, >= 1. */
int sualb_derive_station_count(const sualb_instance* inst, sualb_rounding policy, int* out_m);

/* --- solving ----------------------------------------------------------- */

typedef struct {
    int problem_type;        /* 1 or 2 */
    double time_limit_s;
    int station_count;       /* type 2: fixed m; 0 = take from instance or derive */
    sualb_rounding rounding; /* used when station_count is derived */
    int use_dual_bounds;     /* default 1 */
    int use_dominance;       /* default 1 */
    int local_improve;       /* type 2 only, default 0 */
    size_t node_cap;         /* 0 = library default */
} sualb_solve_options;

void sualb_solve_options_init(sualb_solve_options* opts, int problem_type);

int sualb_solve(const sualb_instance* inst, const sualb_solve_options* opts,
                sualb_result** out);
void sualb_result_free(sualb_result* res);

sualb_solve_status sualb_result_status(const sualb_result* res);
/* -1 when there is no incumbent. */
long long sualb_result_objective(const sualb_result* res);
long long sualb_result_lower_bound(const sualb_result* res);
double sualb_result_runtime_s(const sualb_result* res);

int sualb_result_station_count(const sualb_result* res);
int sualb_result_station_size(const sualb_result* res, int station);
/* 1-based task id; station and pos are 0-based. -1 on range errors. */
int sualb_result_station_task(const sualb_result* res, int station, int pos);
long long sualb_result_station_time(const sualb_result* res, int station);

int sualb_result_trace_length(const sualb_result* res);
int sualb_result_trace_point(const sualb_result* res, int idx, double* seconds,
                             long long* objective);

typedef struct {
    long long expansions;
    long long generated;
    long long pruned_by_bound;
    long long pruned_by_dominance;
    long long duplicates;
    int beam_iterations;
    long long peak_layer;
    long long improve_calls;
    long long improve_successes;
} sualb_solve_stats;

int sualb_result_stats(const sualb_result* res, sualb_solve_stats* out);

/* --- reference oracle (exhaustive, small instances only) ---------------- */

/* objective set to -1 when the oracle proves infeasibility. */
int sualb_oracle_solve(const sualb_instance* inst, int problem_type, int station_count,
                       long long* objective);

/* --- benchmark harness --------------------------------------------------*/

typedef struct {
    int problem_type;
    double time_limit_s;
    sualb_rounding rounding;
    int use_dual_bounds;
    int use_dominance;
    int local_improve;
    int jobs;
    const char* out_dir;         /* NULL = no files */
    const char* best_known_path; /* NULL = none */
    const char* alpha_label;     /* NULL = per-instance metadata */
} sualb_bench_options;

void sualb_bench_options_init(sualb_bench_options* opts, int problem_type);

/* Runs every path and returns the formatted results table in *table_out
 * (summary likewise when summary_out is non-NULL). */
int sualb_bench_run(const char* const* paths, int n_paths, const sualb_bench_options* opts,
                    char** table_out, char** summary_out);

#ifdef __cplusplus
}
#endif

#endif /* SUALB_H */
