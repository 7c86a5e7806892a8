// Exercises the shared-library boundary the way an external caller would:
// only sualb.h, opaque handles, error codes, 1-based task ids.

#include <cstdio>
#include <cstring>
#include <string>

#include "sualb.h"

static int failures = 0;

#define EXPECT(cond)                                                      \
    do {                                                                  \
        if (!(cond)) {                                                    \
            std::fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, \
                         #cond);                                          \
            ++failures;                                                   \
        }                                                                 \
    } while (0)

static std::string data(const char* name) {
    return std::string(SUALB_DATA_DIR "/") + name;
}

static void error_paths() {
    sualb_instance* inst = nullptr;
    EXPECT(sualb_instance_load(data("no_such_file.alb").c_str(), &inst) == SUALB_ERR_IO);
    EXPECT(inst == nullptr);
    EXPECT(std::strlen(sualb_last_error()) > 0);

    EXPECT(sualb_instance_parse("<number of tasks>\nbanana\n", &inst) == SUALB_ERR_PARSE);
    EXPECT(inst == nullptr);

    EXPECT(sualb_instance_load(nullptr, &inst) == SUALB_ERR_USAGE);
    EXPECT(sualb_instance_parse("whatever", nullptr) == SUALB_ERR_USAGE);
    EXPECT(sualb_solve(nullptr, nullptr, nullptr) == SUALB_ERR_USAGE);
}

static void instance_roundtrip() {
    sualb_instance* inst = nullptr;
    EXPECT(sualb_instance_load(data("three_tasks.alb").c_str(), &inst) == SUALB_OK);
    if (!inst) return;
    EXPECT(sualb_instance_task_count(inst) == 3);
    EXPECT(std::string(sualb_instance_name(inst)) == "three_tasks");
    EXPECT(sualb_instance_cycle_time(inst) == 16);
    EXPECT(sualb_instance_station_count(inst) == -1);

    char* report = nullptr;
    EXPECT(sualb_instance_validate(inst, 0, &report) == SUALB_OK);
    EXPECT(report != nullptr);
    sualb_string_free(report);

    int m = 0;
    EXPECT(sualb_derive_station_count(inst, SUALB_ROUND_FLOOR, &m) == SUALB_OK);
    EXPECT(m == 1);  // floor(12/16) clamped up to 1
    EXPECT(sualb_derive_station_count(inst, SUALB_ROUND_CEIL, &m) == SUALB_OK);
    EXPECT(m == 1);

    const char* tmp = "/tmp/sualb_capi_roundtrip.json";
    EXPECT(sualb_instance_write(inst, tmp) == SUALB_OK);
    sualb_instance* back = nullptr;
    EXPECT(sualb_instance_load(tmp, &back) == SUALB_OK);
    if (back) {
        EXPECT(sualb_instance_task_count(back) == 3);
        EXPECT(sualb_instance_cycle_time(back) == 16);
        sualb_instance_free(back);
    }
    std::remove(tmp);

    char* text = nullptr;
    EXPECT(sualb_instance_derived_summary(inst, 1, &text) == SUALB_OK);
    EXPECT(text && std::strstr(text, "station"));
    sualb_string_free(text);
    sualb_instance_free(inst);
}

static void warnings_and_validation() {
    sualb_instance* inst = nullptr;
    const char* text =
        "<number of tasks>\n1\n<cycle time>\n9\n"
        "<nonsense tag>\n3\n"
        "<task times>\n1,5\n<end>\n";
    EXPECT(sualb_instance_parse(text, &inst) == SUALB_OK);
    if (!inst) return;
    EXPECT(sualb_instance_warning_count(inst) >= 1);
    EXPECT(std::strlen(sualb_instance_warning(inst, 0)) > 0);
    EXPECT(std::string(sualb_instance_warning(inst, 99)).empty());
    sualb_instance_free(inst);

    // A processing time above the cycle time is a hard type-1 error...
    const char* hopeless =
        "<number of tasks>\n1\n<cycle time>\n8\n<task times>\n1,9\n<end>\n";
    EXPECT(sualb_instance_parse(hopeless, &inst) == SUALB_OK);
    if (!inst) return;
    char* report = nullptr;
    EXPECT(sualb_instance_validate(inst, 1, &report) == SUALB_ERR_INVALID);
    EXPECT(report && std::strstr(report, "error:"));
    sualb_string_free(report);
    // ...but only a warning when the problem type is unstated.
    EXPECT(sualb_instance_validate(inst, 0, &report) == SUALB_OK);
    EXPECT(report && std::strstr(report, "warning:"));
    sualb_string_free(report);
    sualb_instance_free(inst);

    // A task that just cannot close a station it opens alone is not proof of
    // infeasibility, so validation only warns about it.
    EXPECT(sualb_instance_load(data("too_tight.alb").c_str(), &inst) == SUALB_OK);
    if (!inst) return;
    EXPECT(sualb_instance_validate(inst, 1, &report) == SUALB_OK);
    EXPECT(report && std::strstr(report, "warning:"));
    sualb_string_free(report);
    sualb_instance_free(inst);
}

static void solve_type1() {
    sualb_instance* inst = nullptr;
    EXPECT(sualb_instance_load(data("mixer7.alb").c_str(), &inst) == SUALB_OK);
    if (!inst) return;

    sualb_solve_options opts;
    sualb_solve_options_init(&opts, 1);
    opts.time_limit_s = 60.0;
    sualb_result* res = nullptr;
    EXPECT(sualb_solve(inst, &opts, &res) == SUALB_OK);
    if (!res) {
        sualb_instance_free(inst);
        return;
    }
    EXPECT(sualb_result_status(res) == SUALB_STATUS_OPTIMAL);
    EXPECT(sualb_result_objective(res) == 4);
    EXPECT(sualb_result_lower_bound(res) == 4);
    EXPECT(sualb_result_runtime_s(res) >= 0.0);

    int stations = sualb_result_station_count(res);
    EXPECT(stations == 4);
    bool seen[8] = {false};
    int placed = 0;
    for (int k = 0; k < stations; ++k) {
        int sz = sualb_result_station_size(res, k);
        EXPECT(sz >= 1);
        EXPECT(sualb_result_station_time(res, k) <= 12);
        for (int p = 0; p < sz; ++p) {
            int id = sualb_result_station_task(res, k, p);
            EXPECT(id >= 1 && id <= 7);  // ids cross the boundary 1-based
            if (id >= 1 && id <= 7) {
                EXPECT(!seen[id]);
                seen[id] = true;
                ++placed;
            }
        }
    }
    EXPECT(placed == 7);
    EXPECT(sualb_result_station_size(res, stations) == -1);
    EXPECT(sualb_result_station_task(res, 0, 99) == -1);

    int n_trace = sualb_result_trace_length(res);
    EXPECT(n_trace >= 1);
    double sec = -1.0;
    long long obj = -1;
    EXPECT(sualb_result_trace_point(res, 0, &sec, &obj) == SUALB_OK);
    EXPECT(sec >= 0.0 && obj >= 4);
    EXPECT(sualb_result_trace_point(res, n_trace, &sec, &obj) == SUALB_ERR_USAGE);

    sualb_solve_stats stats;
    EXPECT(sualb_result_stats(res, &stats) == SUALB_OK);
    EXPECT(stats.expansions > 0);
    EXPECT(stats.beam_iterations >= 1);

    sualb_result_free(res);
    sualb_instance_free(inst);
}

static void solve_type2_and_infeasible() {
    sualb_instance* inst = nullptr;
    EXPECT(sualb_instance_load(data("three_tasks.alb").c_str(), &inst) == SUALB_OK);
    if (!inst) return;

    sualb_solve_options opts;
    sualb_solve_options_init(&opts, 2);
    opts.time_limit_s = 60.0;
    opts.station_count = 2;
    sualb_result* res = nullptr;
    EXPECT(sualb_solve(inst, &opts, &res) == SUALB_OK);
    if (res) {
        EXPECT(sualb_result_status(res) == SUALB_STATUS_OPTIMAL);
        EXPECT(sualb_result_objective(res) == 10);
        sualb_result_free(res);
    }
    sualb_instance_free(inst);

    EXPECT(sualb_instance_load(data("too_tight.alb").c_str(), &inst) == SUALB_OK);
    if (!inst) return;
    sualb_solve_options_init(&opts, 1);
    opts.time_limit_s = 60.0;
    res = nullptr;
    EXPECT(sualb_solve(inst, &opts, &res) == SUALB_OK);
    if (res) {
        EXPECT(sualb_result_status(res) == SUALB_STATUS_INFEASIBLE);
        EXPECT(sualb_result_objective(res) == -1);
        EXPECT(sualb_result_station_count(res) == 0);
        sualb_result_free(res);
    }
    sualb_instance_free(inst);
}

static void oracle_checks() {
    sualb_instance* inst = nullptr;
    EXPECT(sualb_instance_load(data("three_tasks.alb").c_str(), &inst) == SUALB_OK);
    if (!inst) return;
    long long obj = 0;
    EXPECT(sualb_oracle_solve(inst, 1, 0, &obj) == SUALB_OK);
    EXPECT(obj == 1);
    EXPECT(sualb_oracle_solve(inst, 2, 2, &obj) == SUALB_OK);
    EXPECT(obj == 10);
    EXPECT(sualb_oracle_solve(nullptr, 1, 0, &obj) == SUALB_ERR_USAGE);
    sualb_instance_free(inst);

    EXPECT(sualb_instance_load(data("too_tight.alb").c_str(), &inst) == SUALB_OK);
    if (!inst) return;
    EXPECT(sualb_oracle_solve(inst, 1, 0, &obj) == SUALB_OK);
    EXPECT(obj == -1);  // infeasible by convention
    sualb_instance_free(inst);
}

static void bench_through_the_boundary() {
    std::string a = data("three_tasks.alb");
    std::string b = data("mixer7.alb");
    const char* paths[] = {a.c_str(), b.c_str()};

    sualb_bench_options opts;
    sualb_bench_options_init(&opts, 1);
    opts.time_limit_s = 60.0;
    char* table = nullptr;
    char* summary = nullptr;
    EXPECT(sualb_bench_run(paths, 2, &opts, &table, &summary) == SUALB_OK);
    EXPECT(table && std::strstr(table, "mixer7"));
    EXPECT(table && std::strstr(table, "three_tasks"));
    EXPECT(summary && std::strstr(summary, "A"));
    sualb_string_free(table);
    sualb_string_free(summary);

    EXPECT(sualb_bench_run(nullptr, 1, &opts, &table, &summary) == SUALB_ERR_USAGE);
}

int main() {
    error_paths();
    instance_roundtrip();
    warnings_and_validation();
    solve_type1();
    solve_type2_and_infeasible();
    oracle_checks();
    bench_through_the_boundary();
    if (failures == 0) {
        std::printf("capi_tests: all checks passed\n");
        return 0;
    }
    std::printf("capi_tests: %d check(s) failed\n", failures);
    return 1;
}
