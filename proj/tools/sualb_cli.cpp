#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sualb.h"

namespace {

// 0 solved, 1 usage/io/parse, 2 invalid instance, 3 proven infeasible,
// 4 timeout without a solution.
enum ExitCode { kOk = 0, kUsage = 1, kInvalid = 2, kInfeasible = 3, kTimeout = 4 };

int exit_for(int err) {
    if (err == SUALB_OK) return kOk;
    if (err == SUALB_ERR_INVALID) return kInvalid;
    return kUsage;
}

int fail(int err) {
    std::fprintf(stderr, "error: %s\n", sualb_last_error());
    return exit_for(err);
}

double default_time_limit() {
    if (const char* env = std::getenv("SUALB_TIME_LIMIT")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return 1800.0;
}

sualb_rounding parse_rounding(const std::string& name) {
    if (name == "floor") return SUALB_ROUND_FLOOR;
    if (name == "ceil") return SUALB_ROUND_CEIL;
    return SUALB_ROUND_HALF_UP;  // "half" and "half-up" both land here
}

const std::vector<std::string> kRoundNames = {"floor", "half", "half-up", "ceil"};

struct SolveArgs {
    std::string path;
    double time_limit = default_time_limit();
    bool no_bounds = false;
    bool no_dominance = false;
    bool show_stats = false;
    bool show_solution = false;
    std::string trace_path;
    std::size_t node_cap = 0;
};

void add_common(CLI::App* cmd, SolveArgs& args) {
    cmd->add_option("instance", args.path, "instance file (.alb or canonical)")->required();
    cmd->add_option("--time-limit", args.time_limit,
                    "seconds before the search stops (env SUALB_TIME_LIMIT)");
    cmd->add_flag("--no-dual-bounds,--no-bounds", args.no_bounds, "disable the dual bound");
    cmd->add_flag("--no-dominance", args.no_dominance, "disable dominance pruning");
    cmd->add_flag("--stats", args.show_stats, "print search statistics");
    cmd->add_flag("--solution", args.show_solution, "print the station assignment");
    cmd->add_option("--trace", args.trace_path, "write the incumbent trace to this file");
    cmd->add_option("--node-cap", args.node_cap, "cap on nodes kept per layer");
}

int report(sualb_result* res, const SolveArgs& args, const char* objective_label) {
    sualb_solve_status status = sualb_result_status(res);
    const char* status_name[] = {"optimal", "feasible", "infeasible", "timeout-no-solution"};
    std::printf("status: %s\n", status_name[status]);
    long long obj = sualb_result_objective(res);
    if (obj >= 0) std::printf("%s: %lld\n", objective_label, obj);
    std::printf("lower bound: %lld\n", sualb_result_lower_bound(res));
    std::printf("runtime: %.3fs\n", sualb_result_runtime_s(res));

    if (args.show_solution && obj >= 0) {
        int k = sualb_result_station_count(res);
        for (int s = 0; s < k; ++s) {
            std::printf("station %d:", s + 1);
            int size = sualb_result_station_size(res, s);
            for (int p = 0; p < size; ++p)
                std::printf(" %d", sualb_result_station_task(res, s, p));
            std::printf("  (time %lld)\n", sualb_result_station_time(res, s));
        }
    }
    if (args.show_stats) {
        sualb_solve_stats st;
        sualb_result_stats(res, &st);
        std::printf("expansions: %lld\n", st.expansions);
        std::printf("generated: %lld\n", st.generated);
        std::printf("pruned by bound: %lld\n", st.pruned_by_bound);
        std::printf("pruned by dominance: %lld\n", st.pruned_by_dominance);
        std::printf("duplicates: %lld\n", st.duplicates);
        std::printf("beam iterations: %d\n", st.beam_iterations);
        std::printf("peak layer: %lld\n", st.peak_layer);
        if (st.improve_calls > 0)
            std::printf("improvement: %lld/%lld incumbents improved\n", st.improve_successes,
                        st.improve_calls);
    }
    if (!args.trace_path.empty()) {
        std::ofstream out(args.trace_path);
        if (!out) {
            std::fprintf(stderr, "error: cannot write %s\n", args.trace_path.c_str());
            return kUsage;
        }
        out << "seconds\tobjective\n";
        int len = sualb_result_trace_length(res);
        for (int i = 0; i < len; ++i) {
            double sec;
            long long o;
            sualb_result_trace_point(res, i, &sec, &o);
            char line[64];
            std::snprintf(line, sizeof line, "%.6f\t%lld\n", sec, o);
            out << line;
        }
    }
    switch (status) {
        case SUALB_STATUS_OPTIMAL:
        case SUALB_STATUS_FEASIBLE: return kOk;
        case SUALB_STATUS_INFEASIBLE: return kInfeasible;
        default: return kTimeout;
    }
}

int run_solve(const SolveArgs& args, int problem_type, int stations, sualb_rounding rounding,
              bool improve) {
    sualb_instance* inst = nullptr;
    int err = sualb_instance_load(args.path.c_str(), &inst);
    if (err != SUALB_OK) return fail(err);
    for (int i = 0; i < sualb_instance_warning_count(inst); ++i)
        std::fprintf(stderr, "warning: %s\n", sualb_instance_warning(inst, i));

    sualb_solve_options opts;
    sualb_solve_options_init(&opts, problem_type);
    opts.time_limit_s = args.time_limit;
    opts.station_count = stations;
    opts.rounding = rounding;
    opts.use_dual_bounds = args.no_bounds ? 0 : 1;
    opts.use_dominance = args.no_dominance ? 0 : 1;
    opts.local_improve = improve ? 1 : 0;
    opts.node_cap = args.node_cap;

    sualb_result* res = nullptr;
    err = sualb_solve(inst, &opts, &res);
    if (err != SUALB_OK) {
        sualb_instance_free(inst);
        return fail(err);
    }
    int code = report(res, args, problem_type == 1 ? "stations" : "cycle time");
    sualb_result_free(res);
    sualb_instance_free(inst);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver for assembly line balancing with sequence-dependent setups"};
    app.require_subcommand(1);

    SolveArgs s1, s2;
    CLI::App* solve1 = app.add_subcommand("solve1", "minimize stations for a given cycle time");
    add_common(solve1, s1);

    CLI::App* solve2 = app.add_subcommand("solve2", "minimize the cycle time for m stations");
    add_common(solve2, s2);
    int stations = 0;
    std::string round_name = "half-up";
    bool improve = false;
    solve2->add_option("--stations,--m", stations, "fixed station count (else instance/derived)");
    solve2->add_option("--round", round_name, "derivation rounding: floor, half(-up), ceil")
        ->check(CLI::IsMember(kRoundNames));
    solve2->add_flag("--improve,--local-improve", improve,
                     "re-sequence stations of each incumbent");

    CLI::App* validate = app.add_subcommand("validate", "check an instance file");
    std::string v_path;
    int v_type = 0;
    std::string v_write;
    bool v_oracle = false;
    validate->add_option("instance", v_path, "instance file")->required();
    validate->add_option("--type", v_type, "intended problem type (1 or 2)")
        ->check(CLI::Range(0, 2));
    validate->add_option("--write-canonical", v_write, "write the canonical form here");
    validate->add_flag("--oracle", v_oracle,
                       "also solve exhaustively (10 tasks at most) and print the optimum");

    CLI::App* bench = app.add_subcommand("bench", "run a set of instances and tabulate");
    std::vector<std::string> b_files;
    int b_type = 1;
    double b_limit = default_time_limit();
    int b_jobs = 1;
    std::string b_out, b_best, b_alpha, b_round = "half-up";
    bool b_no_bounds = false, b_no_dom = false, b_improve = false, b_summary = false;
    bench->add_option("instances", b_files, "instance files")->required();
    bench->add_option("--type", b_type, "problem type (1 or 2)")
        ->required()
        ->check(CLI::Range(1, 2));
    bench->add_option("--time-limit", b_limit, "seconds per instance");
    bench->add_option("--jobs", b_jobs, "worker threads")->check(CLI::PositiveNumber);
    bench->add_option("--out", b_out, "directory for tsv/trace outputs");
    bench->add_option("--best-known", b_best, "tsv of name and objective for gap reporting");
    bench->add_option("--alpha", b_alpha, "label all rows with this setup scale");
    bench->add_option("--round", b_round, "rounding when deriving station counts")
        ->check(CLI::IsMember(kRoundNames));
    bench->add_flag("--no-dual-bounds,--no-bounds", b_no_bounds, "disable the dual bound");
    bench->add_flag("--no-dominance", b_no_dom, "disable dominance pruning");
    bench->add_flag("--improve", b_improve, "re-sequence incumbent stations (type 2)");
    bench->add_flag("--summary", b_summary, "also print the class/alpha summary");

    CLI11_PARSE(app, argc, argv);

    if (solve1->parsed()) return run_solve(s1, 1, 0, SUALB_ROUND_HALF_UP, false);
    if (solve2->parsed())
        return run_solve(s2, 2, stations, parse_rounding(round_name), improve);

    if (validate->parsed()) {
        sualb_instance* inst = nullptr;
        int err = sualb_instance_load(v_path.c_str(), &inst);
        if (err != SUALB_OK) return fail(err);
        for (int i = 0; i < sualb_instance_warning_count(inst); ++i)
            std::printf("warning: %s\n", sualb_instance_warning(inst, i));
        char* report = nullptr;
        err = sualb_instance_validate(inst, v_type, &report);
        if (report) {
            std::fputs(report, stdout);
            sualb_string_free(report);
        }
        if (err == SUALB_OK) std::printf("ok: %d tasks\n", sualb_instance_task_count(inst));
        int code = exit_for(err);
        if (err == SUALB_OK && v_oracle) {
            bool run1 = v_type == 1 || (v_type == 0 && sualb_instance_cycle_time(inst) >= 0);
            bool run2 = v_type == 2 || (v_type == 0 && sualb_instance_station_count(inst) >= 1);
            long long obj = 0;
            if (run1) {
                if (sualb_oracle_solve(inst, 1, 0, &obj) != SUALB_OK)
                    code = fail(SUALB_ERR_USAGE);
                else if (obj < 0)
                    std::printf("oracle: infeasible as type 1\n");
                else
                    std::printf("oracle stations: %lld\n", obj);
            }
            if (run2 && code == kOk) {
                if (sualb_oracle_solve(inst, 2, 0, &obj) != SUALB_OK)
                    code = fail(SUALB_ERR_USAGE);
                else
                    std::printf("oracle cycle time: %lld\n", obj);
            }
            if (!run1 && !run2) {
                std::fprintf(stderr,
                             "error: nothing for the oracle to solve; give the instance a cycle "
                             "time or a station count, or pass --type\n");
                code = kUsage;
            }
        }
        if (err == SUALB_OK && !v_write.empty()) {
            int werr = sualb_instance_write(inst, v_write.c_str());
            if (werr != SUALB_OK) code = fail(werr);
        }
        sualb_instance_free(inst);
        return code;
    }

    // bench
    sualb_bench_options opts;
    sualb_bench_options_init(&opts, b_type);
    opts.time_limit_s = b_limit;
    opts.rounding = parse_rounding(b_round);
    opts.use_dual_bounds = b_no_bounds ? 0 : 1;
    opts.use_dominance = b_no_dom ? 0 : 1;
    opts.local_improve = b_improve ? 1 : 0;
    opts.jobs = b_jobs;
    if (!b_out.empty()) opts.out_dir = b_out.c_str();
    if (!b_best.empty()) opts.best_known_path = b_best.c_str();
    if (!b_alpha.empty()) opts.alpha_label = b_alpha.c_str();

    std::vector<const char*> paths;
    paths.reserve(b_files.size());
    for (auto& f : b_files) paths.push_back(f.c_str());

    char* table = nullptr;
    char* summary = nullptr;
    int err = sualb_bench_run(paths.data(), static_cast<int>(paths.size()), &opts, &table,
                              b_summary ? &summary : nullptr);
    if (err != SUALB_OK) return fail(err);
    if (table) {
        std::fputs(table, stdout);
        sualb_string_free(table);
    }
    if (summary) {
        std::printf("\n");
        std::fputs(summary, stdout);
        sualb_string_free(summary);
    }
    return kOk;
}
