#ifndef SUALB_BENCH_HPP
#define SUALB_BENCH_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sualb/instance.hpp"
#include "sualb/search.hpp"

namespace sualb {

struct BenchConfig {
    ProblemType type = ProblemType::type1;
    double time_limit_s = 1800.0;
    RoundingPolicy rounding = RoundingPolicy::half_up;
    bool use_dual_bounds = true;
    bool use_dominance = true;
    bool local_improve = false;
    int jobs = 1;
    std::string out_dir;                          // empty = no files written
    std::optional<std::string> alpha_label;       // overrides per-instance metadata
    // instance name -> best-known objective, used for gaps when a run is not
    // proven optimal.
    std::map<std::string, long long> best_known;
};

struct BenchRow {
    std::string instance;
    std::string klass;   // size class A..D by task count
    std::string alpha;
    SolveStatus status = SolveStatus::timeout_no_solution;
    std::optional<long long> objective;
    long long bound = 0;
    double gap_pct = 0.0;      // 0 when proven optimal
    double runtime_s = 0.0;
    double primal_integral = 0.0;
    std::string error;         // parse/validation failure text, empty otherwise
};

// instance name -> objective; lines "name<TAB>objective", '#' comments.
std::map<std::string, long long> load_best_known(const std::string& path);

std::string size_class(int n);

// Solves every file (worker threads if jobs > 1, rows in input order) and,
// when out_dir is set, writes results.tsv, summary.tsv, curve files and one
// trace file per instance.
std::vector<BenchRow> run_benchmark(const std::vector<std::string>& files,
                                    const BenchConfig& cfg);

std::string format_results_table(const std::vector<BenchRow>& rows);
std::string format_summary(const std::vector<BenchRow>& rows);  // grouped by class and alpha

}  // namespace sualb

#endif
