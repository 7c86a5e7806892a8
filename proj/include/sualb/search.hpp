#ifndef SUALB_SEARCH_HPP
#define SUALB_SEARCH_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sualb/dp_model.hpp"
#include "sualb/instance.hpp"
#include "sualb/metrics.hpp"
#include "sualb/preprocess.hpp"

namespace sualb {

struct Solution {
    std::vector<std::vector<int>> stations;  // task sequences, 0-based ids
    std::vector<long long> station_times;    // includes the closing setup
    long long objective = 0;                 // type 1: station count; type 2: max station time
};

enum class SolveStatus { optimal, feasible, infeasible, timeout_no_solution };
const char* to_string(SolveStatus s);

struct SolveStats {
    long long expansions = 0;
    long long generated = 0;
    long long pruned_by_bound = 0;
    long long pruned_by_dominance = 0;  // strictly dominated or replaced
    long long duplicates = 0;           // dropped with an identical record
    int beam_iterations = 0;
    long long peak_layer = 0;
    long long improve_calls = 0;     // station re-sequencing attempts
    long long improve_successes = 0;
};

struct SolveOptions {
    double time_limit_s = 1800.0;
    std::size_t node_cap = 2'000'000;          // per generated layer
    std::size_t registry_cap = 20'000'000;     // records kept across widths
    bool use_dual_bounds = true;
    bool use_dominance = true;
    bool local_improve = false;                // type 2 only
    RoundingPolicy rounding = RoundingPolicy::half_up;  // for deriving m in solve()

    // Fired after each incumbent is recorded; exceptions propagate to the
    // caller once the incumbent and trace entry are already stored.
    std::function<void(const Solution&, double seconds)> on_incumbent;

    // Test hooks: observe every expanded state.
    std::function<void(const State1&)> observe_expand1;
    std::function<void(const State2&)> observe_expand2;
};

struct SolveResult {
    SolveStatus status = SolveStatus::timeout_no_solution;
    std::optional<Solution> best;
    long long lower_bound = 0;
    double runtime_s = 0.0;
    IncumbentTrace trace;
    SolveStats stats;
};

// Complete anytime beam search over the corresponding model: width 1, then
// doubling, sharing one dominance registry per run. A width pass that ends
// without ever discarding a node for width or capacity reasons proves the
// incumbent optimal (or the instance infeasible when there is none).
SolveResult cabs_type1(const Instance& inst, const DerivedData& d, const SolveOptions& opts = {});
SolveResult cabs_type2(const Instance& inst, const DerivedData& d, const SolveOptions& opts = {});

// Validate + preprocess + solve. For type 2 the station count is taken from
// the instance or derived from its cycle time with opts.rounding.
SolveResult solve(const Instance& inst, ProblemType type, const SolveOptions& opts = {});

// Replays a transition sequence into stations; aborts via std::logic_error
// when the sequence or its recomputed objective is inconsistent.
Solution replay_transitions(const Instance& inst, const std::vector<TransitionRecord>& path,
                            ProblemType type, long long expected_objective);

// Station time of one sequence: processing plus consecutive forward setups
// plus the closing backward setup (mu[i][i] for a singleton).
long long station_time(const Instance& inst, const std::vector<int>& seq);

// Partition, precedence, capacity/station-count and objective checks.
Diagnostics validate_solution(const Instance& inst, const Solution& sol, ProblemType type);

}  // namespace sualb

#endif
