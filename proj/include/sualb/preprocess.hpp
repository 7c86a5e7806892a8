#ifndef SUALB_PREPROCESS_HPP
#define SUALB_PREPROCESS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "sualb/instance.hpp"
#include "sualb/types.hpp"

namespace sualb {

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything the models need, computed once per (instance, problem type).
// The setup matrices and per-task data are re-stored here extended by the
// sentinel index n (an artificial "no task" with zero time and zero setups),
// so model code can index transitions uniformly.
struct DerivedData {
    int n = 0;
    ProblemType type = ProblemType::type1;

    std::vector<TaskSet> pred_direct, succ_direct;
    std::vector<TaskSet> pred_star, succ_star;  // transitive

    // Station windows, 1-based station indices.
    std::vector<int> earliest_station;             // E_i
    std::vector<int> latest_station;               // L_i
    std::vector<std::vector<int>> feasible_tasks;  // FT_k, k in 1..m_upper
    std::vector<TaskSet> incompatible;             // tasks whose windows are disjoint from i's

    // Which tasks may sit next to which inside a station.
    std::vector<TaskSet> fwd_followers;  // may come directly after i
    std::vector<TaskSet> fwd_preds;      // may come directly before i
    std::vector<TaskSet> bwd_followers;  // may open the station that i closes
    std::vector<TaskSet> bwd_preds;      // may close the station that i opens

    // Cheapest way anything can reach task i, sentinel entry = 0.
    std::vector<int> min_fwd_setup;  // size n+1
    std::vector<int> min_bwd_setup;  // size n+1

    int m_lower = 0, m_upper = 0;
    long long c_lower = 0, c_upper = 0;

    std::vector<int> definite_stations;  // 1..m_lower
    std::vector<int> possible_stations;  // m_lower+1..m_upper
    std::vector<int> all_stations;

    // Extended copies (index n = sentinel).
    std::vector<int> time_ext;                  // size n+1, [n] = 0
    std::vector<std::vector<int>> fwd_ext;      // (n+1)^2
    std::vector<std::vector<int>> bwd_ext;

    int sentinel() const { return n; }
    long long cycle_cap() const { return c_upper; }      // type 1: the given c
    int station_cap() const { return m_upper; }          // type 2: the given m
};

// (pred_star, succ_star) for the given edge list.
std::pair<std::vector<TaskSet>, std::vector<TaskSet>> transitive_closure(
    const std::vector<std::pair<int, int>>& edges, int n);

// (m_lower, m_upper) for a cycle-time instance. The upper bound comes from a
// first-fit pass in lowest-index topological order; throws InfeasibleError
// when some task cannot occupy a station on its own.
std::pair<int, int> compute_bounds_type1(const Instance& inst, int c,
                                         const std::vector<TaskSet>& pred_star);

// (c_lower, c_upper) for a station-count instance. The upper bound is the
// best first-fit cycle found by bisecting the capacity handed to the same
// greedy pass that compute_bounds_type1 uses.
std::pair<long long, long long> compute_bounds_type2(const Instance& inst, int m,
                                                     const std::vector<TaskSet>& pred_star);

// Full preprocessing. For type 2, m must be resolved by the caller first.
// Throws InfeasibleError when the windows prove the instance infeasible.
DerivedData make_derived_data(const Instance& inst, ProblemType type, int m_resolved = 0);

// Human-readable dump used by the validate subcommand.
std::string describe_derived(const Instance& inst, const DerivedData& d);

}  // namespace sualb

#endif
