#ifndef SUALB_LOCAL_IMPROVE_HPP
#define SUALB_LOCAL_IMPROVE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "sualb/preprocess.hpp"
#include "sualb/search.hpp"

namespace sualb {

// One station lifted out of a solution: task ids, precedence restricted to
// the station, and the setup rows needed to sequence it in isolation.
struct StationSubproblem {
    std::vector<int> tasks;                 // original ids, input order
    std::vector<TaskSet> within_pred;       // index-local predecessor sets
    std::vector<std::vector<int>> fwd;      // local forward setups
    std::vector<std::vector<int>> bwd;      // local backward setups
    std::vector<int> min_fwd;               // cheapest local way into each task
    std::vector<int> min_bwd;               // cheapest local closing setup per first task
    long long processing = 0;               // sum of task times, fixed
};

StationSubproblem make_station_subproblem(const Instance& inst, const DerivedData& d,
                                          const std::vector<int>& tasks);

// Optimal sequence (original ids) and its setup cost (forward setups plus the
// closing backward setup). Exact subset DP up to exact_threshold tasks, the
// anytime beam search on the sequencing model above that.
std::pair<std::vector<int>, long long> resequence_station(const StationSubproblem& sub,
                                                          int exact_threshold = 18);

// Re-sequences stations in decreasing order of station time, keeping every
// strict improvement, and stops at the first station whose new time fails to
// beat its old time or to drop below the next station's time (0 after the
// last). Returns the rebuilt solution when any station improved (its cycle
// time never exceeds the input's), nullopt otherwise.
std::optional<Solution> local_improvement(const Instance& inst, const DerivedData& d,
                                          const Solution& sol, SolveStats* stats = nullptr,
                                          int exact_threshold = 18);

}  // namespace sualb

#endif
