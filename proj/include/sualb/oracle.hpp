#ifndef SUALB_ORACLE_HPP
#define SUALB_ORACLE_HPP

#include <optional>

#include "sualb/dp_model.hpp"
#include "sualb/instance.hpp"
#include "sualb/search.hpp"

namespace sualb {

// Reference results by exhaustive enumeration of every precedence-feasible
// task sequence and every station-break placement. No bounds, no dominance,
// own precedence closure; shares nothing with the solver beyond the problem
// definition. Guarded to n <= kOracleMaxTasks (UsageError beyond).

inline constexpr int kOracleMaxTasks = 10;

struct OracleResult {
    std::optional<long long> objective;  // empty = infeasible
    std::optional<Solution> solution;    // one witness
};

OracleResult brute_force_type1(const Instance& inst);
OracleResult brute_force_type2(const Instance& inst, int m);

// Cost to go from a mid-search state: additional stations (type 1) or best
// reachable final cycle (type 2). Empty when no feasible completion exists.
std::optional<long long> oracle_cost_to_go(const Instance& inst, const State1& s);
std::optional<long long> oracle_cost_to_go(const Instance& inst, const State2& s, int m);

}  // namespace sualb

#endif
