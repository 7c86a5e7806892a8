#ifndef SUALB_DP_MODEL_HPP
#define SUALB_DP_MODEL_HPP

#include <vector>

#include "sualb/preprocess.hpp"
#include "sualb/types.hpp"

namespace sualb {

// --- states ---------------------------------------------------------------
//
// Both models walk stations left to right, one task at a time. prev/first
// equal to the sentinel mean "no station is open".

struct State1 {
    TaskSet unscheduled;
    int station_idx = 0;  // stations opened so far
    int prev_task = 0;
    int first_task = 0;
    long long remaining = 0;  // idle time left in the open station
};

struct State2 {
    TaskSet unscheduled;
    int station_idx = 0;
    int prev_task = 0;
    int first_task = 0;
    long long used_time = 0;  // time of the station being filled (plus closing setup once closed)
    long long cycle = 0;      // max station time committed so far
};

State1 target_state1(const DerivedData& d);
State2 target_state2(const DerivedData& d);

bool is_base(const State1& s, const DerivedData& d);
bool is_base(const State2& s, const DerivedData& d);

// --- transitions ----------------------------------------------------------

enum class TransitionKind { assign_first, assign_next, close_station };

struct TransitionRecord {
    TransitionKind kind;
    int task;          // -1 for close_station
    long long weight;  // type 1: stations added; type 2: station time so far
};

const char* to_string(TransitionKind k);

std::vector<std::pair<TransitionRecord, State1>> successors_type1(const State1& s,
                                                                  const DerivedData& d);
std::vector<std::pair<TransitionRecord, State2>> successors_type2(const State2& s,
                                                                  const DerivedData& d);

// --- dual bounds ----------------------------------------------------------

// Weights of the two- and three-partition packing bounds, stored in sixths
// so every value in {0, 1/3, 1/2, 2/3, 1} stays exact.
struct KnapsackWeights {
    int w2 = 0;   // 1 for t in (c/2, c]
    int w2p = 0;  // 1/2 for t == c/2
    int w3 = 0;   // thirds ladder
};
KnapsackWeights knapsack_weights(long long t, long long c);

struct DualBoundTerms1 {
    long long setup_aware = 0;    // forward/backward setup-loaded capacity bound
    long long backward_only = 0;  // capacity bound keeping the closing setup
    long long capacity_only = 0;  // plain remaining-work bound
    long long pack2 = 0;
    long long pack3 = 0;
    long long value() const;  // max of the five, clamped at 0
};
DualBoundTerms1 dual_bound_type1_terms(const State1& s, const DerivedData& d);
long long dual_bound_type1(const State1& s, const DerivedData& d);

// Type-2 bounds are reported as the final cycle value they imply (the raw
// increments over s.cycle are kept for inspection; they may be negative).
struct DualBoundTerms2 {
    long long current_cycle = 0;
    long long setup_aware = 0;
    long long capacity_only = 0;
    long long setup_aware_increment = 0;
    long long capacity_increment = 0;
    long long value() const;  // max(current_cycle, setup_aware, capacity_only)
};
DualBoundTerms2 dual_bound_type2_terms(const State2& s, const DerivedData& d);
long long dual_bound_type2(const State2& s, const DerivedData& d);

// --- dominance ------------------------------------------------------------

// True when the path ending in a renders the one ending in b redundant.
// Requires equal unscheduled sets and equal prev/first (and equal station
// count for type 2, where it is part of the registry key).
bool dominates(const State1& a, const State1& b, long long g_a, long long g_b);
bool dominates(const State2& a, const State2& b, long long g_a, long long g_b);

}  // namespace sualb

#endif
