#ifndef SUALB_TESTS_SUPPORT_HPP
#define SUALB_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "sualb/instance.hpp"

namespace testsupport {

// Random but always well-formed instance: acyclic precedence (edges only go
// from lower to higher id), nonnegative setups, task times >= 1.
inline sualb::Instance random_instance(std::mt19937& rng, int n, double edge_prob = 0.3,
                                       int max_time = 9, int max_setup = 4) {
    sualb::Instance inst;
    inst.name = "random" + std::to_string(n);
    inst.n = n;
    std::uniform_int_distribution<int> time_dist(1, max_time);
    std::uniform_int_distribution<int> setup_dist(0, max_setup);
    std::bernoulli_distribution edge(edge_prob);
    inst.task_times.resize(n);
    for (int i = 0; i < n; ++i) inst.task_times[i] = time_dist(rng);
    inst.fwd_setup.assign(n, std::vector<int>(n, 0));
    inst.bwd_setup.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j) inst.fwd_setup[i][j] = setup_dist(rng);
            inst.bwd_setup[i][j] = setup_dist(rng);
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge(rng)) inst.precedence.emplace_back(i, j);
    return inst;
}

// Cycle time that keeps every task feasible on its own, plus random slack.
inline void give_cycle_time(sualb::Instance& inst, std::mt19937& rng, int extra_max = 12) {
    int need = 0;
    for (int i = 0; i < inst.n; ++i)
        need = std::max(need, inst.task_times[i] + inst.bwd_setup[i][i]);
    std::uniform_int_distribution<int> extra(0, extra_max);
    inst.cycle_time = need + extra(rng);
}

inline void give_station_count(sualb::Instance& inst, std::mt19937& rng, int cap = 4) {
    std::uniform_int_distribution<int> m(1, std::max(1, std::min(cap, inst.n)));
    inst.station_count = m(rng);
}

inline std::string data_path(const std::string& name) {
    return std::string(SUALB_DATA_DIR) + "/" + name;
}

}  // namespace testsupport

#endif
