#include "sualb/oracle.hpp"

#include <climits>

namespace sualb {

// Deliberately plain: walk every precedence-feasible order with every break
// placement, test feasibility directly against the problem definition, keep
// the best. Availability only needs direct predecessors (transitivity comes
// free from walking a sequence), so nothing here leans on the preprocessing
// or bound machinery.

namespace {

struct Walk {
    const Instance& inst;
    std::vector<TaskSet> direct_pred;
    long long cycle_cap = LLONG_MAX;  // type 1
    int station_cap = INT_MAX;        // type 2
    bool minimize_stations = false;   // else minimize final cycle

    long long best_obj = LLONG_MAX;
    std::vector<std::vector<int>> best_stations;
    bool capture_solution = true;

    std::vector<std::vector<int>> done;
    std::vector<int> cur;

    explicit Walk(const Instance& i) : inst(i), direct_pred(i.n) {
        for (auto& [a, b] : i.precedence) direct_pred[b].add(a);
    }

    void candidate(long long obj) {
        if (obj < best_obj) {
            best_obj = obj;
            if (capture_solution) {
                best_stations = done;
                if (!cur.empty()) best_stations.push_back(cur);
            }
        }
    }

    // `used` includes processing and forward setups of the open station; the
    // closing setup is only added when the station actually closes.
    void rec(TaskSet us, int first, int prev, long long used, int opened, long long cycle) {
        if (us.empty()) {
            if (first < 0) {
                candidate(minimize_stations ? opened : cycle);
            } else {
                long long st = used + inst.bwd_setup[prev][first];
                if (st <= cycle_cap)
                    candidate(minimize_stations ? opened : std::max(cycle, st));
            }
            return;
        }
        for (int i = us.next(0); i >= 0; i = us.next(i + 1)) {
            if (us.intersects(direct_pred[i])) continue;
            TaskSet rest = us;
            rest.remove(i);
            if (first >= 0) {
                long long grown = used + inst.task_times[i] + inst.fwd_setup[prev][i];
                if (grown <= cycle_cap) {
                    cur.push_back(i);
                    rec(rest, first, i, grown, opened, cycle);
                    cur.pop_back();
                }
                long long st = used + inst.bwd_setup[prev][first];
                if (st <= cycle_cap && opened < station_cap &&
                    inst.task_times[i] <= cycle_cap) {
                    done.push_back(cur);
                    cur.assign(1, i);
                    rec(rest, i, i, inst.task_times[i], opened + 1, std::max(cycle, st));
                    cur.clear();
                    cur = done.back();
                    done.pop_back();
                }
            } else if (opened < station_cap && inst.task_times[i] <= cycle_cap) {
                cur.assign(1, i);
                rec(rest, i, i, inst.task_times[i], opened + 1, cycle);
                cur.clear();
            }
        }
    }
};

long long sequence_time(const Instance& inst, const std::vector<int>& seq) {
    long long t = inst.task_times[seq.front()];
    for (size_t k = 1; k < seq.size(); ++k)
        t += inst.fwd_setup[seq[k - 1]][seq[k]] + inst.task_times[seq[k]];
    return t + inst.bwd_setup[seq.back()][seq.front()];
}

OracleResult finish(Walk& w) {
    OracleResult res;
    if (w.best_obj == LLONG_MAX) return res;
    res.objective = w.best_obj;
    Solution sol;
    sol.stations = w.best_stations;
    for (auto& st : sol.stations) sol.station_times.push_back(sequence_time(w.inst, st));
    sol.objective = w.best_obj;
    res.solution = std::move(sol);
    return res;
}

void check_size(const Instance& inst) {
    if (inst.n > kOracleMaxTasks)
        throw UsageError("oracle is exhaustive and limited to " +
                         std::to_string(kOracleMaxTasks) + " tasks, instance has " +
                         std::to_string(inst.n));
    if (inst.n < 1) throw UsageError("oracle needs at least one task");
}

}  // namespace

OracleResult brute_force_type1(const Instance& inst) {
    check_size(inst);
    if (!inst.cycle_time) throw UsageError("type 1 oracle requires a cycle time");
    Walk w(inst);
    w.cycle_cap = *inst.cycle_time;
    w.minimize_stations = true;
    w.rec(TaskSet::full(inst.n), -1, -1, 0, 0, 0);
    return finish(w);
}

OracleResult brute_force_type2(const Instance& inst, int m) {
    check_size(inst);
    if (m < 1) throw UsageError("type 2 oracle requires m >= 1");
    Walk w(inst);
    w.station_cap = m;
    w.minimize_stations = false;
    w.rec(TaskSet::full(inst.n), -1, -1, 0, 0, 0);
    return finish(w);
}

std::optional<long long> oracle_cost_to_go(const Instance& inst, const State1& s) {
    check_size(inst);
    if (!inst.cycle_time) throw UsageError("type 1 oracle requires a cycle time");
    Walk w(inst);
    w.cycle_cap = *inst.cycle_time;
    w.minimize_stations = true;
    w.capture_solution = false;
    bool open = s.first_task != inst.n;
    if (open) {
        // The state tracks idle time; rebuild the load the open station carries.
        long long used = *inst.cycle_time - s.remaining;
        w.cur.assign(1, s.first_task);  // stand-in; only first/prev/load matter
        w.rec(s.unscheduled, s.first_task, s.prev_task, used, 0, 0);
    } else {
        w.rec(s.unscheduled, -1, -1, 0, 0, 0);
    }
    if (w.best_obj == LLONG_MAX) return std::nullopt;
    return w.best_obj;
}

std::optional<long long> oracle_cost_to_go(const Instance& inst, const State2& s, int m) {
    check_size(inst);
    if (m < 1) throw UsageError("type 2 oracle requires m >= 1");
    Walk w(inst);
    w.station_cap = m;
    w.minimize_stations = false;
    w.capture_solution = false;
    bool open = s.first_task != inst.n;
    if (open) {
        w.cur.assign(1, s.first_task);
        w.rec(s.unscheduled, s.first_task, s.prev_task, s.used_time, s.station_idx, s.cycle);
    } else {
        w.rec(s.unscheduled, -1, -1, 0, s.station_idx, s.cycle);
    }
    if (w.best_obj == LLONG_MAX) return std::nullopt;
    return w.best_obj;
}

}  // namespace sualb
