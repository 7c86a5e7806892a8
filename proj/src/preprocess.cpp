#include "sualb/preprocess.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sualb {

std::pair<std::vector<TaskSet>, std::vector<TaskSet>> transitive_closure(
    const std::vector<std::pair<int, int>>& edges, int n) {
    std::vector<TaskSet> succ(n), pred(n);
    std::vector<std::vector<int>> adj(n);
    std::vector<int> indeg(n, 0);
    for (auto& [a, b] : edges) {
        adj[a].push_back(b);
        ++indeg[b];
    }
    // Kahn order, then fold successor sets from the back.
    std::vector<int> order;
    order.reserve(n);
    std::vector<int> stack;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) stack.push_back(i);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int u : adj[v])
            if (--indeg[u] == 0) stack.push_back(u);
    }
    if (static_cast<int>(order.size()) != n)
        throw InfeasibleError("precedence relations contain a cycle");
    for (int idx = n - 1; idx >= 0; --idx) {
        int v = order[idx];
        for (int u : adj[v]) {
            succ[v].add(u);
            succ[v] = succ[v] | succ[u];
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = succ[i].next(0); j >= 0; j = succ[i].next(j + 1)) pred[j].add(i);
    return {pred, succ};
}

namespace {

struct GreedyOutcome {
    bool feasible = false;
    int stations = 0;
    long long max_station_time = 0;
};

// First-fit in lowest-index topological order: keep appending to the open
// station while the load, the forward setup and the tentative closing setup
// still fit the capacity.
GreedyOutcome greedy_first_fit(const Instance& inst, const std::vector<TaskSet>& pred_star,
                               long long capacity) {
    GreedyOutcome out;
    int n = inst.n;
    TaskSet unscheduled = TaskSet::full(n);
    int first = -1, prev = -1;
    long long used = 0;
    auto close = [&] {
        long long st = used + inst.bwd_setup[prev][first];
        out.max_station_time = std::max(out.max_station_time, st);
        ++out.stations;
        first = prev = -1;
        used = 0;
    };
    for (int placed = 0; placed < n; ++placed) {
        int pick = -1;
        for (int i = unscheduled.next(0); i >= 0; i = unscheduled.next(i + 1)) {
            if (!unscheduled.intersects(pred_star[i])) {
                pick = i;
                break;
            }
        }
        if (pick < 0) return out;  // cycle; callers validate first
        long long alone = inst.task_times[pick] + inst.bwd_setup[pick][pick];
        if (first >= 0) {
            long long load = used + inst.task_times[pick] + inst.fwd_setup[prev][pick];
            if (load + inst.bwd_setup[pick][first] <= capacity) {
                used = load;
                prev = pick;
            } else {
                close();
                if (alone > capacity) return out;
                first = prev = pick;
                used = inst.task_times[pick];
            }
        } else {
            if (alone > capacity) return out;
            first = prev = pick;
            used = inst.task_times[pick];
        }
        unscheduled.remove(pick);
    }
    if (first >= 0) close();
    out.feasible = true;
    return out;
}

}  // namespace

std::pair<int, int> compute_bounds_type1(const Instance& inst, int c,
                                         const std::vector<TaskSet>& pred_star) {
    long long sum = inst.total_time();
    int m_lower = static_cast<int>(std::max<long long>(1, ceil_div(sum, c)));
    GreedyOutcome g = greedy_first_fit(inst, pred_star, c);
    if (!g.feasible) {
        // The first-fit pass gives up when a task cannot open a station on its
        // own (t_i + mu_ii > c). That only proves infeasibility when the bare
        // processing time already exceeds c; otherwise the task may still ride
        // in the middle of some station, so fall back to the trivial cap of
        // one station per task and let the search settle the question.
        for (int i = 0; i < inst.n; ++i)
            if (inst.task_times[i] > c)
                throw InfeasibleError("task " + std::to_string(i + 1) + " needs " +
                                      std::to_string(inst.task_times[i]) +
                                      " on its own, above the cycle time " + std::to_string(c));
        return {m_lower, inst.n};
    }
    return {m_lower, g.stations};
}

std::pair<long long, long long> compute_bounds_type2(const Instance& inst, int m,
                                                     const std::vector<TaskSet>& pred_star) {
    long long sum = inst.total_time();
    long long c_lower =
        std::max<long long>(*std::max_element(inst.task_times.begin(), inst.task_times.end()),
                            ceil_div(sum, m));
    // All tasks in one station can never need more than this.
    long long worst = 0;
    int max_mu = 0;
    for (int i = 0; i < inst.n; ++i) {
        int max_tau = 0;
        for (int j = 0; j < inst.n; ++j) {
            max_tau = std::max(max_tau, inst.fwd_setup[i][j]);
            max_mu = std::max(max_mu, inst.bwd_setup[i][j]);
        }
        worst += inst.task_times[i] + max_tau;
    }
    worst += max_mu;

    long long best = worst;
    long long lo = c_lower, hi = worst;
    while (lo <= hi) {
        long long mid = lo + (hi - lo) / 2;
        GreedyOutcome g = greedy_first_fit(inst, pred_star, mid);
        if (g.feasible && g.stations <= m) {
            best = std::min(best, g.max_station_time);
            hi = mid - 1;
        } else {
            lo = mid + 1;
        }
    }
    return {c_lower, std::max(c_lower, best)};
}

DerivedData make_derived_data(const Instance& inst, ProblemType type, int m_resolved) {
    DerivedData d;
    d.n = inst.n;
    d.type = type;
    int n = inst.n;
    if (n < 1) throw UsageError("cannot preprocess an empty instance");

    std::tie(d.pred_star, d.succ_star) = transitive_closure(inst.precedence, n);
    d.pred_direct.assign(n, TaskSet{});
    d.succ_direct.assign(n, TaskSet{});
    for (auto& [a, b] : inst.precedence) {
        d.succ_direct[a].add(b);
        d.pred_direct[b].add(a);
    }

    if (type == ProblemType::type1) {
        if (!inst.cycle_time) throw UsageError("type 1 requires a cycle time");
        long long c = *inst.cycle_time;
        d.c_lower = d.c_upper = c;
        std::tie(d.m_lower, d.m_upper) = compute_bounds_type1(inst, static_cast<int>(c), d.pred_star);
    } else {
        int m = m_resolved > 0 ? m_resolved : inst.station_count.value_or(0);
        if (m < 1) throw UsageError("type 2 requires a resolved station count >= 1");
        d.m_lower = d.m_upper = m;
        std::tie(d.c_lower, d.c_upper) = compute_bounds_type2(inst, m, d.pred_star);
    }

    // Station windows against the weakest usable capacity and station budget.
    d.earliest_station.assign(n, 1);
    d.latest_station.assign(n, d.m_upper);
    for (int i = 0; i < n; ++i) {
        long long ahead = inst.task_times[i], behind = inst.task_times[i];
        for (int j = d.pred_star[i].next(0); j >= 0; j = d.pred_star[i].next(j + 1))
            ahead += inst.task_times[j];
        for (int j = d.succ_star[i].next(0); j >= 0; j = d.succ_star[i].next(j + 1))
            behind += inst.task_times[j];
        d.earliest_station[i] = static_cast<int>(ceil_div(ahead, d.c_upper));
        d.latest_station[i] = d.m_upper + 1 - static_cast<int>(ceil_div(behind, d.c_upper));
        if (d.earliest_station[i] > d.latest_station[i])
            throw InfeasibleError("task " + std::to_string(i + 1) +
                                  " has an empty station window [" +
                                  std::to_string(d.earliest_station[i]) + "," +
                                  std::to_string(d.latest_station[i]) + "]");
    }
    d.feasible_tasks.assign(d.m_upper + 1, {});
    for (int k = 1; k <= d.m_upper; ++k)
        for (int i = 0; i < n; ++i)
            if (d.earliest_station[i] <= k && k <= d.latest_station[i])
                d.feasible_tasks[k].push_back(i);

    d.incompatible.assign(n, TaskSet{});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (d.latest_station[j] < d.earliest_station[i] ||
                d.latest_station[i] < d.earliest_station[j])
                d.incompatible[i].add(j);

    TaskSet all = TaskSet::full(n);
    d.fwd_followers.assign(n, TaskSet{});
    d.bwd_followers.assign(n, TaskSet{});
    for (int i = 0; i < n; ++i) {
        TaskSet ff = all;
        ff = ff - (d.succ_star[i] - d.succ_direct[i]);  // skipping a follower in between
        ff = ff - d.pred_star[i];
        ff = ff - d.incompatible[i];
        ff.remove(i);
        d.fwd_followers[i] = ff;
        TaskSet fb = all;  // may open the next cycle after i closes; i itself qualifies
        fb = fb - d.succ_star[i];
        fb = fb - d.incompatible[i];
        d.bwd_followers[i] = fb;
    }
    d.fwd_preds.assign(n, TaskSet{});
    d.bwd_preds.assign(n, TaskSet{});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (d.fwd_followers[j].contains(i)) d.fwd_preds[i].add(j);
            if (d.bwd_followers[j].contains(i)) d.bwd_preds[i].add(j);
        }

    d.min_fwd_setup.assign(n + 1, 0);
    d.min_bwd_setup.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        int best = -1;
        for (int j = d.fwd_preds[i].next(0); j >= 0; j = d.fwd_preds[i].next(j + 1))
            best = best < 0 ? inst.fwd_setup[j][i] : std::min(best, inst.fwd_setup[j][i]);
        d.min_fwd_setup[i] = std::max(best, 0);
        best = -1;
        for (int j = d.bwd_preds[i].next(0); j >= 0; j = d.bwd_preds[i].next(j + 1))
            best = best < 0 ? inst.bwd_setup[j][i] : std::min(best, inst.bwd_setup[j][i]);
        d.min_bwd_setup[i] = std::max(best, 0);
    }

    for (int k = 1; k <= d.m_lower; ++k) d.definite_stations.push_back(k);
    for (int k = d.m_lower + 1; k <= d.m_upper; ++k) d.possible_stations.push_back(k);
    d.all_stations = d.definite_stations;
    d.all_stations.insert(d.all_stations.end(), d.possible_stations.begin(),
                          d.possible_stations.end());

    d.time_ext = inst.task_times;
    d.time_ext.push_back(0);
    d.fwd_ext.assign(n + 1, std::vector<int>(n + 1, 0));
    d.bwd_ext.assign(n + 1, std::vector<int>(n + 1, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            d.fwd_ext[i][j] = inst.fwd_setup[i][j];
            d.bwd_ext[i][j] = inst.bwd_setup[i][j];
        }
    return d;
}

std::string describe_derived(const Instance& inst, const DerivedData& d) {
    std::ostringstream out;
    out << "derived data (type " << (d.type == ProblemType::type1 ? 1 : 2) << "):\n";
    out << "  stations: lower " << d.m_lower << ", upper " << d.m_upper << "\n";
    out << "  cycle time: lower " << d.c_lower << ", upper " << d.c_upper << "\n";
    out << "  station windows:\n";
    for (int i = 0; i < d.n; ++i) {
        out << "    task " << i + 1 << ": [" << d.earliest_station[i] << ","
            << d.latest_station[i] << "]"
            << "  min fwd setup " << d.min_fwd_setup[i] << ", min bwd setup "
            << d.min_bwd_setup[i] << "\n";
    }
    long long inc = 0;
    for (int i = 0; i < d.n; ++i) inc += d.incompatible[i].count();
    out << "  incompatible pairs: " << inc / 2 << "\n";
    out << "  total task time: " << inst.total_time() << "\n";
    return out.str();
}

}  // namespace sualb
