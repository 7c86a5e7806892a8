#include "sualb/local_improve.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <unordered_map>

namespace sualb {

StationSubproblem make_station_subproblem(const Instance& inst, const DerivedData& d,
                                          const std::vector<int>& tasks) {
    StationSubproblem sub;
    sub.tasks = tasks;
    const int k = static_cast<int>(tasks.size());
    sub.within_pred.assign(k, TaskSet{});
    sub.fwd.assign(k, std::vector<int>(k, 0));
    sub.bwd.assign(k, std::vector<int>(k, 0));
    sub.min_fwd.assign(k, 0);
    sub.min_bwd.assign(k, 0);
    for (int a = 0; a < k; ++a) {
        sub.processing += inst.task_times[tasks[a]];
        for (int b = 0; b < k; ++b) {
            sub.fwd[a][b] = inst.fwd_setup[tasks[a]][tasks[b]];
            sub.bwd[a][b] = inst.bwd_setup[tasks[a]][tasks[b]];
            if (b != a && d.pred_star[tasks[a]].contains(tasks[b])) sub.within_pred[a].add(b);
        }
    }
    for (int a = 0; a < k; ++a) {
        int best_in = INT_MAX, best_back = INT_MAX;
        for (int b = 0; b < k; ++b) {
            if (b != a) best_in = std::min(best_in, sub.fwd[b][a]);
            best_back = std::min(best_back, sub.bwd[b][a]);
        }
        sub.min_fwd[a] = (best_in == INT_MAX) ? 0 : best_in;
        sub.min_bwd[a] = best_back;
    }
    return sub;
}

namespace {

constexpr long long kInf = LLONG_MAX / 4;

// Held-Karp over (subset, last) per admissible first task.
std::pair<std::vector<int>, long long> resequence_exact(const StationSubproblem& sub) {
    const int k = static_cast<int>(sub.tasks.size());
    std::vector<std::uint32_t> pred_mask(k, 0);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (sub.within_pred[a].contains(b)) pred_mask[a] |= (1u << b);

    const std::size_t full = (std::size_t{1} << k) - 1;
    std::vector<long long> dp(static_cast<std::size_t>(full + 1) * k);

    long long best_cost = kInf;
    int best_first = -1, best_last = -1;
    std::vector<long long> best_dp;

    for (int f0 = 0; f0 < k; ++f0) {
        if (pred_mask[f0] != 0) continue;
        std::fill(dp.begin(), dp.end(), kInf);
        dp[(std::size_t{1} << f0) * k + f0] = 0;
        for (std::size_t mask = (std::size_t{1} << f0); mask <= full; ++mask) {
            if (!(mask & (std::size_t{1} << f0))) continue;
            for (int last = 0; last < k; ++last) {
                long long g = dp[mask * k + last];
                if (g >= kInf || !(mask & (std::size_t{1} << last))) continue;
                for (int nxt = 0; nxt < k; ++nxt) {
                    if (mask & (std::size_t{1} << nxt)) continue;
                    if ((pred_mask[nxt] & ~mask) != 0) continue;
                    long long g2 = g + sub.fwd[last][nxt];
                    std::size_t at = (mask | (std::size_t{1} << nxt)) * k + nxt;
                    if (g2 < dp[at]) dp[at] = g2;
                }
            }
        }
        for (int last = 0; last < k; ++last) {
            long long g = dp[full * k + last];
            if (g >= kInf) continue;
            long long total = g + sub.bwd[last][f0];
            if (total < best_cost) {
                best_cost = total;
                best_first = f0;
                best_last = last;
                best_dp = dp;
            }
        }
    }
    if (best_first < 0) throw std::logic_error("station admits no feasible sequence");

    // Walk the table backwards to recover the sequence.
    std::vector<int> order;
    std::size_t mask = full;
    int cur = best_last;
    while (cur != best_first || mask != (std::size_t{1} << best_first)) {
        order.push_back(cur);
        std::size_t rest = mask ^ (std::size_t{1} << cur);
        int prev = -1;
        for (int cand = 0; cand < k; ++cand) {
            if (!(rest & (std::size_t{1} << cand))) continue;
            long long g = best_dp[rest * k + cand];
            if (g < kInf && g + sub.fwd[cand][cur] == best_dp[mask * k + cur]) {
                prev = cand;
                break;
            }
        }
        if (prev < 0) throw std::logic_error("sequence reconstruction failed");
        mask = rest;
        cur = prev;
    }
    order.push_back(best_first);
    std::reverse(order.begin(), order.end());

    std::vector<int> seq(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) seq[i] = sub.tasks[order[i]];
    return {seq, best_cost};
}

// Anytime fallback for oversized stations: beam search over partial
// sequences keyed by (remaining, last, first), widening until exhaustion or
// a fixed width ceiling. Always returns a feasible sequence.
std::pair<std::vector<int>, long long> resequence_beam(const StationSubproblem& sub) {
    const int k = static_cast<int>(sub.tasks.size());

    struct Key {
        TaskSet remaining;
        int last, first;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& key) const {
            return TaskSetHash{}(key.remaining) ^
                   hash_mix((std::uint64_t(key.last) << 20) ^ key.first);
        }
    };
    struct Node {
        TaskSet remaining;
        int last, first;
        long long g;
        int parent;
        bool dead;
    };

    auto heuristic = [&](const TaskSet& remaining, int first) {
        long long h = sub.min_bwd[first];
        for (int i = remaining.next(0); i >= 0; i = remaining.next(i + 1))
            h += sub.min_fwd[i];
        return h;
    };

    long long best_cost = kInf;
    std::vector<int> best_order;

    TaskSet all;
    for (int i = 0; i < k; ++i) all.add(i);

    std::vector<Node> arena;
    for (std::size_t width = 1; width <= 4096; width *= 2) {
        arena.clear();
        std::unordered_map<Key, std::pair<long long, int>, KeyHash> seen;
        std::vector<int> layer;
        for (int f0 = 0; f0 < k; ++f0) {
            if (!sub.within_pred[f0].empty()) continue;
            TaskSet rem = all;
            rem.remove(f0);
            arena.push_back({rem, f0, f0, 0, -1, false});
            layer.push_back(static_cast<int>(arena.size()) - 1);
        }
        bool exhaustive = true;
        while (!layer.empty()) {
            std::vector<int> pool;
            for (int idx : layer) {
                if (arena[idx].dead) continue;
                Node node = arena[idx];
                if (node.g + heuristic(node.remaining, node.first) >= best_cost) continue;
                if (node.remaining.empty()) {
                    long long total = node.g + sub.bwd[node.last][node.first];
                    if (total < best_cost) {
                        best_cost = total;
                        best_order.clear();
                        for (int at = idx; at >= 0; at = arena[at].parent)
                            best_order.push_back(arena[at].last);
                        std::reverse(best_order.begin(), best_order.end());
                    }
                    continue;
                }
                for (int nxt = node.remaining.next(0); nxt >= 0;
                     nxt = node.remaining.next(nxt + 1)) {
                    if (sub.within_pred[nxt].intersects(node.remaining)) continue;
                    long long g2 = node.g + sub.fwd[node.last][nxt];
                    TaskSet rem2 = node.remaining;
                    rem2.remove(nxt);
                    if (g2 + heuristic(rem2, node.first) >= best_cost) continue;
                    Key key{rem2, nxt, node.first};
                    auto it = seen.find(key);
                    if (it != seen.end()) {
                        if (it->second.first <= g2) continue;
                        arena[it->second.second].dead = true;
                    }
                    arena.push_back({rem2, nxt, node.first, g2, idx, false});
                    int at = static_cast<int>(arena.size()) - 1;
                    seen[key] = {g2, at};
                    pool.push_back(at);
                }
            }
            std::vector<int> live;
            for (int idx : pool)
                if (!arena[idx].dead) live.push_back(idx);
            if (live.size() > width) {
                exhaustive = false;
                std::nth_element(live.begin(), live.begin() + width, live.end(),
                                 [&](int a, int b) {
                                     long long fa = arena[a].g +
                                                    heuristic(arena[a].remaining, arena[a].first);
                                     long long fb = arena[b].g +
                                                    heuristic(arena[b].remaining, arena[b].first);
                                     if (fa != fb) return fa < fb;
                                     return a < b;
                                 });
                live.resize(width);
            }
            layer = std::move(live);
        }
        if (exhaustive) break;
    }
    if (best_order.empty()) throw std::logic_error("station admits no feasible sequence");
    std::vector<int> seq(best_order.size());
    for (std::size_t i = 0; i < best_order.size(); ++i) seq[i] = sub.tasks[best_order[i]];
    return {seq, best_cost};
}

}  // namespace

std::pair<std::vector<int>, long long> resequence_station(const StationSubproblem& sub,
                                                          int exact_threshold) {
    const int k = static_cast<int>(sub.tasks.size());
    if (k == 0) throw std::logic_error("empty station");
    if (k == 1) return {{sub.tasks[0]}, sub.bwd[0][0]};
    if (k <= exact_threshold && k < 31) return resequence_exact(sub);
    return resequence_beam(sub);
}

std::optional<Solution> local_improvement(const Instance& inst, const DerivedData& d,
                                          const Solution& sol, SolveStats* stats,
                                          int exact_threshold) {
    const int K = static_cast<int>(sol.stations.size());
    std::vector<int> order(K);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (sol.station_times[a] != sol.station_times[b])
            return sol.station_times[a] > sol.station_times[b];
        return a < b;
    });

    Solution out = sol;
    bool any = false;
    for (int pos = 0; pos < K; ++pos) {
        int k = order[pos];
        StationSubproblem sub = make_station_subproblem(inst, d, sol.stations[k]);
        if (stats) ++stats->improve_calls;
        auto [seq, setup_cost] = resequence_station(sub, exact_threshold);
        long long fresh = sub.processing + setup_cost;
        if (fresh < sol.station_times[k]) {
            out.stations[k] = seq;
            out.station_times[k] = fresh;
            any = true;
            if (stats) ++stats->improve_successes;
        }
        long long next_time = (pos + 1 < K) ? sol.station_times[order[pos + 1]] : 0;
        if (fresh >= sol.station_times[k] || fresh >= next_time) break;
    }
    if (!any) return std::nullopt;
    out.objective = *std::max_element(out.station_times.begin(), out.station_times.end());
    return out;
}

}  // namespace sualb
