#include "sualb/search.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <limits>
#include <unordered_map>

#include "sualb/local_improve.hpp"

namespace sualb {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::feasible: return "feasible";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::timeout_no_solution: return "timeout-no-solution";
    }
    return "?";
}

long long station_time(const Instance& inst, const std::vector<int>& seq) {
    if (seq.empty()) throw std::logic_error("station_time on an empty sequence");
    long long t = inst.task_times[seq.front()];
    for (size_t k = 1; k < seq.size(); ++k)
        t += inst.fwd_setup[seq[k - 1]][seq[k]] + inst.task_times[seq[k]];
    return t + inst.bwd_setup[seq.back()][seq.front()];
}

Solution replay_transitions(const Instance& inst, const std::vector<TransitionRecord>& path,
                            ProblemType type, long long expected_objective) {
    Solution sol;
    std::vector<int> cur;
    for (const TransitionRecord& rec : path) {
        switch (rec.kind) {
            case TransitionKind::assign_first:
                if (!cur.empty()) throw std::logic_error("assign_first into an open station");
                cur.push_back(rec.task);
                break;
            case TransitionKind::assign_next:
                if (cur.empty()) throw std::logic_error("assign_next without an open station");
                cur.push_back(rec.task);
                break;
            case TransitionKind::close_station:
                if (cur.empty()) throw std::logic_error("close_station on an empty station");
                sol.stations.push_back(cur);
                sol.station_times.push_back(station_time(inst, cur));
                cur.clear();
                break;
        }
    }
    if (!cur.empty()) throw std::logic_error("transition path left a station open");
    if (sol.stations.empty()) throw std::logic_error("transition path produced no stations");
    if (type == ProblemType::type1) {
        sol.objective = static_cast<long long>(sol.stations.size());
    } else {
        sol.objective = *std::max_element(sol.station_times.begin(), sol.station_times.end());
    }
    if (expected_objective >= 0 && sol.objective != expected_objective)
        throw std::logic_error("replayed objective " + std::to_string(sol.objective) +
                               " does not match search cost " +
                               std::to_string(expected_objective));
    return sol;
}

Diagnostics validate_solution(const Instance& inst, const Solution& sol, ProblemType type) {
    Diagnostics diag;
    auto err = [&](const std::string& m) { diag.errors.push_back(m); };

    if (sol.stations.empty()) {
        err("solution has no stations");
        return diag;
    }
    std::vector<std::pair<int, int>> where(inst.n, {-1, -1});
    for (size_t k = 0; k < sol.stations.size(); ++k) {
        if (sol.stations[k].empty()) err("station " + std::to_string(k + 1) + " is empty");
        for (size_t pos = 0; pos < sol.stations[k].size(); ++pos) {
            int task = sol.stations[k][pos];
            if (task < 0 || task >= inst.n) {
                err("station " + std::to_string(k + 1) + " references an unknown task");
                continue;
            }
            if (where[task].first >= 0)
                err("task " + std::to_string(task + 1) + " is assigned twice");
            where[task] = {static_cast<int>(k), static_cast<int>(pos)};
        }
    }
    for (int i = 0; i < inst.n; ++i)
        if (where[i].first < 0) err("task " + std::to_string(i + 1) + " is unassigned");
    if (!diag.errors.empty()) return diag;

    for (auto& [a, b] : inst.precedence) {
        auto [ka, pa] = where[a];
        auto [kb, pb] = where[b];
        if (ka > kb || (ka == kb && pa >= pb))
            err("precedence violated: task " + std::to_string(a + 1) +
                " must come before task " + std::to_string(b + 1));
    }

    if (sol.station_times.size() != sol.stations.size()) {
        err("station time list does not match station list");
        return diag;
    }
    long long max_time = 0;
    for (size_t k = 0; k < sol.stations.size(); ++k) {
        long long t = station_time(inst, sol.stations[k]);
        max_time = std::max(max_time, t);
        if (t != sol.station_times[k])
            err("station " + std::to_string(k + 1) + " time " +
                std::to_string(sol.station_times[k]) + " should be " + std::to_string(t));
        if (type == ProblemType::type1 && inst.cycle_time && t > *inst.cycle_time)
            err("station " + std::to_string(k + 1) + " exceeds the cycle time");
    }
    if (type == ProblemType::type1) {
        if (!inst.cycle_time) err("type 1 solution but the instance has no cycle time");
        if (sol.objective != static_cast<long long>(sol.stations.size()))
            err("objective is not the station count");
    } else {
        if (inst.station_count && static_cast<int>(sol.stations.size()) > *inst.station_count)
            err("solution uses more than " + std::to_string(*inst.station_count) + " stations");
        else if (!inst.station_count)
            diag.warnings.push_back("instance carries no station count to check against");
        if (sol.objective != max_time) err("objective is not the maximum station time");
    }
    return diag;
}

// ---------------------------------------------------------------------------
// CABS engine, shared by both models through a small traits object.

namespace {

using Clock = std::chrono::steady_clock;

struct Model1 {
    const DerivedData& d;
    using State = State1;
    struct Key {
        TaskSet u;
        int p, f;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return static_cast<std::size_t>(hash_mix(TaskSetHash{}(k.u)) ^
                                            hash_mix((std::uint64_t(k.p) << 20) ^ k.f));
        }
    };
    // g always equals the station index for this model; carried anyway so the
    // registry logic stays uniform.
    struct Rec {
        int kappa;
        long long remaining;
        long long g;
    };
    static Key key(const State& s) { return {s.unscheduled, s.prev_task, s.first_task}; }
    static Rec record(const State& s, long long g) { return {s.station_idx, s.remaining, g}; }
    static bool covers(const Rec& a, const Rec& b) {
        return a.kappa <= b.kappa && a.remaining >= b.remaining && a.g <= b.g;
    }
    static bool same(const Rec& a, const Rec& b) {
        return a.kappa == b.kappa && a.remaining == b.remaining && a.g == b.g;
    }
    State root() const { return target_state1(d); }
    bool base(const State& s) const { return is_base(s, d); }
    auto successors(const State& s) const { return successors_type1(s, d); }
    long long heuristic(const State& s, bool enabled) const {
        return enabled ? dual_bound_type1(s, d) : 0;
    }
    static long long combine(long long g, long long w) { return g + w; }
    static long long priority(long long g, long long h) { return g + h; }
    static void observe(const SolveOptions& o, const State& s) {
        if (o.observe_expand1) o.observe_expand1(s);
    }
    static constexpr ProblemType type = ProblemType::type1;
};

struct Model2 {
    const DerivedData& d;
    using State = State2;
    struct Key {
        TaskSet u;
        int p, f, kappa;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return static_cast<std::size_t>(
                hash_mix(TaskSetHash{}(k.u)) ^
                hash_mix((std::uint64_t(k.p) << 40) ^ (std::uint64_t(k.f) << 20) ^ k.kappa));
        }
    };
    struct Rec {
        long long used;
        long long cycle;
        long long g;
    };
    static Key key(const State& s) {
        return {s.unscheduled, s.prev_task, s.first_task, s.station_idx};
    }
    static Rec record(const State& s, long long g) { return {s.used_time, s.cycle, g}; }
    static bool covers(const Rec& a, const Rec& b) {
        return a.used <= b.used && a.cycle <= b.cycle && a.g <= b.g;
    }
    static bool same(const Rec& a, const Rec& b) {
        return a.used == b.used && a.cycle == b.cycle && a.g == b.g;
    }
    State root() const { return target_state2(d); }
    bool base(const State& s) const { return is_base(s, d); }
    auto successors(const State& s) const { return successors_type2(s, d); }
    long long heuristic(const State& s, bool enabled) const {
        return enabled ? dual_bound_type2(s, d) : 0;
    }
    static long long combine(long long g, long long w) { return std::max(g, w); }
    static long long priority(long long g, long long h) { return std::max(g, h); }
    static void observe(const SolveOptions& o, const State& s) {
        if (o.observe_expand2) o.observe_expand2(s);
    }
    static constexpr ProblemType type = ProblemType::type2;
};

template <class Model>
struct CabsRunner {
    const Instance& inst;
    const Model model;
    const SolveOptions& opts;
    // Improvement pass applied to each new incumbent (empty for type 1).
    std::function<std::optional<Solution>(const Solution&)> improve;

    using State = typename Model::State;
    using Key = typename Model::Key;
    using Rec = typename Model::Rec;

    struct Node {
        State state;
        long long g, h, f;
        int parent;  // arena index, -1 for the root
        TransitionRecord via;
        std::uint64_t seq;
        bool dead = false;
    };
    struct Entry {
        Rec rec;
        int iter;
        int node;  // arena index in the entry's iteration, -1 once stale
    };

    std::vector<Node> arena{};
    std::unordered_map<Key, std::vector<Entry>, typename Model::KeyHash> registry{};
    std::size_t registry_records = 0;

    SolveResult result{};
    long long ub = LLONG_MAX;
    Clock::time_point t0 = Clock::now();
    std::uint64_t seq_counter = 0;
    bool timed_out = false;

    double elapsed() const {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }
    bool over_limit() const {
        return opts.time_limit_s > 0 && elapsed() >= opts.time_limit_s;
    }

    // Returns false when the candidate must be dropped. May mark same-layer
    // nodes dead when the candidate strictly dominates them.
    bool admit(const Key& key, const Rec& rec, int iter) {
        auto& vec = registry[key];
        for (const Entry& e : vec) {
            bool weak = Model::covers(e.rec, rec);
            if (!weak) continue;
            bool equal = Model::same(e.rec, rec);
            if (e.iter == iter || !equal) {
                // Entries from earlier width passes only block strictly worse
                // candidates; re-admitting equals keeps restarts complete.
                if (equal)
                    ++result.stats.duplicates;
                else {
                    if (!opts.use_dominance) continue;
                    ++result.stats.pruned_by_dominance;
                }
                return false;
            }
        }
        if (opts.use_dominance) {
            for (std::size_t k = 0; k < vec.size();) {
                if (Model::covers(rec, vec[k].rec)) {
                    if (vec[k].iter == iter && vec[k].node >= 0) {
                        arena[vec[k].node].dead = true;
                        ++result.stats.pruned_by_dominance;
                    }
                    vec[k] = vec.back();
                    vec.pop_back();
                    --registry_records;
                } else {
                    ++k;
                }
            }
        }
        vec.push_back({rec, iter, -1});
        ++registry_records;
        return true;
    }

    void note_entry_node(const Key& key, const Rec& rec, int node_idx) {
        auto& vec = registry[key];
        for (Entry& e : vec)
            if (Model::same(e.rec, rec)) {
                e.node = node_idx;
                return;
            }
    }

    void record_incumbent(const Solution& sol) {
        double t = elapsed();
        ub = sol.objective;
        result.best = sol;
        result.trace.record(t, sol.objective);
        if (opts.on_incumbent) opts.on_incumbent(sol, t);
        if (improve) {
            ++result.stats.improve_calls;
            std::optional<Solution> better = improve(sol);
            if (better && better->objective < ub) {
                ++result.stats.improve_successes;
                ub = better->objective;
                result.best = *better;
                double t2 = elapsed();
                result.trace.record(t2, better->objective);
                if (opts.on_incumbent) opts.on_incumbent(*better, t2);
            }
        }
    }

    void found_base(const Node& parent_node, const TransitionRecord& via, long long g) {
        if (g >= ub) return;
        std::vector<TransitionRecord> path;
        path.push_back(via);
        const Node* cur = &parent_node;
        while (true) {
            path.push_back(cur->via);
            if (cur->parent < 0) break;
            cur = &arena[cur->parent];
        }
        path.pop_back();  // the root carries a placeholder transition
        std::reverse(path.begin(), path.end());
        Solution sol = replay_transitions(inst, path, Model::type, g);
        record_incumbent(sol);
    }

    // One beam pass; returns true when it ran exhaustively.
    bool run_width(std::size_t width, int iter) {
        arena.clear();
        bool exhaustive = true;

        State root_state = model.root();
        long long root_h = model.heuristic(root_state, opts.use_dual_bounds);
        Node root{root_state,
                  0,
                  root_h,
                  Model::priority(0, root_h),
                  -1,
                  {TransitionKind::close_station, -1, 0},
                  seq_counter++,
                  false};
        admit(Model::key(root_state), Model::record(root_state, 0), iter);
        arena.push_back(root);
        note_entry_node(Model::key(root_state), Model::record(root_state, 0), 0);

        std::vector<int> layer{0};
        std::vector<int> pool;
        int tick = 0;
        while (!layer.empty()) {
            pool.clear();
            for (int idx : layer) {
                if (arena[idx].dead) continue;
                if (arena[idx].f >= ub) {
                    ++result.stats.pruned_by_bound;
                    continue;
                }
                if (++tick % 256 == 0 && over_limit()) {
                    timed_out = true;
                    return false;
                }
                ++result.stats.expansions;
                Model::observe(opts, arena[idx].state);
                auto succs = model.successors(arena[idx].state);
                for (auto& [rec, succ] : succs) {
                    ++result.stats.generated;
                    long long g2 = Model::combine(arena[idx].g, rec.weight);
                    if (model.base(succ)) {
                        if (g2 < ub) found_base(arena[idx], rec, g2);
                        continue;
                    }
                    long long h2 = model.heuristic(succ, opts.use_dual_bounds);
                    long long f2 = Model::priority(g2, h2);
                    if (f2 >= ub) {
                        ++result.stats.pruned_by_bound;
                        continue;
                    }
                    Key key = Model::key(succ);
                    Rec r2 = Model::record(succ, g2);
                    if (!admit(key, r2, iter)) continue;
                    int node_idx = static_cast<int>(arena.size());
                    arena.push_back(Node{succ, g2, h2, f2, idx, rec, seq_counter++, false});
                    note_entry_node(key, r2, node_idx);
                    pool.push_back(node_idx);
                }
            }
            std::vector<int> live;
            live.reserve(pool.size());
            for (int idx : pool)
                if (!arena[idx].dead) live.push_back(idx);
            result.stats.peak_layer =
                std::max<long long>(result.stats.peak_layer, static_cast<long long>(live.size()));
            std::size_t keep = std::min(width, opts.node_cap > 0 ? opts.node_cap : width);
            if (live.size() > keep) {
                exhaustive = false;
                std::sort(live.begin(), live.end(), [&](int a, int b) {
                    const Node& x = arena[a];
                    const Node& y = arena[b];
                    if (x.f != y.f) return x.f < y.f;
                    if (x.h != y.h) return x.h < y.h;
                    return x.seq < y.seq;
                });
                live.resize(keep);
            }
            layer = std::move(live);
        }
        return exhaustive;
    }

    SolveResult run() {
        result.trace.horizon = opts.time_limit_s > 0 ? opts.time_limit_s : 0.0;
        bool proved = false;
        std::size_t width = 1;
        for (int iter = 1;; ++iter) {
            result.stats.beam_iterations = iter;
            bool exhaustive = run_width(width, iter);
            if (timed_out) break;
            if (exhaustive) {
                proved = true;
                break;
            }
            if (registry_records > opts.registry_cap) {
                registry.clear();
                registry_records = 0;
            }
            if (width <= (std::numeric_limits<std::size_t>::max() >> 1)) width *= 2;
        }

        double t = elapsed();
        result.runtime_s = t;
        if (result.trace.horizon == 0.0) result.trace.horizon = t;
        if (proved) {
            if (result.best) {
                result.status = SolveStatus::optimal;
                result.lower_bound = result.best->objective;
            } else {
                result.status = SolveStatus::infeasible;
                result.lower_bound = 0;
                result.trace.infeasible_proved_at = t;
            }
        } else {
            result.status =
                result.best ? SolveStatus::feasible : SolveStatus::timeout_no_solution;
            long long base_lb =
                Model::type == ProblemType::type1 ? model.d.m_lower : model.d.c_lower;
            long long root_h = model.heuristic(model.root(), opts.use_dual_bounds);
            result.lower_bound = std::max(base_lb, root_h);
        }
        return result;
    }
};

}  // namespace

SolveResult cabs_type1(const Instance& inst, const DerivedData& d, const SolveOptions& opts) {
    CabsRunner<Model1> runner{inst, Model1{d}, opts, nullptr};
    return runner.run();
}

SolveResult cabs_type2(const Instance& inst, const DerivedData& d, const SolveOptions& opts) {
    CabsRunner<Model2> runner{inst, Model2{d}, opts, nullptr};
    if (opts.local_improve) {
        const Instance* pi = &inst;
        const DerivedData* pd = &d;
        runner.improve = [pi, pd](const Solution& sol) {
            return local_improvement(*pi, *pd, sol);
        };
    }
    return runner.run();
}

SolveResult solve(const Instance& inst, ProblemType type, const SolveOptions& opts) {
    Diagnostics diag = validate_instance(inst, std::nullopt);
    if (!diag.ok()) {
        std::string msg = "invalid instance:";
        for (auto& e : diag.errors) msg += "\n  " + e;
        throw UsageError(msg);
    }

    auto infeasible_now = [&](const std::string&) {
        SolveResult r;
        r.status = SolveStatus::infeasible;
        r.trace.horizon = opts.time_limit_s > 0 ? opts.time_limit_s : 0.0;
        r.trace.infeasible_proved_at = 0.0;
        return r;
    };

    if (type == ProblemType::type1) {
        if (!inst.cycle_time) throw UsageError("type 1 requires a cycle time");
        try {
            DerivedData d = make_derived_data(inst, ProblemType::type1);
            return cabs_type1(inst, d, opts);
        } catch (const InfeasibleError&) {
            return infeasible_now("preprocessing proved infeasibility");
        }
    }

    int m = inst.station_count.value_or(0);
    if (m <= 0) m = derive_station_count(inst, opts.rounding);
    try {
        DerivedData d = make_derived_data(inst, ProblemType::type2, m);
        return cabs_type2(inst, d, opts);
    } catch (const InfeasibleError&) {
        return infeasible_now("preprocessing proved infeasibility");
    }
}

}  // namespace sualb
