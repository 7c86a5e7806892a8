// Acceptance checks for the solver, one printed line per criterion.
// Criteria 4 and 5 need the published benchmark files; when they are not
// present (env SUALB_SBF2_DIR or data/sbf2) those two are skipped with a
// notice and do not fail the run.

#include <algorithm>
#include <climits>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sualb/local_improve.hpp"
#include "sualb/oracle.hpp"
#include "sualb/search.hpp"
#include "support.hpp"

using namespace sualb;
namespace fs = std::filesystem;

namespace {

int failed = 0;

void report(int criterion, const char* verdict, const std::string& detail) {
    std::printf("criterion %d: %s - %s\n", criterion, verdict, detail.c_str());
    if (std::string(verdict) == "FAIL") ++failed;
}

SolveOptions base_opts(double limit = 60.0) {
    SolveOptions o;
    o.time_limit_s = limit;
    return o;
}

struct SuiteEntry {
    Instance inst;
    std::optional<long long> opt1;  // exhaustive type-1 optimum, empty = infeasible
    long long opt2 = 0;             // exhaustive type-2 optimum (always feasible)
};

std::vector<SuiteEntry> build_suite() {
    std::vector<SuiteEntry> suite;
    std::mt19937 rng(97531);
    std::uniform_int_distribution<int> size(1, 8);
    for (int k = 0; k < 200; ++k) {
        SuiteEntry e;
        e.inst = testsupport::random_instance(rng, size(rng), 0.3, 10, 5);
        testsupport::give_cycle_time(e.inst, rng);
        if (k % 7 == 3) {  // a few instances that may not fit at all
            int top = 0;
            for (int t : e.inst.task_times) top = std::max(top, t);
            e.inst.cycle_time = top;
        }
        testsupport::give_station_count(e.inst, rng);
        e.opt1 = brute_force_type1(e.inst).objective;
        e.opt2 = *brute_force_type2(e.inst, *e.inst.station_count).objective;
        suite.push_back(std::move(e));
    }
    return suite;
}

// Shared with criterion 8: whether the default-mode runs ever pruned.
bool default_pruned_by_bound = false;
bool default_pruned_by_dominance = false;

bool agree_type1(const SuiteEntry& e, const SolveResult& r) {
    if (!e.opt1) return r.status == SolveStatus::infeasible;
    return r.status == SolveStatus::optimal && r.best &&
           r.best->objective == *e.opt1 &&
           validate_solution(e.inst, *r.best, ProblemType::type1).ok();
}

bool agree_type2(const SuiteEntry& e, const SolveResult& r) {
    return r.status == SolveStatus::optimal && r.best && r.best->objective == e.opt2 &&
           validate_solution(e.inst, *r.best, ProblemType::type2).ok();
}

void criterion1(const std::vector<SuiteEntry>& suite) {
    int checked = 0, good = 0;
    for (const SuiteEntry& e : suite) {
        SolveResult r1 = solve(e.inst, ProblemType::type1, base_opts());
        SolveResult r2 = solve(e.inst, ProblemType::type2, base_opts());
        checked += 2;
        if (agree_type1(e, r1)) ++good;
        if (agree_type2(e, r2)) ++good;
        if (r1.stats.pruned_by_bound > 0 || r2.stats.pruned_by_bound > 0)
            default_pruned_by_bound = true;
        if (r1.stats.pruned_by_dominance > 0 || r2.stats.pruned_by_dominance > 0)
            default_pruned_by_dominance = true;
    }
    std::string detail = std::to_string(good) + "/" + std::to_string(checked) +
                         " optima match exhaustive enumeration on " +
                         std::to_string(suite.size()) + " random instances, both types";
    report(1, good == checked ? "PASS" : "FAIL", detail);
}

void criterion2() {
    std::mt19937 rng(8642);
    std::uniform_int_distribution<int> size(1, 7);
    long long states_checked = 0, violations = 0;

    for (int k = 0; k < 50; ++k) {
        Instance inst = testsupport::random_instance(rng, size(rng), 0.3, 10, 5);
        if (k % 2 == 0) {
            testsupport::give_cycle_time(inst, rng);
            DerivedData d = make_derived_data(inst, ProblemType::type1);
            std::set<std::tuple<std::uint64_t, std::uint64_t, int, int, int, long long>> seen;
            SolveOptions opts = base_opts();
            opts.observe_expand1 = [&](const State1& s) {
                seen.insert({s.unscheduled.w[0], s.unscheduled.w[1], s.prev_task,
                             s.first_task, s.station_idx, s.remaining});
            };
            cabs_type1(inst, d, opts);
            for (auto& [w0, w1, p, f, st, r] : seen) {
                State1 s;
                s.unscheduled.w[0] = w0;
                s.unscheduled.w[1] = w1;
                s.prev_task = p;
                s.first_task = f;
                s.station_idx = st;
                s.remaining = r;
                ++states_checked;
                std::optional<long long> truth = oracle_cost_to_go(inst, s);
                if (truth && dual_bound_type1(s, d) > *truth) ++violations;
            }
        } else {
            testsupport::give_station_count(inst, rng);
            int m = *inst.station_count;
            DerivedData d = make_derived_data(inst, ProblemType::type2, m);
            std::set<std::tuple<std::uint64_t, std::uint64_t, int, int, int, long long,
                                long long>>
                seen;
            SolveOptions opts = base_opts();
            opts.observe_expand2 = [&](const State2& s) {
                seen.insert({s.unscheduled.w[0], s.unscheduled.w[1], s.prev_task,
                             s.first_task, s.station_idx, s.used_time, s.cycle});
            };
            cabs_type2(inst, d, opts);
            for (auto& [w0, w1, p, f, st, used, cyc] : seen) {
                State2 s;
                s.unscheduled.w[0] = w0;
                s.unscheduled.w[1] = w1;
                s.prev_task = p;
                s.first_task = f;
                s.station_idx = st;
                s.used_time = used;
                s.cycle = cyc;
                ++states_checked;
                std::optional<long long> truth = oracle_cost_to_go(inst, s, m);
                if (truth && dual_bound_type2(s, d) > *truth) ++violations;
            }
        }
    }
    std::string detail = "dual bounds admissible on " + std::to_string(states_checked) +
                         " expanded states across 50 instances, " +
                         std::to_string(violations) + " violations";
    report(2, violations == 0 ? "PASS" : "FAIL", detail);
}

void criterion3() {
    // Type-1 construction: two tasks of 25 left, cheapest incoming setups
    // 2 and 12, open station closable for 1 with idle 1, c = 10, 2 of at
    // most 4 stations used.
    DerivedData d1;
    d1.n = 3;
    d1.time_ext = {25, 25, 7, 0};
    d1.min_fwd_setup = {2, 12, 1, 0};
    d1.min_bwd_setup = {1, 1, 1, 0};
    d1.c_upper = 10;
    d1.m_upper = 4;
    d1.m_lower = 1;
    State1 s1;
    s1.unscheduled.add(0);
    s1.unscheduled.add(1);
    s1.station_idx = 2;
    s1.prev_task = s1.first_task = 2;
    s1.remaining = 1;
    DualBoundTerms1 t1 = dual_bound_type1_terms(s1, d1);
    bool ok1 = t1.setup_aware == 4 && t1.backward_only == 5 && dual_bound_type1(s1, d1) >= 5;

    // Type-2 construction: station 3 of 5 open with 1 time unit used,
    // committed cycle 5, two tasks of 15 left.
    DerivedData d2;
    d2.n = 3;
    d2.time_ext = {15, 15, 7, 0};
    d2.min_fwd_setup = {2, 12, 1, 0};
    d2.min_bwd_setup = {1, 1, 1, 0};
    d2.m_upper = 5;
    State2 s2;
    s2.unscheduled.add(0);
    s2.unscheduled.add(1);
    s2.station_idx = 3;
    s2.prev_task = s2.first_task = 2;
    s2.used_time = 1;
    s2.cycle = 5;
    DualBoundTerms2 t2 = dual_bound_type2_terms(s2, d2);
    bool ok2 = t2.setup_aware_increment == 3 && t2.capacity_increment == 6 &&
               t2.value() == 11;

    std::string detail = "type-1 fixture terms (" + std::to_string(t1.setup_aware) + ", " +
                         std::to_string(t1.backward_only) + ", bound " +
                         std::to_string(dual_bound_type1(s1, d1)) +
                         "), type-2 fixture increments (" +
                         std::to_string(t2.setup_aware_increment) + ", " +
                         std::to_string(t2.capacity_increment) + ", final " +
                         std::to_string(t2.value()) + ")";
    report(3, ok1 && ok2 ? "PASS" : "FAIL", detail);
}

std::optional<fs::path> reference_dir() {
    if (const char* env = std::getenv("SUALB_SBF2_DIR")) {
        fs::path p(env);
        if (fs::is_directory(p)) return p;
    }
    fs::path bundled = fs::path(SUALB_DATA_DIR) / "sbf2";
    if (fs::is_directory(bundled)) return bundled;
    return std::nullopt;
}

std::string squash(const std::string& s) {
    std::string out;
    for (char c : s)
        if (std::isalnum(static_cast<unsigned char>(c)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

void criterion4() {
    auto dir = reference_dir();
    if (!dir) {
        report(4, "SKIP",
               "reference instance files not found; set SUALB_SBF2_DIR or add data/sbf2");
        return;
    }
    struct Row {
        const char* base;
        const char* variant;  // extra name fragment, "" if none
        long long cycle;
        const char* alpha;  // squashed fragment, e.g. "075"
        long long expected;
    };
    const Row rows[] = {
        {"jackson", "", 7, "075", 9},      {"jackson", "", 14, "050", 12},
        {"lutz1", "2357b", 2357, "025", 2475}, {"sawyer30", "", 54, "075", 58},
        {"hahn", "", 1806, "025", 2830},   {"hahn", "", 4676, "025", 4847},
    };

    int matched = 0, good = 0;
    std::string misses;
    for (const Row& row : rows) {
        bool found = false;
        for (const auto& entry : fs::directory_iterator(*dir)) {
            if (!entry.is_regular_file()) continue;
            std::string name = squash(entry.path().filename().string());
            if (name.find(row.base) == std::string::npos) continue;
            if (*row.variant && name.find(squash(row.variant)) == std::string::npos)
                continue;
            if (name.find(row.alpha) == std::string::npos) continue;
            Instance inst;
            try {
                inst = load_instance_file(entry.path().string());
            } catch (const std::exception&) {
                continue;
            }
            if (!inst.cycle_time || *inst.cycle_time != row.cycle) continue;
            found = true;
            ++matched;
            SolveResult r = solve(inst, ProblemType::type2, base_opts(600.0));
            if (r.status == SolveStatus::optimal && r.best &&
                r.best->objective == row.expected)
                ++good;
            else
                misses += std::string(" ") + row.base + "@" + std::to_string(row.cycle);
            break;
        }
        if (!found) misses += std::string(" ") + row.base + "@" + std::to_string(row.cycle) + "(missing)";
    }
    if (matched == 0) {
        report(4, "SKIP", "no reference instances matched in " + dir->string());
        return;
    }
    std::string detail = std::to_string(good) + "/6 published type-2 optima reproduced";
    if (!misses.empty()) detail += ";" + misses;
    report(4, good == 6 ? "PASS" : "FAIL", detail);
}

void criterion5() {
    auto dir = reference_dir();
    if (!dir) {
        report(5, "SKIP",
               "reference instance files not found; set SUALB_SBF2_DIR or add data/sbf2");
        return;
    }
    int total = 0, good = 0;
    for (const auto& entry : fs::directory_iterator(*dir)) {
        if (!entry.is_regular_file()) continue;
        Instance inst;
        try {
            inst = load_instance_file(entry.path().string());
        } catch (const std::exception&) {
            continue;
        }
        if (inst.n > 25) continue;
        ++total;
        SolveResult r = solve(inst, ProblemType::type2, base_opts(10.0));
        if (r.status == SolveStatus::optimal && r.runtime_s <= 10.0) ++good;
    }
    if (total == 0) {
        report(5, "SKIP", "no small reference instances found in " + dir->string());
        return;
    }
    report(5, good == total ? "PASS" : "FAIL",
           std::to_string(good) + "/" + std::to_string(total) +
               " small instances solved to proven optimality within 10 s each");
}

long long best_cost_by_permutation(const StationSubproblem& sub) {
    const int k = static_cast<int>(sub.tasks.size());
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    long long best = LLONG_MAX;
    do {
        bool ok = true;
        TaskSet placed;
        for (int idx : order) {
            if (!sub.within_pred[idx].is_subset_of(placed)) {
                ok = false;
                break;
            }
            placed.add(idx);
        }
        if (!ok) continue;
        long long cost = 0;
        for (int i = 1; i < k; ++i) cost += sub.fwd[order[i - 1]][order[i]];
        cost += sub.bwd[order[k - 1]][order[0]];
        best = std::min(best, cost);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

void criterion6(const std::vector<SuiteEntry>& suite) {
    std::mt19937 rng(1357);
    std::uniform_int_distribution<int> size(2, 8);
    int stations_checked = 0, stations_good = 0;
    for (int k = 0; k < 100; ++k) {
        Instance inst = testsupport::random_instance(rng, size(rng), 0.3, 10, 5);
        testsupport::give_station_count(inst, rng);
        int m = *inst.station_count;
        DerivedData d = make_derived_data(inst, ProblemType::type2, m);
        SolveResult r = cabs_type2(inst, d, base_opts());
        if (r.status != SolveStatus::optimal || !r.best) continue;
        for (const auto& tasks : r.best->stations) {
            StationSubproblem sub = make_station_subproblem(inst, d, tasks);
            ++stations_checked;
            if (resequence_station(sub).second == best_cost_by_permutation(sub))
                ++stations_good;
        }
    }

    int li_checked = 0, li_good = 0;
    for (size_t k = 0; k < suite.size() && k < 100; ++k) {
        SolveOptions opts = base_opts();
        opts.local_improve = true;
        SolveResult r = solve(suite[k].inst, ProblemType::type2, opts);
        ++li_checked;
        if (agree_type2(suite[k], r)) ++li_good;
    }

    bool ok = stations_checked > 0 && stations_good == stations_checked &&
              li_good == li_checked;
    report(6, ok ? "PASS" : "FAIL",
           "station re-sequencing matches permutation enumeration on " +
               std::to_string(stations_good) + "/" + std::to_string(stations_checked) +
               " stations; improvement-assisted runs match " + std::to_string(li_good) +
               "/" + std::to_string(li_checked) + " optima");
}

void criterion7() {
    bool gap_ok = primal_gap(std::nullopt, 10) == Rational::one() &&
                  primal_gap(0, 0) == Rational::zero() &&
                  primal_gap(12, 10) == Rational(1, 6);

    IncumbentTrace none;
    none.horizon = 10.0;
    none.reference = 10;
    IncumbentTrace instant;
    instant.horizon = 10.0;
    instant.reference = 10;
    instant.record(0.0, 10);
    IncumbentTrace stepped;
    stepped.horizon = 10.0;
    stepped.reference = 10;
    stepped.record(2.0, 20);  // gap 1/2
    stepped.record(5.0, 10);  // gap 0
    bool integral_ok = primal_integral(none) == 10.0 && primal_integral(instant) == 0.0 &&
                       primal_integral(stepped) == 3.5;

    report(7, gap_ok && integral_ok ? "PASS" : "FAIL",
           "primal gap and primal integral worked examples reproduced exactly");
}

void criterion8(const std::vector<SuiteEntry>& suite) {
    int checked = 0, good = 0;
    for (const SuiteEntry& e : suite) {
        for (int mask = 1; mask < 4; ++mask) {
            SolveOptions opts = base_opts();
            opts.use_dual_bounds = !(mask & 1);
            opts.use_dominance = !(mask & 2);
            checked += 2;
            if (agree_type1(e, solve(e.inst, ProblemType::type1, opts))) ++good;
            if (agree_type2(e, solve(e.inst, ProblemType::type2, opts))) ++good;
        }
    }
    bool ok = good == checked && default_pruned_by_bound && default_pruned_by_dominance;
    std::string detail = std::to_string(good) + "/" + std::to_string(checked) +
                         " toggled runs keep the proven optima; default runs pruned by " +
                         std::string(default_pruned_by_bound ? "bound" : "NOTHING") +
                         " and " +
                         std::string(default_pruned_by_dominance ? "dominance" : "NOTHING");
    report(8, ok ? "PASS" : "FAIL", detail);
}

}  // namespace

int main() {
    std::vector<SuiteEntry> suite = build_suite();
    criterion1(suite);
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6(suite);
    criterion7();
    criterion8(suite);
    if (failed == 0) {
        std::printf("acceptance: all criteria satisfied\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failed);
    return 1;
}
