#include "sualb/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "sualb/metrics.hpp"

namespace sualb {

namespace fs = std::filesystem;

std::map<std::string, long long> load_best_known(const std::string& path) {
    std::map<std::string, long long> out;
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open best-known table: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string::size_type hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::string name;
        long long value;
        if (row >> name >> value) out[name] = value;
    }
    return out;
}

std::string size_class(int n) {
    if (n <= 25) return "A";
    if (n <= 35) return "B";
    if (n <= 70) return "C";
    return "D";
}

namespace {

std::string fixed_number(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct RunOutcome {
    BenchRow row;
    IncumbentTrace trace;
};

RunOutcome run_one(const std::string& path, const BenchConfig& cfg) {
    RunOutcome out;
    BenchRow& row = out.row;
    row.instance = fs::path(path).stem().string();
    try {
        Instance inst = load_instance_file(path);
        row.klass = size_class(inst.n);
        if (cfg.alpha_label)
            row.alpha = *cfg.alpha_label;
        else if (inst.alpha)
            row.alpha = *inst.alpha;
        else
            row.alpha = "-";

        Diagnostics diag = validate_instance(inst, cfg.type);
        if (!diag.ok()) {
            std::string msg;
            for (auto& e : diag.errors) {
                if (!msg.empty()) msg += "; ";
                msg += e;
            }
            row.error = msg;
            return out;
        }

        SolveOptions opts;
        opts.time_limit_s = cfg.time_limit_s;
        opts.use_dual_bounds = cfg.use_dual_bounds;
        opts.use_dominance = cfg.use_dominance;
        opts.local_improve = cfg.local_improve;
        opts.rounding = cfg.rounding;

        SolveResult res = solve(inst, cfg.type, opts);
        row.status = res.status;
        row.bound = res.lower_bound;
        row.runtime_s = res.runtime_s;
        if (res.best) row.objective = res.best->objective;

        // Reference point for gap and integral: a proven optimum, else the
        // published best-known value, else the run's own incumbent.
        std::optional<long long> reference;
        if (res.status == SolveStatus::optimal)
            reference = res.best->objective;
        else if (auto it = cfg.best_known.find(row.instance); it != cfg.best_known.end())
            reference = it->second;
        else if (row.objective)
            reference = row.objective;

        out.trace = res.trace;
        if (reference) {
            row.gap_pct = 100.0 * primal_gap(row.objective, *reference).to_double();
            out.trace.reference = *reference;
            row.primal_integral = primal_integral(out.trace);
        } else {
            row.gap_pct = 100.0;
            // A proved-infeasible run needs no reference: the integral
            // collapses to the proof time.
            row.primal_integral = out.trace.infeasible_proved_at ? primal_integral(out.trace)
                                                                 : out.trace.horizon;
        }
    } catch (const ParseError& e) {
        row.error = e.what();
    } catch (const UsageError& e) {
        row.error = e.what();
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return out;
}

std::string status_cell(const BenchRow& row) {
    if (!row.error.empty()) return "error";
    return to_string(row.status);
}

void write_outputs(const std::string& dir, const std::vector<RunOutcome>& outcomes) {
    fs::create_directories(fs::path(dir) / "traces");

    {
        std::ofstream f(fs::path(dir) / "results.tsv");
        f << "instance\tclass\talpha\tstatus\tobjective\tbound\tgap_pct\truntime_s\t"
             "primal_integral\terror\n";
        for (const RunOutcome& oc : outcomes) {
            const BenchRow& r = oc.row;
            f << r.instance << '\t' << r.klass << '\t' << r.alpha << '\t' << status_cell(r)
              << '\t' << (r.objective ? std::to_string(*r.objective) : "-") << '\t' << r.bound
              << '\t' << fixed_number(r.gap_pct, 2) << '\t' << fixed_number(r.runtime_s, 3)
              << '\t' << fixed_number(r.primal_integral, 3) << '\t' << r.error << '\n';
        }
    }
    {
        std::ofstream f(fs::path(dir) / "summary.tsv");
        f << format_summary([&] {
            std::vector<BenchRow> rows;
            for (auto& oc : outcomes) rows.push_back(oc.row);
            return rows;
        }());
    }
    {
        std::ofstream f(fs::path(dir) / "solved_over_time.tsv");
        f << "runtime_s\tsolved\n";
        std::vector<double> times;
        for (const RunOutcome& oc : outcomes)
            if (oc.row.error.empty() && oc.row.status == SolveStatus::optimal)
                times.push_back(oc.row.runtime_s);
        std::sort(times.begin(), times.end());
        for (std::size_t i = 0; i < times.size(); ++i)
            f << fixed_number(times[i], 3) << '\t' << (i + 1) << '\n';
    }
    for (const RunOutcome& oc : outcomes) {
        if (!oc.row.error.empty()) continue;
        std::ofstream f(fs::path(dir) / "traces" / (oc.row.instance + ".trace"));
        f << "seconds\tobjective\n";
        for (const TracePoint& p : oc.trace.points)
            f << fixed_number(p.seconds, 6) << '\t' << p.objective << '\n';
        if (oc.trace.infeasible_proved_at)
            f << fixed_number(*oc.trace.infeasible_proved_at, 6) << "\tinfeasible\n";
    }
}

}  // namespace

std::vector<BenchRow> run_benchmark(const std::vector<std::string>& files,
                                    const BenchConfig& cfg) {
    std::vector<RunOutcome> outcomes(files.size());
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || files.size() <= 1) {
        for (std::size_t i = 0; i < files.size(); ++i) outcomes[i] = run_one(files[i], cfg);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= files.size()) return;
                outcomes[i] = run_one(files[i], cfg);
            }
        };
        std::vector<std::thread> pool;
        for (int j = 0; j < std::min<int>(jobs, static_cast<int>(files.size())); ++j)
            pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    if (!cfg.out_dir.empty()) write_outputs(cfg.out_dir, outcomes);

    std::vector<BenchRow> rows;
    rows.reserve(outcomes.size());
    for (auto& oc : outcomes) rows.push_back(std::move(oc.row));
    return rows;
}

std::string format_results_table(const std::vector<BenchRow>& rows) {
    std::vector<std::array<std::string, 9>> cells;
    cells.push_back({"instance", "class", "alpha", "status", "objective", "bound", "gap%",
                     "time_s", "integral"});
    for (const BenchRow& r : rows) {
        cells.push_back({r.instance, r.klass, r.alpha, status_cell(r),
                         r.objective ? std::to_string(*r.objective) : "-",
                         std::to_string(r.bound), fixed_number(r.gap_pct, 2),
                         fixed_number(r.runtime_s, 3), fixed_number(r.primal_integral, 3)});
    }
    std::array<std::size_t, 9> w{};
    for (auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) w[c] = std::max(w[c], row[c].size());
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t c = 0; c < cells[i].size(); ++c) {
            out += cells[i][c];
            if (c + 1 < cells[i].size())
                out.append(w[c] - cells[i][c].size() + 2, ' ');
        }
        const BenchRow* r = i ? &rows[i - 1] : nullptr;
        if (r && !r->error.empty()) out += "  " + r->error;
        out += '\n';
    }
    return out;
}

std::string format_summary(const std::vector<BenchRow>& rows) {
    struct Agg {
        int count = 0, optimal = 0, feasible = 0, infeasible = 0, timeout = 0, errors = 0;
        double gap = 0, runtime = 0, integral = 0;
    };
    std::map<std::pair<std::string, std::string>, Agg> groups;
    for (const BenchRow& r : rows) {
        Agg& a = groups[{r.klass, r.alpha}];
        ++a.count;
        if (!r.error.empty()) {
            ++a.errors;
            continue;
        }
        switch (r.status) {
            case SolveStatus::optimal: ++a.optimal; break;
            case SolveStatus::feasible: ++a.feasible; break;
            case SolveStatus::infeasible: ++a.infeasible; break;
            case SolveStatus::timeout_no_solution: ++a.timeout; break;
        }
        a.gap += r.gap_pct;
        a.runtime += r.runtime_s;
        a.integral += r.primal_integral;
    }
    std::ostringstream out;
    out << "class\talpha\tcount\toptimal\tfeasible\tinfeasible\ttimeout\terrors\t"
           "avg_gap_pct\tavg_runtime_s\tavg_primal_integral\n";
    for (auto& [key, a] : groups) {
        int measured = a.count - a.errors;
        double div = measured > 0 ? measured : 1;
        out << key.first << '\t' << key.second << '\t' << a.count << '\t' << a.optimal << '\t'
            << a.feasible << '\t' << a.infeasible << '\t' << a.timeout << '\t' << a.errors
            << '\t' << fixed_number(a.gap / div, 2) << '\t' << fixed_number(a.runtime / div, 3)
            << '\t' << fixed_number(a.integral / div, 3) << '\n';
    }
    return out.str();
}

}  // namespace sualb
