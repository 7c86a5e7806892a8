#include "sualb.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>

#include "sualb/bench.hpp"
#include "sualb/instance.hpp"
#include "sualb/oracle.hpp"
#include "sualb/preprocess.hpp"
#include "sualb/search.hpp"

struct sualb_instance {
    sualb::Instance inst;
    std::vector<std::string> warnings;
};

struct sualb_result {
    sualb::SolveResult res;
};

namespace {

thread_local std::string g_error;

void set_error(const std::string& msg) { g_error = msg; }

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
int guarded(F&& body) {
    try {
        g_error.clear();
        return body();
    } catch (const sualb::ParseError& e) {
        set_error(e.what());
        return SUALB_ERR_PARSE;
    } catch (const sualb::UsageError& e) {
        set_error(e.what());
        return SUALB_ERR_USAGE;
    } catch (const std::exception& e) {
        set_error(e.what());
        return SUALB_ERR_INTERNAL;
    }
}

std::optional<sualb::ProblemType> as_type(int problem_type) {
    if (problem_type == 1) return sualb::ProblemType::type1;
    if (problem_type == 2) return sualb::ProblemType::type2;
    return std::nullopt;
}

sualb::RoundingPolicy as_rounding(sualb_rounding r) {
    switch (r) {
        case SUALB_ROUND_FLOOR: return sualb::RoundingPolicy::floor;
        case SUALB_ROUND_CEIL: return sualb::RoundingPolicy::ceil;
        default: return sualb::RoundingPolicy::half_up;
    }
}

}  // namespace

extern "C" {

const char* sualb_last_error(void) { return g_error.c_str(); }

void sualb_string_free(char* s) { std::free(s); }

int sualb_instance_load(const char* path, sualb_instance** out) {
    if (!path || !out) {
        set_error("null argument");
        return SUALB_ERR_USAGE;
    }
    *out = nullptr;
    return guarded([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            set_error(std::string("cannot open ") + path);
            return static_cast<int>(SUALB_ERR_IO);
        }
        auto handle = std::make_unique<sualb_instance>();
        handle->inst = sualb::load_instance_file(path, &handle->warnings);
        *out = handle.release();
        return static_cast<int>(SUALB_OK);
    });
}

int sualb_instance_parse(const char* text, sualb_instance** out) {
    if (!text || !out) {
        set_error("null argument");
        return SUALB_ERR_USAGE;
    }
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<sualb_instance>();
        std::string body(text);
        std::size_t first = body.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && body[first] == '{')
            handle->inst = sualb::parse_canonical(body);
        else
            handle->inst = sualb::parse_alb(body, &handle->warnings);
        *out = handle.release();
        return static_cast<int>(SUALB_OK);
    });
}

void sualb_instance_free(sualb_instance* inst) { delete inst; }

int sualb_instance_task_count(const sualb_instance* inst) { return inst ? inst->inst.n : 0; }

const char* sualb_instance_name(const sualb_instance* inst) {
    return inst ? inst->inst.name.c_str() : "";
}

long long sualb_instance_cycle_time(const sualb_instance* inst) {
    return inst && inst->inst.cycle_time ? *inst->inst.cycle_time : -1;
}

int sualb_instance_station_count(const sualb_instance* inst) {
    return inst && inst->inst.station_count ? *inst->inst.station_count : -1;
}

int sualb_instance_validate(const sualb_instance* inst, int problem_type, char** report) {
    if (!inst || !report) {
        set_error("null argument");
        return SUALB_ERR_USAGE;
    }
    *report = nullptr;
    return guarded([&] {
        if (problem_type != 0 && !as_type(problem_type)) {
            set_error("problem_type must be 0, 1 or 2");
            return static_cast<int>(SUALB_ERR_USAGE);
        }
        sualb::Diagnostics diag =
            sualb::validate_instance(inst->inst, as_type(problem_type));
        std::string text;
        for (auto& e : diag.errors) text += "error: " + e + "\n";
        for (auto& w : diag.warnings) text += "warning: " + w + "\n";
        *report = dup_string(text);
        if (!diag.ok()) {
            set_error(diag.errors.front());
            return static_cast<int>(SUALB_ERR_INVALID);
        }
        return static_cast<int>(SUALB_OK);
    });
}

int sualb_instance_warning_count(const sualb_instance* inst) {
    return inst ? static_cast<int>(inst->warnings.size()) : 0;
}

const char* sualb_instance_warning(const sualb_instance* inst, int idx) {
    if (!inst || idx < 0 || idx >= static_cast<int>(inst->warnings.size())) return "";
    return inst->warnings[idx].c_str();
}

int sualb_instance_write(const sualb_instance* inst, const char* path) {
    if (!inst || !path) {
        set_error("null argument");
        return SUALB_ERR_USAGE;
    }
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            set_error(std::string("cannot write ") + path);
            return static_cast<int>(SUALB_ERR_IO);
        }
        out << sualb::serialize_canonical(inst->inst);
        out.flush();
        if (!out) {
            set_error(std::string("write failed: ") + path);
            return static_cast<int>(SUALB_ERR_IO);
        }
        return static_cast<int>(SUALB_OK);
    });
}

int sualb_instance_derived_summary(const sualb_instance* inst, int problem_type, char** text) {
    if (!inst || !text) {
        set_error("null argument");
        return SUALB_ERR_USAGE;
    }
    *text = nullptr;
    return guarded([&] {
        auto type = as_type(problem_type);
        if (!type) {
            set_error("problem_type must be 1 or 2");
            return static_cast<int>(SUALB_ERR_USAGE);
        }
        sualb::DerivedData d = sualb::make_derived_data(inst->inst, *type);
        *text = dup_string(sualb::describe_derived(inst->inst, d));
        return static_cast<int>(SUALB_OK);
    });
}

int sualb_derive_station_count(const sualb_instance* inst, sualb_rounding policy, int* out_m) {
    if (!inst || !out_m) {
        set_error("null argument");
        return SUALB_ERR_USAGE;
    }
    return guarded([&] {
        *out_m = sualb::derive_station_count(inst->inst, as_rounding(policy));
        return static_cast<int>(SUALB_OK);
    });
}

void sualb_solve_options_init(sualb_solve_options* opts, int problem_type) {
    if (!opts) return;
    opts->problem_type = problem_type;
    opts->time_limit_s = 1800.0;
    opts->station_count = 0;
    opts->rounding = SUALB_ROUND_HALF_UP;
    opts->use_dual_bounds = 1;
    opts->use_dominance = 1;
    opts->local_improve = 0;
    opts->node_cap = 0;
}

int sualb_solve(const sualb_instance* inst, const sualb_solve_options* opts,
                sualb_result** out) {
    if (!inst || !opts || !out) {
        set_error("null argument");
        return SUALB_ERR_USAGE;
    }
    *out = nullptr;
    return guarded([&] {
        auto type = as_type(opts->problem_type);
        if (!type) {
            set_error("problem_type must be 1 or 2");
            return static_cast<int>(SUALB_ERR_USAGE);
        }
        // Structural validation only: type-level feasibility (a task that
        // cannot fit any station) comes back as an infeasible result instead.
        sualb::Diagnostics diag = sualb::validate_instance(inst->inst, std::nullopt);
        if (!diag.ok()) {
            std::string msg = "invalid instance";
            for (auto& e : diag.errors) msg += "\n  " + e;
            set_error(msg);
            return static_cast<int>(SUALB_ERR_INVALID);
        }
        sualb::Instance work = inst->inst;
        if (*type == sualb::ProblemType::type2 && opts->station_count > 0)
            work.station_count = opts->station_count;
        sualb::SolveOptions so;
        so.time_limit_s = opts->time_limit_s;
        so.rounding = as_rounding(opts->rounding);
        so.use_dual_bounds = opts->use_dual_bounds != 0;
        so.use_dominance = opts->use_dominance != 0;
        so.local_improve = opts->local_improve != 0;
        if (opts->node_cap > 0) so.node_cap = opts->node_cap;
        auto handle = std::make_unique<sualb_result>();
        handle->res = sualb::solve(work, *type, so);
        *out = handle.release();
        return static_cast<int>(SUALB_OK);
    });
}

void sualb_result_free(sualb_result* res) { delete res; }

sualb_solve_status sualb_result_status(const sualb_result* res) {
    switch (res->res.status) {
        case sualb::SolveStatus::optimal: return SUALB_STATUS_OPTIMAL;
        case sualb::SolveStatus::feasible: return SUALB_STATUS_FEASIBLE;
        case sualb::SolveStatus::infeasible: return SUALB_STATUS_INFEASIBLE;
        default: return SUALB_STATUS_TIMEOUT_NO_SOLUTION;
    }
}

long long sualb_result_objective(const sualb_result* res) {
    return res->res.best ? res->res.best->objective : -1;
}

long long sualb_result_lower_bound(const sualb_result* res) { return res->res.lower_bound; }

double sualb_result_runtime_s(const sualb_result* res) { return res->res.runtime_s; }

int sualb_result_station_count(const sualb_result* res) {
    return res->res.best ? static_cast<int>(res->res.best->stations.size()) : 0;
}

int sualb_result_station_size(const sualb_result* res, int station) {
    if (!res->res.best || station < 0 ||
        station >= static_cast<int>(res->res.best->stations.size()))
        return -1;
    return static_cast<int>(res->res.best->stations[station].size());
}

int sualb_result_station_task(const sualb_result* res, int station, int pos) {
    if (!res->res.best || station < 0 ||
        station >= static_cast<int>(res->res.best->stations.size()))
        return -1;
    const auto& seq = res->res.best->stations[station];
    if (pos < 0 || pos >= static_cast<int>(seq.size())) return -1;
    return seq[pos] + 1;
}

long long sualb_result_station_time(const sualb_result* res, int station) {
    if (!res->res.best || station < 0 ||
        station >= static_cast<int>(res->res.best->stations.size()))
        return -1;
    return res->res.best->station_times[station];
}

int sualb_result_trace_length(const sualb_result* res) {
    return static_cast<int>(res->res.trace.points.size());
}

int sualb_result_trace_point(const sualb_result* res, int idx, double* seconds,
                             long long* objective) {
    if (idx < 0 || idx >= static_cast<int>(res->res.trace.points.size())) {
        set_error("trace index out of range");
        return SUALB_ERR_USAGE;
    }
    if (seconds) *seconds = res->res.trace.points[idx].seconds;
    if (objective) *objective = res->res.trace.points[idx].objective;
    return SUALB_OK;
}

int sualb_result_stats(const sualb_result* res, sualb_solve_stats* out) {
    if (!res || !out) {
        set_error("null argument");
        return SUALB_ERR_USAGE;
    }
    const sualb::SolveStats& s = res->res.stats;
    out->expansions = s.expansions;
    out->generated = s.generated;
    out->pruned_by_bound = s.pruned_by_bound;
    out->pruned_by_dominance = s.pruned_by_dominance;
    out->duplicates = s.duplicates;
    out->beam_iterations = static_cast<int>(s.beam_iterations);
    out->peak_layer = s.peak_layer;
    out->improve_calls = s.improve_calls;
    out->improve_successes = s.improve_successes;
    return SUALB_OK;
}

int sualb_oracle_solve(const sualb_instance* inst, int problem_type, int station_count,
                       long long* objective) {
    if (!inst || !objective) {
        set_error("null argument");
        return SUALB_ERR_USAGE;
    }
    return guarded([&] {
        auto type = as_type(problem_type);
        if (!type) {
            set_error("problem_type must be 1 or 2");
            return static_cast<int>(SUALB_ERR_USAGE);
        }
        sualb::OracleResult r;
        if (*type == sualb::ProblemType::type1) {
            r = sualb::brute_force_type1(inst->inst);
        } else {
            int m = station_count > 0 ? station_count
                                      : inst->inst.station_count.value_or(0);
            if (m <= 0) {
                set_error("type 2 oracle needs a station count");
                return static_cast<int>(SUALB_ERR_USAGE);
            }
            r = sualb::brute_force_type2(inst->inst, m);
        }
        *objective = r.objective ? *r.objective : -1;
        return static_cast<int>(SUALB_OK);
    });
}

void sualb_bench_options_init(sualb_bench_options* opts, int problem_type) {
    if (!opts) return;
    opts->problem_type = problem_type;
    opts->time_limit_s = 1800.0;
    opts->rounding = SUALB_ROUND_HALF_UP;
    opts->use_dual_bounds = 1;
    opts->use_dominance = 1;
    opts->local_improve = 0;
    opts->jobs = 1;
    opts->out_dir = nullptr;
    opts->best_known_path = nullptr;
    opts->alpha_label = nullptr;
}

int sualb_bench_run(const char* const* paths, int n_paths, const sualb_bench_options* opts,
                    char** table_out, char** summary_out) {
    if (!paths || n_paths < 0 || !opts || !table_out) {
        set_error("null argument");
        return SUALB_ERR_USAGE;
    }
    *table_out = nullptr;
    if (summary_out) *summary_out = nullptr;
    return guarded([&] {
        auto type = as_type(opts->problem_type);
        if (!type) {
            set_error("problem_type must be 1 or 2");
            return static_cast<int>(SUALB_ERR_USAGE);
        }
        sualb::BenchConfig cfg;
        cfg.type = *type;
        cfg.time_limit_s = opts->time_limit_s;
        cfg.rounding = as_rounding(opts->rounding);
        cfg.use_dual_bounds = opts->use_dual_bounds != 0;
        cfg.use_dominance = opts->use_dominance != 0;
        cfg.local_improve = opts->local_improve != 0;
        cfg.jobs = opts->jobs;
        if (opts->out_dir) cfg.out_dir = opts->out_dir;
        if (opts->best_known_path) cfg.best_known = sualb::load_best_known(opts->best_known_path);
        if (opts->alpha_label) cfg.alpha_label = opts->alpha_label;
        std::vector<std::string> files(paths, paths + n_paths);
        std::vector<sualb::BenchRow> rows = sualb::run_benchmark(files, cfg);
        *table_out = dup_string(sualb::format_results_table(rows));
        if (summary_out) *summary_out = dup_string(sualb::format_summary(rows));
        return static_cast<int>(SUALB_OK);
    });
}

}  // extern "C"
