#include "sualb/instance.hpp"

#include "sualb/types.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sualb {

ParseError::ParseError(const std::string& msg, int line_, std::string tag_)
    : std::runtime_error(tag_.empty() ? "line " + std::to_string(line_) + ": " + msg
                                      : "line " + std::to_string(line_) + " (<" + tag_ + ">): " + msg),
      line(line_),
      tag(std::move(tag_)) {}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Strict integer: the whole token must be consumed, so "3.5" is rejected.
bool to_int(const std::string& tok, long long& out) {
    std::string t = trim(tok);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

// Splits "i,j:v" / "i,j,v" / "i j v" style records into integer fields.
std::vector<long long> split_ints(const std::string& line, int line_no, const std::string& tag) {
    std::vector<long long> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        long long v;
        if (!to_int(cur, v)) throw ParseError("expected an integer, got '" + cur + "'", line_no, tag);
        out.push_back(v);
        cur.clear();
    };
    for (char c : line) {
        if (c == ',' || c == ':' || c == ';' || std::isspace(static_cast<unsigned char>(c)))
            flush();
        else
            cur += c;
    }
    flush();
    return out;
}

bool has_cycle(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(n);
    std::vector<int> indeg(n, 0);
    for (auto& [a, b] : edges) {
        adj[a].push_back(b);
        ++indeg[b];
    }
    std::vector<int> stack;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) stack.push_back(i);
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int u : adj[v])
            if (--indeg[u] == 0) stack.push_back(u);
    }
    return seen != n;
}

void warn(std::vector<std::string>* warnings, const std::string& msg) {
    if (warnings) warnings->push_back(msg);
}

const char* kBackwardTags[] = {
    "setup times backward",
    "setup times backwards",
    "backward setup times",
    "sequence dependent time increments backward",
};

}  // namespace

Instance parse_alb(const std::string& text, std::vector<std::string>* warnings) {
    Instance inst;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    enum class Section {
        none, task_count, cycle, order_strength, times, precedence, fwd, bwd, skip, done
    };
    Section section = Section::none;
    std::string tag;
    bool have_n = false, have_times_tag = false, have_fwd = false, have_bwd = false;
    std::vector<bool> time_seen;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '<') {
            if (line.back() != '>')
                throw ParseError("unterminated tag '" + line + "'", line_no, "");
            tag = lower(trim(line.substr(1, line.size() - 2)));
            if (tag == "number of tasks")
                section = Section::task_count;
            else if (tag == "cycle time")
                section = Section::cycle;
            else if (tag == "order strength")
                section = Section::order_strength;
            else if (tag == "task times")
                section = Section::times;
            else if (tag == "precedence relations")
                section = Section::precedence;
            else if (tag == "sequence dependent time increments")
                section = Section::fwd;
            else if (std::find(std::begin(kBackwardTags), std::end(kBackwardTags), tag) !=
                     std::end(kBackwardTags))
                section = Section::bwd;
            else if (tag == "end") {
                section = Section::done;
                break;
            } else {
                warn(warnings, "line " + std::to_string(line_no) + ": unknown tag <" + tag +
                                   ">, section skipped");
                section = Section::skip;
            }
            if (section == Section::times) {
                if (!have_n) throw ParseError("task times before the task count", line_no, tag);
                have_times_tag = true;
            }
            if (section == Section::fwd || section == Section::bwd) {
                if (!have_n) throw ParseError("setup section before the task count", line_no, tag);
                (section == Section::fwd ? have_fwd : have_bwd) = true;
            }
            if (section == Section::precedence && !have_n)
                throw ParseError("precedence before the task count", line_no, tag);
            continue;
        }

        switch (section) {
            case Section::none:
                throw ParseError("content before any tag: '" + line + "'", line_no, "");
            case Section::skip:
            case Section::order_strength:
            case Section::done:
                break;
            case Section::task_count: {
                long long v;
                if (!to_int(line, v) || v < 0 || v > 1000000)
                    throw ParseError("invalid task count '" + line + "'", line_no, tag);
                inst.n = static_cast<int>(v);
                inst.task_times.assign(inst.n, 0);
                time_seen.assign(inst.n, false);
                inst.fwd_setup.assign(inst.n, std::vector<int>(inst.n, 0));
                inst.bwd_setup.assign(inst.n, std::vector<int>(inst.n, 0));
                have_n = true;
                break;
            }
            case Section::cycle: {
                long long v;
                if (!to_int(line, v))
                    throw ParseError("non-integer cycle time '" + line + "'", line_no, tag);
                inst.cycle_time = static_cast<int>(v);
                break;
            }
            case Section::times: {
                auto f = split_ints(line, line_no, tag);
                if (f.size() != 2)
                    throw ParseError("expected 'id time', got '" + line + "'", line_no, tag);
                long long id = f[0], t = f[1];
                if (id < 1 || id > inst.n)
                    throw ParseError("task id " + std::to_string(id) + " outside 1.." +
                                         std::to_string(inst.n),
                                     line_no, tag);
                if (time_seen[id - 1])
                    throw ParseError("duplicate time for task " + std::to_string(id), line_no, tag);
                time_seen[id - 1] = true;
                inst.task_times[id - 1] = static_cast<int>(t);
                break;
            }
            case Section::precedence: {
                auto f = split_ints(line, line_no, tag);
                if (f.size() != 2)
                    throw ParseError("expected 'pred,succ', got '" + line + "'", line_no, tag);
                for (long long id : f)
                    if (id < 1 || id > inst.n)
                        throw ParseError("task id " + std::to_string(id) + " outside 1.." +
                                             std::to_string(inst.n),
                                         line_no, tag);
                if (f[0] == f[1])
                    throw ParseError("task " + std::to_string(f[0]) + " precedes itself", line_no,
                                     tag);
                inst.precedence.emplace_back(static_cast<int>(f[0] - 1), static_cast<int>(f[1] - 1));
                break;
            }
            case Section::fwd:
            case Section::bwd: {
                auto f = split_ints(line, line_no, tag);
                if (f.size() != 3)
                    throw ParseError("expected 'i,j:value', got '" + line + "'", line_no, tag);
                for (int k = 0; k < 2; ++k)
                    if (f[k] < 1 || f[k] > inst.n)
                        throw ParseError("task id " + std::to_string(f[k]) + " outside 1.." +
                                             std::to_string(inst.n),
                                         line_no, tag);
                auto& m = section == Section::fwd ? inst.fwd_setup : inst.bwd_setup;
                m[f[0] - 1][f[1] - 1] = static_cast<int>(f[2]);
                break;
            }
        }
    }

    if (!have_n) throw ParseError("missing <number of tasks>", line_no, "");
    if (inst.n > 0 && !have_times_tag) throw ParseError("missing <task times>", line_no, "");
    for (int i = 0; i < inst.n; ++i)
        if (!time_seen[i])
            throw ParseError("no time given for task " + std::to_string(i + 1), line_no,
                             "task times");
    if (!have_fwd)
        warn(warnings, "no forward setup section; all forward setups taken as 0");
    if (!have_bwd)
        warn(warnings, "no backward setup section; all backward setups taken as 0");
    if (has_cycle(inst.n, inst.precedence))
        throw ParseError("precedence relations contain a cycle", line_no, "precedence relations");
    return inst;
}

std::string serialize_alb(const Instance& inst) {
    std::ostringstream out;
    out << "<number of tasks>\n" << inst.n << "\n\n";
    if (inst.cycle_time) out << "<cycle time>\n" << *inst.cycle_time << "\n\n";
    out << "<task times>\n";
    for (int i = 0; i < inst.n; ++i) out << i + 1 << " " << inst.task_times[i] << "\n";
    out << "\n<precedence relations>\n";
    for (auto& [a, b] : inst.precedence) out << a + 1 << "," << b + 1 << "\n";
    out << "\n<sequence dependent time increments>\n";
    for (int i = 0; i < inst.n; ++i)
        for (int j = 0; j < inst.n; ++j)
            if (inst.fwd_setup[i][j] != 0)
                out << i + 1 << "," << j + 1 << ":" << inst.fwd_setup[i][j] << "\n";
    out << "\n<setup times backward>\n";
    for (int i = 0; i < inst.n; ++i)
        for (int j = 0; j < inst.n; ++j)
            if (inst.bwd_setup[i][j] != 0)
                out << i + 1 << "," << j + 1 << ":" << inst.bwd_setup[i][j] << "\n";
    out << "\n<end>\n";
    return out.str();
}

Instance parse_canonical(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what(), 0, "");
    }
    auto fail = [](const std::string& msg) { throw ParseError(msg, 0, ""); };

    Instance inst;
    try {
        if (!j.contains("tasks")) fail("missing field 'tasks'");
        inst.n = j.at("tasks").get<int>();
        if (inst.n < 0) fail("negative task count");
        inst.name = j.value("name", std::string());
        inst.task_times = j.at("task_times").get<std::vector<int>>();
        if (static_cast<int>(inst.task_times.size()) != inst.n)
            fail("task_times length differs from 'tasks'");
        for (auto& e : j.value("precedence", nlohmann::json::array())) {
            if (!e.is_array() || e.size() != 2) fail("precedence entries must be [pred, succ]");
            int a = e[0].get<int>(), b = e[1].get<int>();
            if (a < 1 || a > inst.n || b < 1 || b > inst.n) fail("precedence task id out of range");
            if (a == b) fail("task precedes itself");
            inst.precedence.emplace_back(a - 1, b - 1);
        }
        auto matrix = [&](const char* key) {
            std::vector<std::vector<int>> m;
            if (j.contains(key)) {
                m = j.at(key).get<std::vector<std::vector<int>>>();
                if (static_cast<int>(m.size()) != inst.n) fail(std::string(key) + " has wrong row count");
                for (auto& row : m)
                    if (static_cast<int>(row.size()) != inst.n)
                        fail(std::string(key) + " has a wrong-sized row");
            } else {
                m.assign(inst.n, std::vector<int>(inst.n, 0));
            }
            return m;
        };
        inst.fwd_setup = matrix("forward_setup");
        inst.bwd_setup = matrix("backward_setup");
        if (j.contains("cycle_time")) inst.cycle_time = j.at("cycle_time").get<int>();
        if (j.contains("station_count")) inst.station_count = j.at("station_count").get<int>();
        if (j.contains("alpha")) inst.alpha = j.at("alpha").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what(), 0, "");
    }
    if (has_cycle(inst.n, inst.precedence))
        throw ParseError("precedence relations contain a cycle", 0, "");
    return inst;
}

std::string serialize_canonical(const Instance& inst) {
    nlohmann::json j;
    j["name"] = inst.name;
    j["tasks"] = inst.n;
    j["task_times"] = inst.task_times;
    auto prec = nlohmann::json::array();
    for (auto& [a, b] : inst.precedence) prec.push_back({a + 1, b + 1});
    j["precedence"] = prec;
    j["forward_setup"] = inst.fwd_setup;
    j["backward_setup"] = inst.bwd_setup;
    if (inst.cycle_time) j["cycle_time"] = *inst.cycle_time;
    if (inst.station_count) j["station_count"] = *inst.station_count;
    if (inst.alpha) j["alpha"] = *inst.alpha;
    return j.dump(2) + "\n";
}

Instance load_instance_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    size_t first = text.find_first_not_of(" \t\r\n");
    Instance inst;
    if (first != std::string::npos && text[first] == '{')
        inst = parse_canonical(text);
    else
        inst = parse_alb(text, warnings);
    if (inst.name.empty()) inst.name = std::filesystem::path(path).stem().string();
    return inst;
}

bool semantically_equal(const Instance& a, const Instance& b) {
    if (a.n != b.n || a.task_times != b.task_times) return false;
    auto pa = a.precedence, pb = b.precedence;
    std::sort(pa.begin(), pa.end());
    pa.erase(std::unique(pa.begin(), pa.end()), pa.end());
    std::sort(pb.begin(), pb.end());
    pb.erase(std::unique(pb.begin(), pb.end()), pb.end());
    if (pa != pb) return false;
    return a.fwd_setup == b.fwd_setup && a.bwd_setup == b.bwd_setup &&
           a.cycle_time == b.cycle_time && a.station_count == b.station_count;
}

Diagnostics validate_instance(const Instance& inst, std::optional<ProblemType> intended) {
    Diagnostics diag;
    auto err = [&](const std::string& m) { diag.errors.push_back(m); };

    if (inst.n < 1) {
        err("instance has no tasks");
        return diag;
    }
    if (inst.n > kMaxTasks) {
        err("instance has " + std::to_string(inst.n) + " tasks, limit is " +
            std::to_string(kMaxTasks));
        return diag;
    }
    if (static_cast<int>(inst.task_times.size()) != inst.n) {
        err("task time count differs from task count");
        return diag;
    }
    auto square = [&](const std::vector<std::vector<int>>& m, const char* what) {
        if (static_cast<int>(m.size()) != inst.n) {
            err(std::string(what) + " matrix is not n x n");
            return false;
        }
        for (auto& row : m)
            if (static_cast<int>(row.size()) != inst.n) {
                err(std::string(what) + " matrix is not n x n");
                return false;
            }
        return true;
    };
    if (!square(inst.fwd_setup, "forward setup") || !square(inst.bwd_setup, "backward setup"))
        return diag;

    for (int i = 0; i < inst.n; ++i)
        if (inst.task_times[i] < 1)
            err("task " + std::to_string(i + 1) + " has time " +
                std::to_string(inst.task_times[i]) + ", must be >= 1");
    for (int i = 0; i < inst.n; ++i)
        for (int j = 0; j < inst.n; ++j) {
            if (inst.fwd_setup[i][j] < 0)
                err("forward setup (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                    ") is negative");
            if (inst.bwd_setup[i][j] < 0)
                err("backward setup (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                    ") is negative");
        }

    bool prec_ok = true;
    for (auto& [a, b] : inst.precedence) {
        if (a < 0 || a >= inst.n || b < 0 || b >= inst.n) {
            err("precedence pair references a task outside 1..n");
            prec_ok = false;
        } else if (a == b) {
            err("task " + std::to_string(a + 1) + " precedes itself");
            prec_ok = false;
        }
    }
    if (prec_ok && has_cycle(inst.n, inst.precedence))
        err("precedence relations contain a cycle");

    if (inst.cycle_time && *inst.cycle_time < 1) err("cycle time must be >= 1");
    if (inst.station_count && *inst.station_count < 1) err("station count must be >= 1");

    // A processing time above the cycle time kills type-1 feasibility outright;
    // the same is true of the single-task station when there is only one task.
    // A task that merely cannot close a station alone (time plus its own
    // backward setup exceed c) may still ride in the middle of a station, so
    // that case is only worth a warning.
    if (inst.cycle_time && *inst.cycle_time >= 1 && diag.errors.empty()) {
        for (int i = 0; i < inst.n; ++i) {
            long long alone = inst.task_times[i] + inst.bwd_setup[i][i];
            bool hard = inst.task_times[i] > *inst.cycle_time || (inst.n == 1 && alone > *inst.cycle_time);
            if (hard) {
                std::string msg = "task " + std::to_string(i + 1) + " needs " +
                                  std::to_string(inst.n == 1 ? alone : (long long)inst.task_times[i]) +
                                  " on its own, above the cycle time " +
                                  std::to_string(*inst.cycle_time);
                if (intended == ProblemType::type1)
                    err(msg);
                else if (!intended)
                    diag.warnings.push_back(msg + " (infeasible as type 1)");
            } else if (alone > *inst.cycle_time && intended != ProblemType::type2) {
                diag.warnings.push_back("task " + std::to_string(i + 1) +
                                        " cannot form a single-task station (" +
                                        std::to_string(alone) + " > cycle time " +
                                        std::to_string(*inst.cycle_time) + ")");
            }
        }
    }
    if (intended == ProblemType::type1 && !inst.cycle_time)
        err("type 1 requires a cycle time");
    if (intended == ProblemType::type2 && !inst.station_count && !inst.cycle_time)
        err("type 2 requires a station count or a cycle time to derive it from");

    // Setup times that are slower than a detour over a third task are legal
    // but usually indicate data problems.
    if (diag.errors.empty()) {
        int reported = 0;
        for (int i = 0; i < inst.n && reported <= 100; ++i)
            for (int j = 0; j < inst.n && reported <= 100; ++j) {
                if (j == i) continue;
                for (int k = 0; k < inst.n; ++k) {
                    if (k == i || k == j) continue;
                    long long direct = inst.fwd_setup[i][k];
                    long long via = static_cast<long long>(inst.fwd_setup[i][j]) +
                                    inst.task_times[j] + inst.fwd_setup[j][k];
                    if (direct > via) {
                        if (reported < 100)
                            diag.warnings.push_back(
                                "forward setup triangle violated: (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + "," + std::to_string(k + 1) + "): " +
                                std::to_string(direct) + " > " + std::to_string(via));
                        if (++reported > 100) {
                            diag.warnings.push_back("further triangle violations suppressed");
                            break;
                        }
                    }
                }
            }
    }
    return diag;
}

int derive_station_count(const Instance& inst, RoundingPolicy policy) {
    if (!inst.cycle_time) throw UsageError("instance has no cycle time to derive a station count");
    if (*inst.cycle_time < 1) throw UsageError("cycle time must be >= 1");
    long long sum = inst.total_time();
    long long c = *inst.cycle_time;
    long long m;
    switch (policy) {
        case RoundingPolicy::floor: m = sum / c; break;
        case RoundingPolicy::ceil: m = (sum + c - 1) / c; break;
        case RoundingPolicy::half_up:
        default: m = (2 * sum + c) / (2 * c); break;
    }
    return static_cast<int>(std::max<long long>(1, m));
}

}  // namespace sualb
