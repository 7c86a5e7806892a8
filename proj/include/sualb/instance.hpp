#ifndef SUALB_INSTANCE_HPP
#define SUALB_INSTANCE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sualb {

enum class ProblemType { type1 = 1, type2 = 2 };

// One balancing instance. Matrices are dense n x n; a pair absent from the
// input file simply stays 0. Task ids are 0-based here, 1-based in files.
struct Instance {
    std::string name;
    int n = 0;
    std::vector<int> task_times;
    std::vector<std::pair<int, int>> precedence;  // (pred, succ)
    std::vector<std::vector<int>> fwd_setup;      // tau[i][j]: i then j inside a station
    std::vector<std::vector<int>> bwd_setup;      // mu[i][j]: i last, j first of next cycle
    std::optional<int> cycle_time;
    std::optional<int> station_count;
    std::optional<std::string> alpha;  // setup-scale label, informational

    long long total_time() const {
        long long s = 0;
        for (int t : task_times) s += t;
        return s;
    }
};

// Field-wise equality with precedence order ignored; name/alpha are metadata
// and excluded (the plain .alb format does not carry them).
bool semantically_equal(const Instance& a, const Instance& b);

struct Diagnostics {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

struct ParseError : std::runtime_error {
    int line;
    std::string tag;
    ParseError(const std::string& msg, int line_, std::string tag_);
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tag-delimited .alb reader/writer. Parsing throws ParseError on malformed
// input (including precedence cycles); recoverable oddities such as unknown
// tags or missing setup sections land in *warnings.
Instance parse_alb(const std::string& text, std::vector<std::string>* warnings = nullptr);
std::string serialize_alb(const Instance& inst);

// Canonical single-document form (JSON), carrying every Instance field.
Instance parse_canonical(const std::string& text);
std::string serialize_canonical(const Instance& inst);

// Dispatches on content ('{' starts the canonical form), fills name from the
// file stem when the document does not provide one.
Instance load_instance_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

// Structural checks plus the setup triangle scan. When the caller states the
// intended problem type, type-specific feasibility conditions are errors;
// without it they are reported as warnings only.
Diagnostics validate_instance(const Instance& inst,
                              std::optional<ProblemType> intended = std::nullopt);

enum class RoundingPolicy { floor, half_up, ceil };

// Station count for running a cycle-time instance as type 2: round(sum t / c)
// under the chosen policy, clamped to >= 1. Throws UsageError without a cycle time.
int derive_station_count(const Instance& inst, RoundingPolicy policy = RoundingPolicy::half_up);

}  // namespace sualb

#endif
