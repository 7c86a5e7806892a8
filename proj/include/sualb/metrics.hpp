#ifndef SUALB_METRICS_HPP
#define SUALB_METRICS_HPP

#include <optional>
#include <vector>

namespace sualb {

// Exact fraction, always reduced, denominator > 0.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1, 1); }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
};

struct TracePoint {
    double seconds;        // elapsed since solve start
    long long objective;
};

// Incumbent history of one run. `horizon` is the evaluation window T and
// `reference` the comparison objective (proven optimum or best known).
struct IncumbentTrace {
    std::vector<TracePoint> points;  // strictly increasing in time, strictly improving
    double horizon = 0.0;
    std::optional<long long> reference;
    std::optional<double> infeasible_proved_at;

    // Keeps both monotonicity invariants; ignores non-improving objectives.
    void record(double seconds, long long objective);
};

// Relative distance of an incumbent from the reference, in [0,1]:
// 1 with no incumbent (or opposite signs), 0 when both are zero,
// |ref - inc| / max(|ref|, |inc|) otherwise.
Rational primal_gap(std::optional<long long> incumbent, long long reference);

// Integral of the primal-gap step function over [0, horizon]. The gap is 1
// before the first incumbent and drops to 0 from an infeasibility proof on.
// Requires trace.reference unless the trace carries an infeasibility proof
// and no points.
double primal_integral(const IncumbentTrace& trace);

}  // namespace sualb

#endif
