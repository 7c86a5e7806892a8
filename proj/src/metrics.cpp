#include "sualb/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace sualb {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(std::llabs(num), den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

void IncumbentTrace::record(double seconds, long long objective) {
    if (!points.empty()) {
        if (objective >= points.back().objective) return;
        if (seconds <= points.back().seconds) seconds = points.back().seconds + 1e-9;
    }
    points.push_back({seconds, objective});
}

Rational primal_gap(std::optional<long long> incumbent, long long reference) {
    if (!incumbent) return Rational::one();
    long long inc = *incumbent;
    if (inc == 0 && reference == 0) return Rational::zero();
    // Opposite signs make the relative measure meaningless.
    if ((inc < 0 && reference > 0) || (inc > 0 && reference < 0)) return Rational::one();
    long long diff = std::llabs(reference - inc);
    long long scale = std::max(std::llabs(reference), std::llabs(inc));
    return Rational(diff, scale);
}

double primal_integral(const IncumbentTrace& trace) {
    const double T = trace.horizon;
    if (T < 0) throw std::invalid_argument("negative horizon");
    if (!trace.reference && !trace.points.empty())
        throw std::invalid_argument("trace has incumbents but no reference objective");

    // Step function: gap 1 until the first incumbent, then the gap of the
    // latest incumbent, and 0 from an infeasibility proof on.
    double total = 0.0;
    double t_prev = 0.0;
    double gap_prev = 1.0;
    auto advance = [&](double t_next, double gap_next) {
        if (t_next > T) t_next = T;
        if (t_next > t_prev) total += gap_prev * (t_next - t_prev);
        t_prev = std::max(t_prev, std::min(t_next, T));
        gap_prev = gap_next;
    };
    for (const TracePoint& p : trace.points) {
        double g = primal_gap(p.objective, *trace.reference).to_double();
        advance(p.seconds, g);
    }
    if (trace.infeasible_proved_at) advance(*trace.infeasible_proved_at, 0.0);
    advance(T, gap_prev);
    return total;
}

}  // namespace sualb
