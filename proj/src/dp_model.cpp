#include "sualb/dp_model.hpp"

#include <algorithm>
#include <climits>

namespace sualb {

State1 target_state1(const DerivedData& d) {
    State1 s;
    s.unscheduled = TaskSet::full(d.n);
    s.station_idx = 0;
    s.prev_task = s.first_task = d.sentinel();
    s.remaining = 0;
    return s;
}

State2 target_state2(const DerivedData& d) {
    State2 s;
    s.unscheduled = TaskSet::full(d.n);
    s.station_idx = 0;
    s.prev_task = s.first_task = d.sentinel();
    s.used_time = 0;
    s.cycle = 0;
    return s;
}

bool is_base(const State1& s, const DerivedData& d) {
    return s.unscheduled.empty() && s.first_task == d.sentinel();
}

bool is_base(const State2& s, const DerivedData& d) {
    return s.unscheduled.empty() && s.first_task == d.sentinel();
}

const char* to_string(TransitionKind k) {
    switch (k) {
        case TransitionKind::assign_first: return "assign_first";
        case TransitionKind::assign_next: return "assign_next";
        case TransitionKind::close_station: return "close_station";
    }
    return "?";
}

std::vector<std::pair<TransitionRecord, State1>> successors_type1(const State1& s,
                                                                  const DerivedData& d) {
    std::vector<std::pair<TransitionRecord, State1>> out;
    const int ds = d.sentinel();
    const long long c = d.c_upper;

    if (s.first_task == ds) {
        for (int i = s.unscheduled.next(0); i >= 0; i = s.unscheduled.next(i + 1)) {
            if (s.unscheduled.intersects(d.pred_star[i])) continue;
            if (d.time_ext[i] > c) continue;
            State1 t = s;
            t.unscheduled.remove(i);
            t.station_idx = s.station_idx + 1;
            t.prev_task = t.first_task = i;
            t.remaining = c - d.time_ext[i];
            out.push_back({{TransitionKind::assign_first, i, 1}, t});
        }
        return out;
    }

    bool any_fits_with_close = false;
    for (int i = s.unscheduled.next(0); i >= 0; i = s.unscheduled.next(i + 1)) {
        if (s.unscheduled.intersects(d.pred_star[i])) continue;
        long long need = d.time_ext[i] + d.fwd_ext[s.prev_task][i];
        if (need <= s.remaining) {
            State1 t = s;
            t.unscheduled.remove(i);
            t.prev_task = i;
            t.remaining = s.remaining - need;
            out.push_back({{TransitionKind::assign_next, i, 0}, t});
            if (need + d.bwd_ext[i][s.first_task] <= s.remaining) any_fits_with_close = true;
        }
    }
    // The station may only close while no available task could still join it
    // and leave it closable; both moves can coexist otherwise.
    long long closing = d.bwd_ext[s.prev_task][s.first_task];
    if (closing <= s.remaining && !any_fits_with_close) {
        State1 t = s;
        t.prev_task = t.first_task = ds;
        t.remaining = 0;
        out.push_back({{TransitionKind::close_station, -1, 0}, t});
    }
    return out;
}

std::vector<std::pair<TransitionRecord, State2>> successors_type2(const State2& s,
                                                                  const DerivedData& d) {
    std::vector<std::pair<TransitionRecord, State2>> out;
    const int ds = d.sentinel();
    const int m = d.station_cap();

    if (s.first_task == ds) {
        if (s.station_idx >= m) return out;
        for (int i = s.unscheduled.next(0); i >= 0; i = s.unscheduled.next(i + 1)) {
            if (s.unscheduled.intersects(d.pred_star[i])) continue;
            State2 t = s;
            t.unscheduled.remove(i);
            t.station_idx = s.station_idx + 1;
            t.prev_task = t.first_task = i;
            t.used_time = d.time_ext[i];
            t.cycle = std::max(s.cycle, t.used_time);
            out.push_back({{TransitionKind::assign_first, i, t.used_time}, t});
        }
        return out;
    }

    for (int i = s.unscheduled.next(0); i >= 0; i = s.unscheduled.next(i + 1)) {
        if (s.unscheduled.intersects(d.pred_star[i])) continue;
        State2 t = s;
        t.unscheduled.remove(i);
        t.prev_task = i;
        t.used_time = s.used_time + d.time_ext[i] + d.fwd_ext[s.prev_task][i];
        t.cycle = std::max(s.cycle, t.used_time);
        out.push_back({{TransitionKind::assign_next, i, t.used_time}, t});
    }
    {
        State2 t = s;
        t.used_time = s.used_time + d.bwd_ext[s.prev_task][s.first_task];
        t.cycle = std::max(s.cycle, t.used_time);
        t.prev_task = t.first_task = ds;
        out.push_back({{TransitionKind::close_station, -1, t.used_time}, t});
    }
    return out;
}

KnapsackWeights knapsack_weights(long long t, long long c) {
    KnapsackWeights w;
    if (t <= 0) return w;
    if (2 * t > c) w.w2 = 6;
    if (2 * t == c) w.w2p = 3;
    if (3 * t > 2 * c)
        w.w3 = 6;
    else if (3 * t == 2 * c)
        w.w3 = 4;
    else if (3 * t > c)
        w.w3 = 3;
    else if (3 * t == c)
        w.w3 = 2;
    return w;
}

namespace {
// Sentinel for a term that does not apply in the current state.
constexpr long long kUnusable = LLONG_MIN / 4;
}

long long DualBoundTerms1::value() const {
    long long v = std::max({setup_aware, backward_only, capacity_only, pack2, pack3});
    return std::max<long long>(v, 0);
}

DualBoundTerms1 dual_bound_type1_terms(const State1& s, const DerivedData& d) {
    DualBoundTerms1 terms;
    const long long c = d.c_upper;
    long long sum_t = 0, sum_loaded = 0;
    long long max_tau = 0, min_mu = 0;
    int w2 = 0, w2p = 0, w3 = 0;
    bool first = true;
    for (int i = s.unscheduled.next(0); i >= 0; i = s.unscheduled.next(i + 1)) {
        sum_t += d.time_ext[i];
        sum_loaded += d.time_ext[i] + d.min_fwd_setup[i];
        max_tau = std::max<long long>(max_tau, d.min_fwd_setup[i]);
        min_mu = first ? d.min_bwd_setup[i] : std::min<long long>(min_mu, d.min_bwd_setup[i]);
        first = false;
        KnapsackWeights w = knapsack_weights(d.time_ext[i], c);
        w2 += w.w2;
        w2p += w.w2p;
        w3 += w.w3;
    }
    const long long mu_f = d.min_bwd_setup[s.first_task];
    const long long r = s.remaining;

    // The station-budget correction only means anything while the path is
    // still within the first-fit bound.
    if (s.station_idx <= d.m_upper) {
        long long spare = static_cast<long long>(d.m_upper - s.station_idx) * max_tau;
        long long definite = std::max<long long>(d.m_lower - s.station_idx, 0) * min_mu;
        terms.setup_aware = ceil_div(mu_f + sum_loaded - spare + definite - r, c);
    } else {
        terms.setup_aware = kUnusable;
    }
    terms.backward_only = ceil_div(mu_f + sum_t - r, c);
    terms.capacity_only = ceil_div(sum_t - r, c);

    // Remaining idle time acts as one phantom task the open station can
    // still absorb.
    KnapsackWeights cred = knapsack_weights(r, c);
    terms.pack2 = w2 / 6 + ceil_div(w2p - cred.w2 - cred.w2p, 6);
    terms.pack3 = ceil_div(w3 - cred.w3, 6);
    return terms;
}

long long dual_bound_type1(const State1& s, const DerivedData& d) {
    return dual_bound_type1_terms(s, d).value();
}

long long DualBoundTerms2::value() const {
    return std::max({current_cycle, setup_aware, capacity_only});
}

DualBoundTerms2 dual_bound_type2_terms(const State2& s, const DerivedData& d) {
    DualBoundTerms2 terms;
    const int m = d.station_cap();
    long long sum_t = 0, sum_loaded = 0;
    long long max_tau = 0, min_mu = 0;
    bool first = true;
    for (int i = s.unscheduled.next(0); i >= 0; i = s.unscheduled.next(i + 1)) {
        sum_t += d.time_ext[i];
        sum_loaded += d.time_ext[i] + d.min_fwd_setup[i];
        max_tau = std::max<long long>(max_tau, d.min_fwd_setup[i]);
        min_mu = first ? d.min_bwd_setup[i] : std::min<long long>(min_mu, d.min_bwd_setup[i]);
        first = false;
    }
    const long long mu_f = d.min_bwd_setup[s.first_task];
    long long divisor = std::min<long long>(m, m - s.station_idx + 1);
    if (divisor < 1) divisor = 1;

    terms.current_cycle = s.cycle;
    long long x1 = sum_loaded + s.used_time +
                   static_cast<long long>(m - s.station_idx) * (min_mu - max_tau) + mu_f;
    terms.setup_aware = ceil_div(x1, divisor);
    terms.capacity_only = ceil_div(sum_t + s.used_time, divisor);
    terms.setup_aware_increment = terms.setup_aware - s.cycle;
    terms.capacity_increment = terms.capacity_only - s.cycle;
    return terms;
}

long long dual_bound_type2(const State2& s, const DerivedData& d) {
    return dual_bound_type2_terms(s, d).value();
}

bool dominates(const State1& a, const State1& b, long long g_a, long long g_b) {
    return a.unscheduled == b.unscheduled && a.prev_task == b.prev_task &&
           a.first_task == b.first_task && a.station_idx <= b.station_idx &&
           a.remaining >= b.remaining && g_a <= g_b;
}

bool dominates(const State2& a, const State2& b, long long g_a, long long g_b) {
    return a.unscheduled == b.unscheduled && a.prev_task == b.prev_task &&
           a.first_task == b.first_task && a.station_idx == b.station_idx &&
           a.used_time <= b.used_time && a.cycle <= b.cycle && g_a <= g_b;
}

}  // namespace sualb
