#ifndef SUALB_TYPES_HPP
#define SUALB_TYPES_HPP

#include <cstdint>
#include <cstddef>
#include <functional>

namespace sualb {

// Tasks are indexed 0..n-1 internally; files and user-facing output use 1..n.
inline constexpr int kMaxTasks = 128;

// Fixed-width bitset over task indices. Two words cover every instance size
// we care about; keeping it POD makes states cheap to copy and hash.
struct TaskSet {
    std::uint64_t w[2] = {0, 0};

    static TaskSet full(int n) {
        TaskSet s;
        for (int i = 0; i < n; ++i) s.add(i);
        return s;
    }

    void add(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void remove(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool contains(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }

    bool empty() const { return w[0] == 0 && w[1] == 0; }
    int count() const {
        return __builtin_popcountll(w[0]) + __builtin_popcountll(w[1]);
    }

    bool intersects(const TaskSet& o) const {
        return (w[0] & o.w[0]) != 0 || (w[1] & o.w[1]) != 0;
    }
    bool is_subset_of(const TaskSet& o) const {
        return (w[0] & ~o.w[0]) == 0 && (w[1] & ~o.w[1]) == 0;
    }

    TaskSet operator&(const TaskSet& o) const {
        TaskSet r;
        r.w[0] = w[0] & o.w[0];
        r.w[1] = w[1] & o.w[1];
        return r;
    }
    TaskSet operator|(const TaskSet& o) const {
        TaskSet r;
        r.w[0] = w[0] | o.w[0];
        r.w[1] = w[1] | o.w[1];
        return r;
    }
    // set difference
    TaskSet operator-(const TaskSet& o) const {
        TaskSet r;
        r.w[0] = w[0] & ~o.w[0];
        r.w[1] = w[1] & ~o.w[1];
        return r;
    }

    bool operator==(const TaskSet& o) const {
        return w[0] == o.w[0] && w[1] == o.w[1];
    }
    bool operator!=(const TaskSet& o) const { return !(*this == o); }

    // First member >= from, or -1. Allows  for (i = s.next(0); i >= 0; i = s.next(i+1)).
    int next(int from) const {
        if (from >= kMaxTasks) return -1;
        if (from < 0) from = 0;
        int word = from >> 6;
        std::uint64_t cur = w[word] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (cur != 0) return word * 64 + __builtin_ctzll(cur);
            if (++word >= 2) return -1;
            cur = w[word];
        }
    }
};

inline std::uint64_t hash_mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct TaskSetHash {
    std::size_t operator()(const TaskSet& s) const {
        return static_cast<std::size_t>(hash_mix(s.w[0]) ^ hash_mix(s.w[1] + 0x517cc1b727220a95ULL));
    }
};

// ceil(a/b) for b > 0 and any sign of a
inline long long ceil_div(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && a > 0) ++q;
    return q;
}

}  // namespace sualb

#endif
