#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>

#include "fsq/digit_set.hpp"

namespace fsq::testing {

inline DigitSet ds(const std::string& text) { return parse_digit_set(text); }

inline DigitSet vicsek() { return ds("3: 1,0 0,1 1,1 2,1 1,2"); }
inline DigitSet diagonal_cross() { return ds("3: 0,0 2,0 1,1 0,2 2,2"); }

inline Rational q(long long p, long long r) { return {BigInt(p), BigInt(r)}; }
inline Point pt(long long a, long long b, long long c, long long d) { return {q(a, b), q(c, d)}; }

// Random digit set with 2 <= m <= max_m digits.
inline DigitSet random_digit_set(std::mt19937_64& rng, int n, int max_m) {
    std::uniform_int_distribution<int> size(2, std::min(max_m, n * n - 1));
    const int m = size(rng);
    std::vector<int> cells(n * n);
    for (int i = 0; i < n * n; ++i) {
        cells[i] = i;
    }
    std::shuffle(cells.begin(), cells.end(), rng);
    std::vector<Cell> digits;
    for (int i = 0; i < m; ++i) {
        digits.push_back({cells[i] % n, cells[i] / n});
    }
    return {n, digits};
}

}  // namespace fsq::testing

namespace fsq::testing {

// Connected components of a union of closed integer intervals [lo, hi].
inline std::vector<std::pair<std::int64_t, std::int64_t>> clumps(std::vector<std::pair<std::int64_t, std::int64_t>> v) {
    std::sort(v.begin(), v.end());
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (auto [lo, hi] : v) {
        if (!out.empty() && lo <= out.back().second) {
            out.back().second = std::max(out.back().second, hi);
        } else {
            out.emplace_back(lo, hi);
        }
    }
    return out;
}

// Level-k digits of a one-dimensional digit set, in base n.
inline std::vector<std::int64_t> refine_1d(int n, const std::vector<std::int64_t>& digits, int k) {
    std::vector<std::int64_t> cur{0};
    for (int i = 0; i < k; ++i) {
        std::vector<std::int64_t> next;
        for (auto c : cur) {
            for (auto d : digits) {
                next.push_back(c * n + d);
            }
        }
        cur = std::move(next);
    }
    std::sort(cur.begin(), cur.end());
    return cur;
}

// Overlaps of level-k intervals [c, c+1] of two families, as clumps over scale n^k.
inline std::vector<std::pair<std::int64_t, std::int64_t>> overlap_clumps(const std::vector<std::int64_t>& a,
                                                                          const std::vector<std::int64_t>& b) {
    std::vector<std::pair<std::int64_t, std::int64_t>> v;
    for (auto x : a) {
        auto it = std::lower_bound(b.begin(), b.end(), x - 1);
        for (; it != b.end() && *it <= x + 1; ++it) {
            v.emplace_back(std::max(x, *it), std::min(x, *it) + 1);
        }
    }
    return clumps(std::move(v));
}

// Level-k overlap clumps that still contain an overlap clump `extra` levels
// deeper. Raw clump counts never settle: near a real intersection point the
// cell intervals keep producing fresh one-cell touchings at every level.
inline std::vector<std::pair<std::int64_t, std::int64_t>> surviving_clumps(int n, const std::vector<std::int64_t>& a,
                                                                            const std::vector<std::int64_t>& b, int k,
                                                                            int extra) {
    auto top = overlap_clumps(refine_1d(n, a, k), refine_1d(n, b, k));
    auto deep = overlap_clumps(refine_1d(n, a, k + extra), refine_1d(n, b, k + extra));
    std::int64_t s = 1;
    for (int i = 0; i < extra; ++i) {
        s *= n;
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (auto c : top) {
        if (std::any_of(deep.begin(), deep.end(),
                        [&](auto d) { return c.first * s <= d.first && d.second <= c.second * s; })) {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace fsq::testing
