#pragma once

#include <string>
#include <vector>

#include "fsq/rational.hpp"

namespace fsq {

// Digit set of a fractal segment K = (K + D)/n with D ⊂ {0..n-1}.
class SegmentDigitSet {
public:
    SegmentDigitSet(int n, std::vector<int> digits);

    int n() const { return n_; }
    const std::vector<int>& digits() const { return digits_; }
    bool contains(int d) const;
    // A single digit describes a point, not a segment.
    bool degenerate() const { return digits_.size() == 1; }
    SegmentDigitSet reflected() const;

private:
    int n_;
    std::vector<int> digits_;
};

enum class IntersectionKind { Empty, Finite, CountablyInfinite, Uncountable };

const char* to_string(IntersectionKind kind);

// F_0 = K1 ∩ K2, classified by cardinality.
struct SegmentIntersection {
    IntersectionKind kind = IntersectionKind::Empty;
    std::vector<Rational> points;            // Finite: sorted, distinct
    Rational fixed_point;                     // CountablyInfinite: d0/(n-1)
    int generator_digit = 0;                  // CountablyInfinite: d0
    std::vector<Rational> seeds;              // CountablyInfinite
    std::vector<int> generator_digits;        // Uncountable: G_0

    // First `count` points of a countable set: the fixed point, then
    // S_{d0}^k(seed) in order of k. Finite sets return their points.
    std::vector<Rational> expand(int n, std::size_t count) const;
    std::string str() const;
};

SegmentIntersection segment_intersect(const SegmentDigitSet& d1, const SegmentDigitSet& d2);

// k/n for k ∈ D1 with k-1 ∈ D2. Requires 0 ∈ D1 and n-1 ∈ D2.
std::vector<Rational> junction_points(const SegmentDigitSet& d1, const SegmentDigitSet& d2);

// floor((n-2)/2)
int finite_bound(int n);
// max(1, floor((n-2)/2)): the bound enforced for finite intersections,
// since a single fixed point d0/(n-1) is finite for every n.
int relaxed_finite_bound(int n);

}  // namespace fsq
