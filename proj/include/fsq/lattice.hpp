#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fsq/digit_set.hpp"

namespace fsq {

// Point (x/scale, y/scale) with integer numerators over a shared scale.
struct LatticePoint {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

struct LatticePointHash {
    std::size_t operator()(const LatticePoint& p) const noexcept {
        return CellHash{}(Cell{p.x, p.y});
    }
};

// Numerators of p over scale, or nullopt when a denominator does not divide scale.
std::optional<LatticePoint> to_lattice(const Point& p, std::int64_t scale);
Point from_lattice(LatticePoint p, std::int64_t scale);

// n(n-1): every intersection point F_alpha of a fractal square has
// coordinates with denominators dividing this.
std::int64_t base_scale(int n);
// lcm(a, b) with an overflow check against the n-fold headroom needed by
// the residual automaton.
std::int64_t lattice_lcm(std::int64_t a, std::int64_t b, int n);

// Membership test p ∈ K for lattice points of a fixed scale, memoized.
// A point is in K iff the residual automaton p -> n p - d·scale admits an
// infinite path inside [0, scale]^2.
class Membership {
public:
    Membership(const DigitSet& d, std::int64_t scale);

    std::int64_t scale() const { return scale_; }
    bool contains(LatticePoint p);
    // Digits w with p ∈ K_w, i.e. n p - w·scale ∈ K.
    std::vector<Cell> containing_pieces(LatticePoint p);
    LatticePoint inverse(Cell w, LatticePoint p) const {
        return {n_ * p.x - w.x * scale_, n_ * p.y - w.y * scale_};
    }
    bool in_square(LatticePoint p) const { return p.x >= 0 && p.y >= 0 && p.x <= scale_ && p.y <= scale_; }

private:
    std::int64_t n_;
    std::int64_t scale_;
    std::vector<Cell> digits_;
    std::unordered_map<LatticePoint, bool, LatticePointHash> memo_;
};

}  // namespace fsq
