#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fsq/digit_set.hpp"
#include "fsq/segments.hpp"

namespace fsq {

// F_alpha = K ∩ (K + alpha) for a nonzero face vector alpha.
struct FaceIntersection {
    FaceVector alpha;
    IntersectionKind kind = IntersectionKind::Empty;
    std::vector<Point> points;          // Finite: sorted
    Point fixed_point;                  // CountablyInfinite: d0/(n-1)
    Cell generator_digit;               // CountablyInfinite: d0
    std::vector<Point> seeds;           // CountablyInfinite: sorted
    std::vector<Cell> generator_digits; // Uncountable: G_alpha

    bool empty() const { return kind == IntersectionKind::Empty; }
    bool finite() const { return kind == IntersectionKind::Empty || kind == IntersectionKind::Finite; }
    // Fixed point first, then S_{d0}^k(seed) by increasing k.
    std::vector<Point> expand(int n, std::size_t count) const;
    std::string str() const;
};

// The corner point ((a+1)/2, (b+1)/2) that F_alpha can only be, for diagonal alpha.
Point diagonal_corner(FaceVector alpha);

FaceIntersection face_intersection(const DigitSet& d, FaceVector alpha);

// F_alpha for every face vector, indexed by FaceVector::index(); the zero slot is unused.
struct FaceTable {
    std::array<FaceIntersection, 9> faces;
    const FaceIntersection& operator[](FaceVector alpha) const { return faces[alpha.index()]; }
};

FaceTable face_table(const DigitSet& d);

// Offsets alpha with D^k ∩ (D^k + alpha) nonempty for some k ≥ 1: the only
// piece adjacencies that ever occur. Indexed by FaceVector::index().
std::array<bool, 9> realized_offsets(const DigitSet& d);

// Active faces: F_alpha nonempty and alpha realized.
std::vector<FaceVector> active_faces(const FaceTable& table, const std::array<bool, 9>& realized);

// Every realized F_alpha has at most one point.
bool one_point(const FaceTable& table, const std::array<bool, 9>& realized);
bool finite_intersection(const FaceTable& table, const std::array<bool, 9>& realized);
// Largest realized #F_alpha, nullopt when one is infinite.
std::optional<std::size_t> max_piece_intersection(const FaceTable& table, const std::array<bool, 9>& realized);

// K_d ∩ K_{d'} = (d + F_{d'-d})/n for adjacent digits; requires finite F.
std::vector<Point> piece_intersection(const DigitSet& d, const FaceTable& table, Cell a, Cell b);

}  // namespace fsq
