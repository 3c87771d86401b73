#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fsq/errors.hpp"
#include "fsq/intersections.hpp"

namespace fsq {

enum class BoundaryType { A, B, C, D3, D6, Segment, Unclassified };

const char* to_string(BoundaryType type);

// Union of F_alpha over the active faces; requires them all finite.
std::vector<Point> boundary_points(const FaceTable& table, const std::vector<FaceVector>& active);

// Type from the active face pairs and #∂K. Combinations outside the
// catalog come back as Unclassified with a diagnostic.
BoundaryType classify_boundary(const std::vector<FaceVector>& active, std::size_t boundary_size,
                               Violations* violations = nullptr);

// The pair (alpha, beta) spanning the forbidden quadruple
// {d, d-alpha, d-beta, d-alpha-beta}: the active diagonal and side in case C,
// the unit axes otherwise.
std::pair<FaceVector, FaceVector> quadruple_axes(BoundaryType type, const std::vector<FaceVector>& active);

// No D^k, k <= k_max, contains the quadruple spanned by (alpha, beta).
bool quadruple_free(const DigitSet& d, std::pair<FaceVector, FaceVector> axes, int k_max,
                    std::size_t budget = cell_budget());

// Structural facts that must hold for every
// dendrite: both diagonals active forces uncountable sides; in case A a
// corner in ∂K comes with a second corner and three points on that side.
Violations boundary_consistency(BoundaryType type, const FaceTable& table, const std::vector<FaceVector>& active,
                                const std::vector<Point>& points);

// Per-type rules for corner points of ∂K and their orders.
Violations check_corner_orders(BoundaryType type, const std::map<Point, int>& corner_orders);

}  // namespace fsq
