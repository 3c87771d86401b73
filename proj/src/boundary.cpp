#include "fsq/boundary.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace fsq {

const char* to_string(BoundaryType type) {
    switch (type) {
        case BoundaryType::A: return "A";
        case BoundaryType::B: return "B";
        case BoundaryType::C: return "C";
        case BoundaryType::D3: return "D3";
        case BoundaryType::D6: return "D6";
        case BoundaryType::Segment: return "Segment";
        case BoundaryType::Unclassified: return "Unclassified";
    }
    return "?";
}

std::vector<Point> boundary_points(const FaceTable& table, const std::vector<FaceVector>& active) {
    std::set<Point> pts;
    for (FaceVector a : active) {
        const auto& f = table[a];
        if (!f.finite()) {
            throw Error(ErrorKind::NotDendrite, "F(" + a.str() + ") is infinite, so ∂K is not finite");
        }
        pts.insert(f.points.begin(), f.points.end());
    }
    return {pts.begin(), pts.end()};
}

namespace {

bool has(const std::vector<FaceVector>& v, FaceVector a) { return std::find(v.begin(), v.end(), a) != v.end(); }

}  // namespace

BoundaryType classify_boundary(const std::vector<FaceVector>& active, std::size_t boundary_size,
                               Violations* violations) {
    int sides = 0;
    int diagonals = 0;
    for (FaceVector a : face_pair_representatives()) {
        if (has(active, a) || has(active, -a)) {
            (a.is_side() ? sides : diagonals) += 1;
        }
    }
    auto flag = [&](const std::string& code, const std::string& msg) {
        if (violations != nullptr) {
            violations->push_back({code, msg});
        }
    };
    auto expect_size = [&](BoundaryType t, std::size_t want) {
        if (boundary_size != want) {
            flag("boundary-size", std::string("type ") + to_string(t) + " needs " + std::to_string(want) +
                                      " boundary points, found " + std::to_string(boundary_size));
        }
        return t;
    };
    const int pairs = sides + diagonals;
    if (pairs == 1) {
        return expect_size(BoundaryType::Segment, 2);
    }
    if (sides == 2 && diagonals == 0) {
        return expect_size(BoundaryType::A, 4);
    }
    if (sides == 0 && diagonals == 2) {
        return expect_size(BoundaryType::B, 4);
    }
    if (sides == 1 && diagonals == 1) {
        return expect_size(BoundaryType::C, 4);
    }
    if (sides == 2 && diagonals == 1) {
        if (boundary_size == 3) {
            return BoundaryType::D3;
        }
        if (boundary_size == 6) {
            return BoundaryType::D6;
        }
        flag("boundary-size", "case D needs 3 or 6 boundary points, found " + std::to_string(boundary_size));
        return BoundaryType::Unclassified;
    }
    flag("boundary-type", "active faces: " + std::to_string(sides) + " side pairs and " + std::to_string(diagonals) +
                              " diagonal pairs match no boundary type");
    return BoundaryType::Unclassified;
}

std::pair<FaceVector, FaceVector> quadruple_axes(BoundaryType type, const std::vector<FaceVector>& active) {
    if (type == BoundaryType::C) {
        FaceVector diag{1, 1};
        FaceVector side{1, 0};
        for (FaceVector a : face_pair_representatives()) {
            if (has(active, a) || has(active, -a)) {
                (a.is_side() ? side : diag) = a;
            }
        }
        return {diag, side};
    }
    return {{1, 0}, {0, 1}};
}

bool quadruple_free(const DigitSet& d, std::pair<FaceVector, FaceVector> axes, int k_max, std::size_t budget) {
    const Cell a = axes.first.cell();
    const Cell b = axes.second.cell();
    for (int k = 1; k <= k_max; ++k) {
        auto cells = refine(d, k, budget);
        std::unordered_set<Cell, CellHash> set(cells.begin(), cells.end());
        for (const Cell& c : cells) {
            if (set.count(c - a) && set.count(c - b) && set.count(c - a - b)) {
                return false;
            }
        }
    }
    return true;
}

Violations boundary_consistency(BoundaryType type, const FaceTable& table, const std::vector<FaceVector>& active,
                                const std::vector<Point>& points) {
    Violations out;
    if (has(active, {1, 1}) && has(active, {1, -1})) {
        for (FaceVector s : {FaceVector{1, 0}, FaceVector{0, 1}}) {
            if (table[s].kind != IntersectionKind::Uncountable) {
                out.push_back({"diagonals-force-uncountable-sides",
                               "both diagonals active but F(" + s.str() + ") is " + to_string(table[s].kind)});
            }
        }
    }
    if (type == BoundaryType::A) {
        std::vector<Point> corners;
        for (const Point& p : points) {
            if (p.is_corner()) {
                corners.push_back(p);
            }
        }
        if (!corners.empty()) {
            bool ok = corners.size() == 2 && (corners[0].x == corners[1].x || corners[0].y == corners[1].y);
            if (ok) {
                const bool vertical = corners[0].x == corners[1].x;
                const Rational line = vertical ? corners[0].x : corners[0].y;
                auto on_side = std::count_if(points.begin(), points.end(),
                                             [&](const Point& p) { return (vertical ? p.x : p.y) == line; });
                ok = on_side == 3;
            }
            if (!ok) {
                out.push_back({"type-A-corners",
                               "type A boundary with corners needs two adjacent corners and three points on their side"});
            }
        }
    }
    return out;
}

Violations check_corner_orders(BoundaryType type, const std::map<Point, int>& corner_orders) {
    Violations out;
    std::vector<Point> corners;
    std::vector<int> orders;
    for (const auto& [p, ord] : corner_orders) {
        corners.push_back(p);
        orders.push_back(ord);
        if (ord > 2) {
            out.push_back({"corner-order", "corner (" + p.str() + ") has order " + std::to_string(ord)});
        }
    }
    auto all_one = [&] { return std::all_of(orders.begin(), orders.end(), [](int o) { return o == 1; }); };
    auto fail = [&](const std::string& msg) { out.push_back({"corner-pattern", std::string(to_string(type)) + ": " + msg}); };
    switch (type) {
        case BoundaryType::B:
            if (corners.size() != 4 || !all_one()) {
                fail("needs four corners of order 1");
            }
            break;
        case BoundaryType::D3:
            if (corners.size() != 3 || !all_one()) {
                fail("needs three corners of order 1");
            }
            break;
        case BoundaryType::A:
            if (corners.size() == 1 || corners.size() > 2) {
                fail("corners come in one adjacent pair or not at all");
            } else if (corners.size() == 2) {
                if (corners[0].x != corners[1].x && corners[0].y != corners[1].y) {
                    fail("corner pair is not adjacent");
                }
                if (orders[0] == 2 && orders[1] == 2) {
                    fail("adjacent corners both of order 2");
                }
            }
            break;
        case BoundaryType::C:
        case BoundaryType::D6:
            if (corners.size() != 2 || corners[0].x == corners[1].x || corners[0].y == corners[1].y) {
                fail("needs exactly two opposite corners");
            }
            break;
        case BoundaryType::Segment:
        case BoundaryType::Unclassified: break;
    }
    return out;
}

}  // namespace fsq
