#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "fsq/graphs.hpp"
#include "fsq/intersections.hpp"
#include "fsq/lattice.hpp"

namespace fsq {

struct OrderResult {
    Point point;
    int order = 0;
    std::string method;
    int stabilized_at_level = 0;
};

// Orders of points of a dendrite K whose coordinates live on one lattice.
//
// For a point p the state records how K \ {p} splits relative to ∂K: the
// number of components missing ∂K, and for each ∂K point the component it
// lies in (or -1 when the point is p itself or not yet reached). The state
// of p at level k+1 is assembled from the level-k states of S_w^{-1}(p) for
// the first-level pieces w containing p. The level-0 state has no
// components at all. The level-k state describes the level-k piece graph
// with the pieces through p removed; iterating over the whole orbit of p
// until nothing changes gives the limit.
class OrderEngine {
public:
    struct State {
        int detached = 0;         // components of K \ {p} that miss ∂K
        std::vector<int> labels;  // component per ∂K point, -1 if absent
        int order() const;
        friend bool operator==(const State&, const State&) = default;
    };

    OrderEngine(const DigitSet& d, const FaceTable& table, const std::vector<Point>& boundary, std::int64_t scale,
                int max_levels = 200);

    std::int64_t scale() const { return scale_; }
    int n() const { return n_; }
    Membership& membership() { return membership_; }
    const std::vector<LatticePoint>& boundary() const { return boundary_; }
    // Lattice points of the first-level black vertices.
    std::vector<LatticePoint> first_level_blacks() const;

    bool contains(LatticePoint p) { return membership_.contains(p); }
    // Solves every query in one pass over the union of their orbits.
    void solve(const std::vector<LatticePoint>& queries);
    int order(LatticePoint p);
    // Level at which p's state reached its final value.
    int settled_level(LatticePoint p);
    const State& state(LatticePoint p);

    // States of p at levels 0..k, from the same recursion without iterating to a fixed point.
    std::vector<State> history(LatticePoint p, int k);

    // Label partitions refined instead of coarsening somewhere during solving.
    std::size_t coarsening_failures() const { return coarsening_failures_; }

private:
    struct Node {
        LatticePoint p;
        std::vector<std::pair<int, int>> pieces;  // (digit index, orbit node)
        int boundary_index = -1;
        int black_index = -1;
    };
    struct Incidence {
        int piece;
        int preimage;  // ∂K index of S_piece^{-1}(point)
    };

    int node_of(LatticePoint p);
    std::vector<int> closure(const std::vector<LatticePoint>& queries);
    // pos maps orbit node ids to indices of current.
    State step(const Node& node, const std::vector<State>& current, const std::vector<int>& pos) const;
    bool coarsens(const State& before, const State& after) const;

    int n_;
    std::int64_t scale_;
    int max_levels_;
    std::vector<Cell> digits_;
    Membership membership_;
    std::vector<LatticePoint> boundary_;
    std::unordered_map<LatticePoint, int, LatticePointHash> boundary_index_;
    std::vector<std::vector<Incidence>> boundary_pieces_;
    std::vector<int> boundary_black_;
    std::vector<LatticePoint> blacks_;
    std::unordered_map<LatticePoint, int, LatticePointHash> black_index_;
    std::vector<std::vector<Incidence>> black_pieces_;

    std::vector<Node> nodes_;
    std::unordered_map<LatticePoint, int, LatticePointHash> node_index_;
    std::unordered_map<int, State> solved_;
    std::unordered_map<int, int> settled_;
    std::size_t coarsening_failures_ = 0;
};

// Scale that holds p, ∂K and the first-level blacks: lcm(den p, n * n(n-1)).
std::int64_t order_scale(const DigitSet& d, const Point& p);

// Components of the level-k piece graph after deleting the pieces through p
// and p itself if it is a black vertex; isolated black vertices count.
int branch_count(const DigitSet& d, const FaceTable& table, const Point& p, int k);

// Ord(p) = sum over first-level pieces w containing p of Ord(S_w^{-1} p),
// following single-piece chains and falling back to the engine on cycles.
int order_by_pieces(OrderEngine& engine, LatticePoint p);

// Exact order of p in K; throws NotInAttractor when p is not in K.
OrderResult point_order(const DigitSet& d, const FaceTable& table, const std::vector<Point>& boundary, const Point& p);

struct OrderCensus {
    int max_order = 0;
    std::map<int, int> histogram;
    std::vector<std::pair<Point, int>> ramification_points;  // order >= 3
    std::size_t candidates = 0;
    std::size_t coarsening_failures = 0;
};

// Orders of S_c(x) for cells c of level < k and x among ∂K, the corners in
// K, the fixed points d/(n-1) and the first-level blacks. This covers every
// black vertex up to level k.
OrderCensus order_census(const DigitSet& d, const FaceTable& table, const std::vector<Point>& boundary, int k);

// Orders of the corners of [0,1]^2 that lie in ∂K.
std::map<Point, int> corner_orders(const DigitSet& d, const FaceTable& table, const std::vector<Point>& boundary);

}  // namespace fsq
