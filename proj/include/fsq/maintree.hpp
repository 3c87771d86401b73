#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fsq/boundary.hpp"
#include "fsq/graphs.hpp"

namespace fsq {

// Subtree of a level-k bipartite tree. Vertex ids follow the graph
// (whites, then blacks); terminals attached inside a white piece get extra
// leaf ids after the blacks.
struct CombinatorialTree {
    int level = 0;
    std::size_t whites = 0;
    std::size_t blacks = 0;
    std::vector<std::vector<int>> adjacency;  // over all ids; empty when not in the tree
    std::vector<char> present;
    std::vector<char> terminal;
    std::vector<Point> terminal_points;  // per extra leaf id, and for terminal blacks

    std::size_t vertex_count() const;
    std::size_t degree(int v) const { return adjacency[v].size(); }
};

// Vertex of the level-k graph for each ∂K point: its black vertex, or a new
// leaf id hung off the unique white piece containing it.
struct TerminalAttachment {
    Point point;
    int vertex = -1;       // black id (offset by whites) or white id
    bool on_black = false;
    int hull_degree = -1;  // branches of the main tree at the point, -1 if unknown
};

std::vector<TerminalAttachment> locate_terminals(const DigitSet& d, const BipartiteGraph& g,
                                                 const std::vector<Point>& boundary);

// For each ∂K point, the number of components of K minus the point that
// meet the rest of ∂K: its degree in the main tree.
std::vector<int> hull_degrees(const DigitSet& d, const FaceTable& table, const std::vector<Point>& boundary);

// Minimal subtree of the (tree) graph spanning the terminals. A terminal
// inside a white piece hangs off it as a leaf, unless its hull degree equals
// the piece's degree in the subtree: then the piece stands for the point.
CombinatorialTree steiner_subtree(const BipartiteGraph& g, const std::vector<TerminalAttachment>& terminals);

struct TreeShape {
    std::vector<int> ramification_degrees;  // sorted descending
    std::vector<std::pair<int, int>> ramification_edges;
    int leaf_count = 0;
    int interior_terminals = 0;
    std::string canonical;  // "Arc" or nested "R3(L,L,R3(L,L))"
    int type_id = 0;        // 1..7, 0 when unmatched

    friend bool operator==(const TreeShape& a, const TreeShape& b) { return a.canonical == b.canonical; }
};

TreeShape reduce_shape(const CombinatorialTree& t);

struct MainTreeResult {
    TreeShape shape;
    bool stabilized = false;
    int stabilized_at = 0;  // first level whose shape the next level repeats
    int levels_examined = 0;
    std::vector<std::string> per_level;
    std::vector<Cell> cells;  // white cells of the last examined level on the tree
    std::string note;
};

MainTreeResult classify_main_tree(const DigitSet& d, const FaceTable& table, const std::vector<Point>& boundary,
                                  int k_start = 1, int k_max = 6, std::size_t budget = cell_budget());

// Boundary types allowed with each main-tree type.
bool tree_boundary_permitted(int type_id, BoundaryType type);

Violations check_main_tree(const MainTreeResult& r, BoundaryType type);

}  // namespace fsq
