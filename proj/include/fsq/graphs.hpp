#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "fsq/intersections.hpp"
#include "fsq/lattice.hpp"

namespace fsq {

// Ordinary intersection graph on D: d ~ d' iff K_d ∩ K_d' is nonempty.
bool ordinary_graph_connected(const DigitSet& d, const FaceTable& table);

// Bipartite intersection graph of the level-k pieces: white vertices are
// the cells of D^k, black vertices the points where two or more pieces
// meet, kept as lattice points over scale n^k * n(n-1).
struct BipartiteGraph {
    int level = 0;
    std::int64_t scale = 1;
    std::vector<Cell> whites;
    std::vector<LatticePoint> blacks;
    std::vector<std::vector<int>> black_cells;  // sorted white indices per black
    std::vector<std::vector<int>> cell_blacks;  // sorted black indices per white
    std::unordered_map<Cell, int, CellHash> white_index;
    std::unordered_map<LatticePoint, int, LatticePointHash> black_index;

    std::size_t edge_count() const;
    bool connected() const;
    bool is_tree() const { return connected() && edge_count() + 1 == whites.size() + blacks.size(); }
    // Node ids along one cycle (whites first, blacks offset by whites.size()); empty if acyclic.
    std::vector<int> find_cycle() const;
    std::string node_label(int id) const;
};

// Throws Unbounded when two level-k pieces meet in an infinite set.
BipartiteGraph level_graph(const DigitSet& d, const FaceTable& table, int k, std::size_t budget = cell_budget());

// F_alpha points as numerators over n(n-1); infinite F_alpha are left empty.
std::array<std::vector<LatticePoint>, 9> face_lattice_points(const DigitSet& d, const FaceTable& table);

enum class DendriteGate { None, Connected, OnePoint, Tree };

const char* to_string(DendriteGate gate);

struct DendriteReport {
    bool connected = false;
    bool one_point = false;
    bool tree = false;
    DendriteGate failed = DendriteGate::None;
    // Alternating cells and points around a cycle of the level-1 graph.
    std::vector<std::string> cycle_witness;

    bool is_dendrite() const { return failed == DendriteGate::None; }
};

DendriteReport dendrite_check(const DigitSet& d, const FaceTable& table, const std::array<bool, 9>& realized);

// Graphviz rendering of a bipartite graph; blacks are labelled with exact coordinates.
std::string to_dot(const BipartiteGraph& g);

}  // namespace fsq
