#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsq/boundary.hpp"
#include "fsq/graphs.hpp"
#include "fsq/maintree.hpp"
#include "fsq/orders.hpp"

namespace fsq {

struct AnalysisOptions {
    int order_level = 2;   // order census over black vertices up to this level
    int tree_k_start = 1;
    int tree_k_max = 6;
    int quadruple_level = 3;
    bool orders = true;
    bool main_tree = true;
    std::size_t budget = cell_budget();
};

struct Analysis {
    Analysis(DigitSet d, FaceTable f) : digits(std::move(d)), faces(std::move(f)) {}

    DigitSet digits;
    FaceTable faces;
    std::array<bool, 9> realized{};
    std::array<bool, 9> first_level_offsets{};  // D ∩ (D + alpha) nonempty
    DendriteReport dendrite;
    std::optional<std::size_t> max_intersection;  // over realized faces; nullopt = infinite
    std::size_t largest_finite_face = 0;           // over every finite F_alpha

    // dendrites only
    std::vector<FaceVector> active;
    std::vector<Point> boundary;
    BoundaryType boundary_type = BoundaryType::Unclassified;
    std::map<Point, int> corner_orders;
    std::optional<bool> quadruple_free;
    std::optional<MainTreeResult> main_tree;
    std::optional<OrderCensus> orders;

    Violations violations;
    std::vector<std::string> notes;
};

Analysis analyze(const DigitSet& d, const AnalysisOptions& options = {});

nlohmann::json to_json(const Analysis& a);

}  // namespace fsq
