#include "fsq/analysis.hpp"

#include <algorithm>

namespace fsq {

Analysis analyze(const DigitSet& d, const AnalysisOptions& options) {
    Analysis a(d, face_table(d));
    a.realized = realized_offsets(d);
    for (FaceVector alpha : nonzero_faces()) {
        for (const Cell& c : d.digits()) {
            if (d.contains(c + alpha.cell())) {
                a.first_level_offsets[alpha.index()] = true;
            }
        }
    }
    a.dendrite = dendrite_check(d, a.faces, a.realized);
    a.max_intersection = max_piece_intersection(a.faces, a.realized);
    for (FaceVector alpha : nonzero_faces()) {
        if (a.faces[alpha].kind == IntersectionKind::Finite) {
            a.largest_finite_face = std::max(a.largest_finite_face, a.faces[alpha].points.size());
        }
    }
    if (a.largest_finite_face > static_cast<std::size_t>(relaxed_finite_bound(d.n()))) {
        a.violations.push_back({"finite-intersection-bound", "a finite F_alpha has " +
                                                                 std::to_string(a.largest_finite_face) +
                                                                 " points, above the bound " +
                                                                 std::to_string(relaxed_finite_bound(d.n()))});
    }
    if (!a.dendrite.is_dendrite()) {
        return a;
    }

    a.active = active_faces(a.faces, a.realized);
    a.boundary = boundary_points(a.faces, a.active);
    a.boundary_type = classify_boundary(a.active, a.boundary.size(), &a.violations);
    auto consistency = boundary_consistency(a.boundary_type, a.faces, a.active, a.boundary);
    a.violations.insert(a.violations.end(), consistency.begin(), consistency.end());

    if (options.orders) {
        try {
            a.corner_orders = corner_orders(d, a.faces, a.boundary);
            auto corner = check_corner_orders(a.boundary_type, a.corner_orders);
            a.violations.insert(a.violations.end(), corner.begin(), corner.end());
            a.orders = order_census(d, a.faces, a.boundary, options.order_level);
            if (a.orders->max_order > 4) {
                a.violations.push_back({"order-bound", "a point of order " + std::to_string(a.orders->max_order)});
            }
            if (a.orders->coarsening_failures > 0) {
                a.notes.push_back("order states refined between levels " +
                                  std::to_string(a.orders->coarsening_failures) + " times");
            }
        } catch (const Error& e) {
            a.notes.push_back(std::string("orders inconclusive: ") + e.what());
        }
    }

    try {
        a.quadruple_free =
            quadruple_free(d, quadruple_axes(a.boundary_type, a.active), options.quadruple_level, options.budget);
        const bool forbidden = a.boundary_type == BoundaryType::A || a.boundary_type == BoundaryType::C ||
                               a.boundary_type == BoundaryType::D3 || a.boundary_type == BoundaryType::D6;
        if (!*a.quadruple_free && forbidden) {
            a.violations.push_back({"quadruple", std::string("type ") + to_string(a.boundary_type) +
                                                     " dendrite contains a forbidden quadruple"});
        }
    } catch (const Error& e) {
        a.notes.push_back(std::string("quadruple check skipped: ") + e.what());
    }

    if (options.main_tree) {
        a.main_tree = classify_main_tree(d, a.faces, a.boundary, options.tree_k_start, options.tree_k_max, options.budget);
        auto tree = check_main_tree(*a.main_tree, a.boundary_type);
        a.violations.insert(a.violations.end(), tree.begin(), tree.end());
        if (!a.main_tree->stabilized) {
            a.notes.push_back("main tree inconclusive: " + a.main_tree->note);
        }
    }
    return a;
}

namespace {

nlohmann::json face_json(const FaceIntersection& f, bool realized) {
    nlohmann::json j;
    j["kind"] = to_string(f.kind);
    j["realized"] = realized;
    auto pts = nlohmann::json::array();
    for (const Point& p : f.points) {
        pts.push_back(p.str());
    }
    j["points"] = pts;
    if (f.kind == IntersectionKind::CountablyInfinite) {
        j["fixed_point"] = f.fixed_point.str();
        j["map_digit"] = f.generator_digit.str();
        auto seeds = nlohmann::json::array();
        for (const Point& p : f.seeds) {
            seeds.push_back(p.str());
        }
        j["seeds"] = seeds;
    }
    if (f.kind == IntersectionKind::Uncountable) {
        auto digits = nlohmann::json::array();
        for (const Cell& c : f.generator_digits) {
            digits.push_back(c.str());
        }
        j["generator_digits"] = digits;
    }
    return j;
}

}  // namespace

nlohmann::json to_json(const Analysis& a) {
    nlohmann::json j;
    j["digit_set"] = a.digits.str();
    j["n"] = a.digits.n();
    j["m"] = a.digits.size();
    nlohmann::json faces = nlohmann::json::object();
    for (FaceVector alpha : nonzero_faces()) {
        faces[alpha.str()] = face_json(a.faces[alpha], a.realized[alpha.index()]);
    }
    j["faces"] = faces;
    j["connected"] = a.dendrite.connected;
    j["one_point"] = a.dendrite.one_point;
    j["tree"] = a.dendrite.tree;
    j["dendrite"] = a.dendrite.is_dendrite();
    j["failed_gate"] = to_string(a.dendrite.failed);
    if (!a.dendrite.cycle_witness.empty()) {
        j["cycle_witness"] = a.dendrite.cycle_witness;
    }
    if (a.max_intersection) {
        j["max_piece_intersection"] = *a.max_intersection;
    } else {
        j["max_piece_intersection"] = "infinite";
    }
    if (a.dendrite.is_dendrite()) {
        nlohmann::json b;
        b["type"] = to_string(a.boundary_type);
        auto pts = nlohmann::json::array();
        for (const Point& p : a.boundary) {
            pts.push_back({{"point", p.str()}, {"corner", p.is_corner()}});
        }
        b["points"] = pts;
        auto active = nlohmann::json::array();
        for (FaceVector f : a.active) {
            active.push_back(f.str());
        }
        b["active_faces"] = active;
        auto offsets = nlohmann::json::array();
        for (FaceVector f : nonzero_faces()) {
            if (a.first_level_offsets[f.index()]) {
                offsets.push_back(f.str());
            }
        }
        b["first_level_offsets"] = offsets;
        nlohmann::json corners = nlohmann::json::object();
        for (const auto& [p, o] : a.corner_orders) {
            corners[p.str()] = o;
        }
        b["corner_orders"] = corners;
        j["boundary"] = b;
        if (a.quadruple_free) {
            j["quadruple_free"] = *a.quadruple_free;
        }
        if (a.main_tree) {
            const auto& t = *a.main_tree;
            j["main_tree"] = {{"type", t.shape.type_id},
                              {"shape", t.shape.canonical},
                              {"stabilized", t.stabilized},
                              {"stabilized_at", t.stabilized_at},
                              {"per_level", t.per_level},
                              {"leaves", t.shape.leaf_count},
                              {"interior_terminals", t.shape.interior_terminals},
                              {"ramification_degrees", t.shape.ramification_degrees}};
        }
        if (a.orders) {
            nlohmann::json hist = nlohmann::json::object();
            for (const auto& [o, c] : a.orders->histogram) {
                hist[std::to_string(o)] = c;
            }
            auto ram = nlohmann::json::array();
            for (const auto& [p, o] : a.orders->ramification_points) {
                ram.push_back({{"point", p.str()}, {"order", o}});
            }
            j["orders"] = {{"max_order", a.orders->max_order},
                           {"points_examined", a.orders->candidates},
                           {"histogram", hist},
                           {"ramification_points", ram}};
        }
    }
    auto v = nlohmann::json::array();
    for (const auto& x : a.violations) {
        v.push_back({{"code", x.code}, {"message", x.message}});
    }
    j["violations"] = v;
    j["notes"] = a.notes;
    return j;
}

}  // namespace fsq
