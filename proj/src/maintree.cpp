#include "fsq/maintree.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "fsq/orders.hpp"

namespace fsq {

std::size_t CombinatorialTree::vertex_count() const {
    return static_cast<std::size_t>(std::count(present.begin(), present.end(), 1));
}

std::vector<TerminalAttachment> locate_terminals(const DigitSet& d, const BipartiteGraph& g,
                                                 const std::vector<Point>& boundary) {
    const std::int64_t base = base_scale(d.n());
    Membership member(d, base);
    std::vector<TerminalAttachment> out;
    for (const Point& p : boundary) {
        auto lp = to_lattice(p, g.scale);
        if (!lp) {
            throw Error(ErrorKind::InvalidArgument, "boundary point (" + p.str() + ") off the level lattice");
        }
        TerminalAttachment t;
        t.point = p;
        if (auto it = g.black_index.find(*lp); it != g.black_index.end()) {
            t.on_black = true;
            t.vertex = static_cast<int>(g.whites.size()) + it->second;
            out.push_back(t);
            continue;
        }
        // the containing cell is the floor cell or, on grid lines, its lower/left neighbour
        const std::int64_t cx = lp->x / base;
        const std::int64_t cy = lp->y / base;
        std::vector<int> holders;
        for (std::int64_t dx : {0, -1}) {
            for (std::int64_t dy : {0, -1}) {
                Cell c{cx + dx, cy + dy};
                auto it = g.white_index.find(c);
                if (it == g.white_index.end()) {
                    continue;
                }
                if (member.contains({lp->x - c.x * base, lp->y - c.y * base})) {
                    holders.push_back(it->second);
                }
            }
        }
        std::sort(holders.begin(), holders.end());
        holders.erase(std::unique(holders.begin(), holders.end()), holders.end());
        if (holders.size() != 1) {
            throw Error(ErrorKind::InvalidArgument, "boundary point (" + p.str() + ") lies in " +
                                                        std::to_string(holders.size()) + " pieces but is no black vertex");
        }
        t.vertex = holders.front();
        out.push_back(t);
    }
    return out;
}

std::vector<int> hull_degrees(const DigitSet& d, const FaceTable& table, const std::vector<Point>& boundary) {
    OrderEngine engine(d, table, boundary, d.n() * base_scale(d.n()));
    engine.solve(engine.boundary());
    std::vector<int> out;
    for (const LatticePoint& p : engine.boundary()) {
        std::set<int> labels;
        for (int l : engine.state(p).labels) {
            if (l >= 0) {
                labels.insert(l);
            }
        }
        out.push_back(static_cast<int>(labels.size()));
    }
    return out;
}

CombinatorialTree steiner_subtree(const BipartiteGraph& g, const std::vector<TerminalAttachment>& terminals) {
    CombinatorialTree t;
    t.level = g.level;
    t.whites = g.whites.size();
    t.blacks = g.blacks.size();
    const int w = static_cast<int>(t.whites);
    std::size_t extra = 0;
    for (const auto& a : terminals) {
        extra += a.on_black ? 0 : 1;
    }
    const std::size_t total = t.whites + t.blacks + extra;
    t.adjacency.assign(total, {});
    t.present.assign(total, 1);
    t.terminal.assign(total, 0);
    t.terminal_points.assign(total, Point{});
    for (std::size_t b = 0; b < g.blacks.size(); ++b) {
        for (int c : g.black_cells[b]) {
            t.adjacency[w + b].push_back(c);
            t.adjacency[c].push_back(w + static_cast<int>(b));
        }
    }
    int next = static_cast<int>(t.whites + t.blacks);
    for (const auto& a : terminals) {
        int id = a.vertex;
        if (!a.on_black) {
            id = next++;
            t.adjacency[id].push_back(a.vertex);
            t.adjacency[a.vertex].push_back(id);
        }
        t.terminal[id] = 1;
        t.terminal_points[id] = a.point;
    }
    // prune non-terminal leaves until none remain
    std::vector<std::size_t> degree(total);
    std::deque<int> queue;
    for (std::size_t v = 0; v < total; ++v) {
        degree[v] = t.adjacency[v].size();
        if (degree[v] <= 1 && !t.terminal[v]) {
            queue.push_back(static_cast<int>(v));
        }
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (!t.present[v]) {
            continue;
        }
        t.present[v] = 0;
        for (int u : t.adjacency[v]) {
            if (t.present[u] && --degree[u] <= 1 && !t.terminal[u]) {
                queue.push_back(u);
            }
        }
    }
    for (std::size_t v = 0; v < total; ++v) {
        if (!t.present[v]) {
            t.adjacency[v].clear();
            continue;
        }
        auto& adj = t.adjacency[v];
        adj.erase(std::remove_if(adj.begin(), adj.end(), [&](int u) { return !t.present[u]; }), adj.end());
    }
    // fold a lone pendant terminal into its piece when the piece's other branches all meet at the point
    std::vector<int> pendants(t.whites, 0);
    for (const auto& a : terminals) {
        pendants[a.vertex] += a.on_black ? 0 : 1;
    }
    next = static_cast<int>(t.whites + t.blacks);
    for (const auto& a : terminals) {
        if (a.on_black) {
            continue;
        }
        const int leaf = next++;
        const int w = a.vertex;
        if (a.hull_degree < 0 || pendants[w] != 1 || t.terminal[w] ||
            static_cast<int>(t.adjacency[w].size()) - 1 != a.hull_degree) {
            continue;
        }
        t.present[leaf] = 0;
        t.terminal[leaf] = 0;
        t.adjacency[leaf].clear();
        auto& adj = t.adjacency[w];
        adj.erase(std::remove(adj.begin(), adj.end(), leaf), adj.end());
        t.terminal[w] = 1;
        t.terminal_points[w] = a.point;
    }
    return t;
}

namespace {

int match_type(const std::vector<int>& degrees, const std::vector<std::pair<int, int>>& edges) {
    const std::size_t count = degrees.size();
    if (count == 0) {
        return 1;
    }
    if (std::any_of(degrees.begin(), degrees.end(), [](int d) { return d > 4; })) {
        return 0;
    }
    const bool all_three = std::all_of(degrees.begin(), degrees.end(), [](int d) { return d == 3; });
    if (count == 1) {
        return degrees[0] == 3 ? 2 : 3;
    }
    if (!all_three || edges.size() + 1 != count) {
        return 0;
    }
    if (count == 2) {
        return 4;
    }
    std::vector<int> deg(count, 0);
    for (auto [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    const int max_deg = *std::max_element(deg.begin(), deg.end());
    if (count == 3) {
        return max_deg == 2 ? 5 : 0;
    }
    if (count == 4) {
        return max_deg == 3 ? 6 : 7;
    }
    return 0;
}

}  // namespace

TreeShape reduce_shape(const CombinatorialTree& t) {
    TreeShape s;
    const int total = static_cast<int>(t.adjacency.size());
    std::vector<int> kept_index(total, -1);
    std::vector<int> kept;
    for (int v = 0; v < total; ++v) {
        if (t.present[v] && t.degree(v) != 2) {
            kept_index[v] = static_cast<int>(kept.size());
            kept.push_back(v);
        }
        if (t.present[v] && t.terminal[v] && t.degree(v) >= 2) {
            ++s.interior_terminals;
        }
    }
    if (kept.empty()) {
        s.canonical = t.vertex_count() == 0 ? "Empty" : "Cycle";
        return s;
    }
    // reduced adjacency: walk through degree-2 vertices
    std::vector<std::vector<int>> adj(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        for (int start : t.adjacency[kept[i]]) {
            int prev = kept[i];
            int cur = start;
            while (kept_index[cur] < 0) {
                const auto& a = t.adjacency[cur];
                int nxt = a[0] == prev ? a[1] : a[0];
                prev = cur;
                cur = nxt;
            }
            adj[i].push_back(kept_index[cur]);
        }
    }
    std::vector<int> ram_index(kept.size(), -1);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (adj[i].size() == 1) {
            ++s.leaf_count;
        }
        if (adj[i].size() >= 3) {
            ram_index[i] = static_cast<int>(s.ramification_degrees.size());
            s.ramification_degrees.push_back(static_cast<int>(adj[i].size()));
        }
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
        for (int j : adj[i]) {
            if (ram_index[i] >= 0 && ram_index[j] >= 0 && static_cast<int>(i) < j) {
                s.ramification_edges.emplace_back(ram_index[i], ram_index[j]);
            }
        }
    }
    s.type_id = match_type(s.ramification_degrees, s.ramification_edges);
    std::sort(s.ramification_degrees.rbegin(), s.ramification_degrees.rend());

    if (s.ramification_degrees.empty()) {
        s.canonical = kept.size() == 1 ? "Point" : "Arc";
        return s;
    }
    // centre(s) by peeling leaves
    const std::size_t count = kept.size();
    std::vector<std::size_t> deg(count);
    std::vector<int> layer;
    for (std::size_t i = 0; i < count; ++i) {
        deg[i] = adj[i].size();
        if (deg[i] <= 1) {
            layer.push_back(static_cast<int>(i));
        }
    }
    std::size_t remaining = count;
    while (remaining > 2) {
        remaining -= layer.size();
        std::vector<int> next;
        for (int v : layer) {
            for (int u : adj[v]) {
                if (--deg[u] == 1) {
                    next.push_back(u);
                }
            }
        }
        layer = std::move(next);
    }
    std::function<std::string(int, int)> rooted = [&](int v, int parent) -> std::string {
        if (adj[v].size() == 1 && parent != -1) {
            return "L";
        }
        std::vector<std::string> children;
        for (int u : adj[v]) {
            if (u != parent) {
                children.push_back(rooted(u, v));
            }
        }
        std::sort(children.begin(), children.end());
        std::string out = "R" + std::to_string(adj[v].size()) + "(";
        for (std::size_t i = 0; i < children.size(); ++i) {
            out += (i ? "," : "") + children[i];
        }
        return out + ")";
    };
    std::string best;
    for (int c : layer) {
        std::string str = rooted(c, -1);
        if (best.empty() || str < best) {
            best = str;
        }
    }
    s.canonical = best;
    return s;
}

MainTreeResult classify_main_tree(const DigitSet& d, const FaceTable& table, const std::vector<Point>& boundary,
                                  int k_start, int k_max, std::size_t budget) {
    MainTreeResult r;
    std::vector<int> degrees;
    try {
        degrees = hull_degrees(d, table, boundary);
    } catch (const Error& e) {
        r.note = std::string("hull degrees unavailable: ") + e.what() + "; ";
    }
    std::string previous;
    for (int k = k_start; k <= k_max; ++k) {
        BipartiteGraph g;
        try {
            g = level_graph(d, table, k, budget);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Budget) {
                throw;
            }
            r.note += "cell budget reached at level " + std::to_string(k);
            break;
        }
        if (!g.is_tree()) {
            throw Error(ErrorKind::NotDendrite, "level-" + std::to_string(k) + " intersection graph is not a tree");
        }
        auto terminals = locate_terminals(d, g, boundary);
        if (!degrees.empty()) {
            for (std::size_t i = 0; i < terminals.size(); ++i) {
                terminals[i].hull_degree = degrees[i];
            }
        }
        CombinatorialTree t = steiner_subtree(g, terminals);
        r.shape = reduce_shape(t);
        r.levels_examined = k;
        r.per_level.push_back(r.shape.canonical);
        r.cells.clear();
        for (std::size_t i = 0; i < g.whites.size(); ++i) {
            if (t.present[i]) {
                r.cells.push_back(g.whites[i]);
            }
        }
        if (k > k_start && r.shape.canonical == previous) {
            r.stabilized = true;
            r.stabilized_at = k - 1;
            return r;
        }
        previous = r.shape.canonical;
    }
    if (r.note.find("budget") == std::string::npos) {
        r.note += "no two consecutive levels agree up to level " + std::to_string(k_max);
    }
    return r;
}

bool tree_boundary_permitted(int type_id, BoundaryType type) {
    using B = BoundaryType;
    auto in = [type](std::initializer_list<B> allowed) {
        return std::find(allowed.begin(), allowed.end(), type) != allowed.end();
    };
    switch (type_id) {
        case 1: return in({B::A, B::C, B::Segment});
        case 2: return in({B::A, B::C, B::D3});
        case 3: return in({B::A, B::B, B::C});
        case 4: return in({B::A, B::B, B::C, B::D6});
        case 5:
        case 6:
        case 7: return in({B::D6});
        default: return false;
    }
}

Violations check_main_tree(const MainTreeResult& r, BoundaryType type) {
    Violations out;
    if (!r.stabilized) {
        return out;
    }
    const auto& s = r.shape;
    if (!s.ramification_degrees.empty() && s.ramification_degrees.front() > 4) {
        out.push_back({"ramification-degree", "main tree has a vertex of degree " +
                                                  std::to_string(s.ramification_degrees.front())});
    }
    if (s.type_id == 0) {
        out.push_back({"tree-type", "main tree " + s.canonical + " matches none of the seven types"});
    } else if (!tree_boundary_permitted(s.type_id, type)) {
        out.push_back({"tree-boundary", "main tree type " + std::to_string(s.type_id) + " with boundary type " +
                                            to_string(type)});
    }
    return out;
}

}  // namespace fsq
