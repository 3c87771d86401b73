#include "fsq/graphs.hpp"

#include <algorithm>
#include <numeric>

#include "fsq/errors.hpp"

namespace fsq {

bool ordinary_graph_connected(const DigitSet& d, const FaceTable& table) {
    const auto digits = d.digits();
    std::vector<int> parent(digits.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) {
            v = parent[v] = parent[parent[v]];
        }
        return v;
    };
    std::size_t components = digits.size();
    for (std::size_t i = 0; i < digits.size(); ++i) {
        for (std::size_t j = i + 1; j < digits.size(); ++j) {
            Cell diff = digits[j] - digits[i];
            if (std::abs(diff.x) > 1 || std::abs(diff.y) > 1) {
                continue;
            }
            if (table[FaceVector{static_cast<int>(diff.x), static_cast<int>(diff.y)}].empty()) {
                continue;
            }
            int a = find(static_cast<int>(i));
            int b = find(static_cast<int>(j));
            if (a != b) {
                parent[a] = b;
                --components;
            }
        }
    }
    return components == 1;
}

std::array<std::vector<LatticePoint>, 9> face_lattice_points(const DigitSet& d, const FaceTable& table) {
    const std::int64_t base = base_scale(d.n());
    std::array<std::vector<LatticePoint>, 9> out;
    for (FaceVector alpha : nonzero_faces()) {
        const auto& f = table[alpha];
        if (!f.finite()) {
            continue;
        }
        for (const Point& p : f.points) {
            auto lp = to_lattice(p, base);
            if (!lp) {
                throw Error(ErrorKind::InvalidArgument, "intersection point off the base lattice");
            }
            out[alpha.index()].push_back(*lp);
        }
    }
    return out;
}

BipartiteGraph level_graph(const DigitSet& d, const FaceTable& table, int k, std::size_t budget) {
    const auto faces = face_lattice_points(d, table);
    BipartiteGraph g;
    g.level = k;
    g.whites = refine(d, k, budget);
    const std::int64_t base = base_scale(d.n());
    g.scale = base;
    for (int i = 0; i < k; ++i) {
        g.scale *= d.n();
    }
    g.white_index.reserve(g.whites.size());
    for (std::size_t i = 0; i < g.whites.size(); ++i) {
        g.white_index.emplace(g.whites[i], static_cast<int>(i));
    }
    std::vector<std::vector<int>> incident;
    for (std::size_t i = 0; i < g.whites.size(); ++i) {
        const Cell c = g.whites[i];
        for (FaceVector alpha : nonzero_faces()) {
            const auto& pts = faces[alpha.index()];
            if (pts.empty() && table[alpha].finite()) {
                continue;
            }
            auto it = g.white_index.find(c + alpha.cell());
            if (it == g.white_index.end()) {
                continue;
            }
            if (!table[alpha].finite()) {
                throw Error(ErrorKind::Unbounded, "adjacent pieces meet in the infinite set F(" + alpha.str() + ")");
            }
            for (const LatticePoint& p : pts) {
                LatticePoint key{c.x * base + p.x, c.y * base + p.y};
                auto [bit, inserted] = g.black_index.emplace(key, static_cast<int>(g.blacks.size()));
                if (inserted) {
                    g.blacks.push_back(key);
                    incident.emplace_back();
                }
                incident[bit->second].push_back(static_cast<int>(i));
                incident[bit->second].push_back(it->second);
            }
        }
    }
    // Renumber blacks in sorted order so the graph is independent of scan order.
    std::vector<int> order(g.blacks.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return g.blacks[a] < g.blacks[b]; });
    std::vector<LatticePoint> blacks;
    g.black_cells.clear();
    for (int old : order) {
        auto& cells = incident[old];
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        g.black_index[g.blacks[old]] = static_cast<int>(blacks.size());
        blacks.push_back(g.blacks[old]);
        g.black_cells.push_back(std::move(cells));
    }
    g.blacks = std::move(blacks);
    g.cell_blacks.assign(g.whites.size(), {});
    for (std::size_t b = 0; b < g.blacks.size(); ++b) {
        for (int w : g.black_cells[b]) {
            g.cell_blacks[w].push_back(static_cast<int>(b));
        }
    }
    return g;
}

std::size_t BipartiteGraph::edge_count() const {
    std::size_t e = 0;
    for (const auto& cells : black_cells) {
        e += cells.size();
    }
    return e;
}

bool BipartiteGraph::connected() const {
    if (whites.empty()) {
        return blacks.empty();
    }
    const int w = static_cast<int>(whites.size());
    std::vector<bool> seen(whites.size() + blacks.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        const auto& next = v < w ? cell_blacks[v] : black_cells[v - w];
        for (int u : next) {
            int id = v < w ? u + w : u;
            if (!seen[id]) {
                seen[id] = true;
                ++count;
                stack.push_back(id);
            }
        }
    }
    return count == seen.size();
}

std::vector<int> BipartiteGraph::find_cycle() const {
    const int w = static_cast<int>(whites.size());
    const int total = w + static_cast<int>(blacks.size());
    std::vector<int> parent(total, -2);
    std::vector<int> depth(total, 0);
    for (int root = 0; root < total; ++root) {
        if (parent[root] != -2) {
            continue;
        }
        parent[root] = -1;
        struct Frame {
            int v;
            std::size_t next;
        };
        std::vector<Frame> stack{{root, 0}};
        while (!stack.empty()) {
            Frame& f = stack.back();
            const int v = f.v;
            const auto& adj = v < w ? cell_blacks[v] : black_cells[v - w];
            if (f.next >= adj.size()) {
                stack.pop_back();
                continue;
            }
            int u = adj[f.next++];
            int id = v < w ? u + w : u;
            if (id == parent[v]) {
                continue;
            }
            if (parent[id] == -2) {
                parent[id] = v;
                depth[id] = depth[v] + 1;
                stack.push_back({id, 0});
                continue;
            }
            if (depth[id] < depth[v]) {
                // back edge v -> id closes a cycle along the tree path
                std::vector<int> cycle;
                for (int x = v; x != id; x = parent[x]) {
                    cycle.push_back(x);
                }
                cycle.push_back(id);
                std::reverse(cycle.begin(), cycle.end());
                return cycle;
            }
        }
    }
    return {};
}

std::string BipartiteGraph::node_label(int id) const {
    const int w = static_cast<int>(whites.size());
    if (id < w) {
        return "cell(" + whites[id].str() + ")";
    }
    return "point(" + from_lattice(blacks[id - w], scale).str() + ")";
}

const char* to_string(DendriteGate gate) {
    switch (gate) {
        case DendriteGate::None: return "none";
        case DendriteGate::Connected: return "connected";
        case DendriteGate::OnePoint: return "one-point";
        case DendriteGate::Tree: return "tree";
    }
    return "?";
}

DendriteReport dendrite_check(const DigitSet& d, const FaceTable& table, const std::array<bool, 9>& realized) {
    DendriteReport r;
    r.connected = ordinary_graph_connected(d, table);
    r.one_point = one_point(table, realized);
    if (r.one_point) {
        BipartiteGraph g = level_graph(d, table, 1);
        r.tree = g.is_tree();
        if (!r.tree) {
            for (int id : g.find_cycle()) {
                r.cycle_witness.push_back(g.node_label(id));
            }
        }
    }
    if (!r.connected) {
        r.failed = DendriteGate::Connected;
    } else if (!r.one_point) {
        r.failed = DendriteGate::OnePoint;
    } else if (!r.tree) {
        r.failed = DendriteGate::Tree;
    }
    return r;
}

std::string to_dot(const BipartiteGraph& g) {
    std::string s = "graph level" + std::to_string(g.level) + " {\n";
    const int w = static_cast<int>(g.whites.size());
    for (int i = 0; i < w; ++i) {
        s += "  w" + std::to_string(i) + " [shape=box,label=\"" + g.whites[i].str() + "\"];\n";
    }
    for (std::size_t b = 0; b < g.blacks.size(); ++b) {
        s += "  b" + std::to_string(b) + " [shape=point,xlabel=\"" + from_lattice(g.blacks[b], g.scale).str() + "\"];\n";
    }
    for (std::size_t b = 0; b < g.blacks.size(); ++b) {
        for (int c : g.black_cells[b]) {
            s += "  w" + std::to_string(c) + " -- b" + std::to_string(b) + ";\n";
        }
    }
    return s + "}\n";
}

}  // namespace fsq
