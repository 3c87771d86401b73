#include "fsq/orders.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_set>

#include "fsq/errors.hpp"

namespace fsq {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t size) : parent(size) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[v] != v) {
            v = parent[v] = parent[parent[v]];
        }
        return v;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    BigInt r = BigInt(a) * b;
    if (r > BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
        throw Error(ErrorKind::Budget, "lattice scale too large");
    }
    return static_cast<std::int64_t>(r);
}

LatticePoint require_lattice(const Point& p, std::int64_t scale) {
    auto lp = to_lattice(p, scale);
    if (!lp) {
        throw Error(ErrorKind::InvalidArgument, "point (" + p.str() + ") is off the order lattice");
    }
    return *lp;
}

}  // namespace

int OrderEngine::State::order() const {
    std::set<int> distinct;
    for (int l : labels) {
        if (l >= 0) {
            distinct.insert(l);
        }
    }
    return detached + static_cast<int>(distinct.size());
}

OrderEngine::OrderEngine(const DigitSet& d, const FaceTable& table, const std::vector<Point>& boundary,
                         std::int64_t scale, int max_levels)
    : n_(d.n()),
      scale_(scale),
      max_levels_(max_levels),
      digits_(d.digits().begin(), d.digits().end()),
      membership_(d, scale) {
    const std::int64_t first = checked_mul(n_, base_scale(n_));
    if (scale_ % first != 0) {
        throw Error(ErrorKind::InvalidArgument, "order lattice must be a multiple of n * n(n-1)");
    }
    for (const Point& p : boundary) {
        boundary_index_.emplace(require_lattice(p, scale_), static_cast<int>(boundary_.size()));
        boundary_.push_back(require_lattice(p, scale_));
    }
    std::unordered_map<Cell, int, CellHash> digit_index;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        digit_index.emplace(digits_[i], static_cast<int>(i));
    }
    auto incidence = [&](LatticePoint p, const Cell& u) {
        auto it = boundary_index_.find(membership_.inverse(u, p));
        if (it == boundary_index_.end()) {
            throw Error(ErrorKind::InvalidArgument, "a piece meets its neighbours off the image of ∂K");
        }
        return Incidence{digit_index.at(u), it->second};
    };

    BipartiteGraph g = level_graph(d, table, 1);
    const std::int64_t factor = scale_ / g.scale;
    for (std::size_t b = 0; b < g.blacks.size(); ++b) {
        LatticePoint p{g.blacks[b].x * factor, g.blacks[b].y * factor};
        black_index_.emplace(p, static_cast<int>(blacks_.size()));
        blacks_.push_back(p);
        std::vector<Incidence> inc;
        for (int w : g.black_cells[b]) {
            inc.push_back(incidence(p, g.whites[w]));
        }
        black_pieces_.push_back(std::move(inc));
    }
    for (const LatticePoint& p : boundary_) {
        std::vector<Incidence> inc;
        for (const Cell& u : membership_.containing_pieces(p)) {
            inc.push_back(incidence(p, u));
        }
        boundary_pieces_.push_back(std::move(inc));
        auto it = black_index_.find(p);
        boundary_black_.push_back(it == black_index_.end() ? -1 : it->second);
    }
}

std::vector<LatticePoint> OrderEngine::first_level_blacks() const { return blacks_; }

int OrderEngine::node_of(LatticePoint p) {
    auto [it, inserted] = node_index_.emplace(p, static_cast<int>(nodes_.size()));
    if (inserted) {
        Node node;
        node.p = p;
        if (auto b = boundary_index_.find(p); b != boundary_index_.end()) {
            node.boundary_index = b->second;
        }
        if (auto b = black_index_.find(p); b != black_index_.end()) {
            node.black_index = b->second;
        }
        nodes_.push_back(std::move(node));
    }
    return it->second;
}

std::vector<int> OrderEngine::closure(const std::vector<LatticePoint>& queries) {
    std::vector<int> order;
    std::unordered_set<int> seen;
    for (const LatticePoint& q : queries) {
        if (!membership_.contains(q)) {
            throw Error(ErrorKind::NotInAttractor, "point (" + from_lattice(q, scale_).str() + ") is not in K");
        }
        int id = node_of(q);
        if (seen.insert(id).second) {
            order.push_back(id);
        }
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        const int id = order[i];
        if (nodes_[id].pieces.empty()) {
            std::vector<std::pair<int, int>> pieces;
            for (std::size_t u = 0; u < digits_.size(); ++u) {
                LatticePoint child = membership_.inverse(digits_[u], nodes_[id].p);
                if (membership_.contains(child)) {
                    pieces.emplace_back(static_cast<int>(u), node_of(child));
                }
            }
            nodes_[id].pieces = std::move(pieces);
        }
        for (const auto& [u, child] : nodes_[id].pieces) {
            if (seen.insert(child).second) {
                order.push_back(child);
            }
        }
    }
    return order;
}

OrderEngine::State OrderEngine::step(const Node& node, const std::vector<State>& current,
                                     const std::vector<int>& pos) const {
    const int m = static_cast<int>(digits_.size());
    const int blacks = static_cast<int>(blacks_.size());
    const int points = static_cast<int>(boundary_.size());
    const int class_base = m + blacks + points;

    std::vector<int> slot(m, -1);
    for (std::size_t s = 0; s < node.pieces.size(); ++s) {
        slot[node.pieces[s].first] = static_cast<int>(s);
    }
    UnionFind uf(static_cast<std::size_t>(class_base + node.pieces.size() * points));
    std::vector<char> exists(uf.parent.size(), 0);
    for (int u = 0; u < m; ++u) {
        exists[u] = slot[u] == -1;
    }
    State next;
    for (std::size_t s = 0; s < node.pieces.size(); ++s) {
        const State& child = current[pos[node.pieces[s].second]];
        next.detached += child.detached;
        for (int l : child.labels) {
            if (l >= 0) {
                exists[class_base + s * points + l] = 1;
            }
        }
    }
    auto link = [&](int x, const Incidence& inc) {
        const int s = slot[inc.piece];
        if (s == -1) {
            uf.unite(x, inc.piece);
            return true;
        }
        const int l = current[pos[node.pieces[s].second]].labels[inc.preimage];
        if (l < 0) {
            return false;
        }
        uf.unite(x, class_base + s * points + l);
        return true;
    };
    for (int b = 0; b < blacks; ++b) {
        if (b == node.black_index) {
            continue;
        }
        exists[m + b] = 1;
        for (const Incidence& inc : black_pieces_[b]) {
            link(m + b, inc);
        }
    }
    auto boundary_node = [&](int i) { return boundary_black_[i] >= 0 ? m + boundary_black_[i] : m + blacks + i; };
    for (int i = 0; i < points; ++i) {
        if (i == node.boundary_index || boundary_black_[i] >= 0) {
            continue;
        }
        bool linked = false;
        for (const Incidence& inc : boundary_pieces_[i]) {
            linked = link(m + blacks + i, inc) || linked;
        }
        exists[m + blacks + i] = linked;
    }

    std::vector<char> touches_boundary(uf.parent.size(), 0);
    for (int i = 0; i < points; ++i) {
        if (i != node.boundary_index && exists[boundary_node(i)]) {
            touches_boundary[uf.find(boundary_node(i))] = 1;
        }
    }
    for (std::size_t v = 0; v < uf.parent.size(); ++v) {
        if (exists[v] && uf.find(static_cast<int>(v)) == static_cast<int>(v) && !touches_boundary[v]) {
            ++next.detached;
        }
    }
    next.labels.assign(points, -1);
    std::unordered_map<int, int> canonical;
    for (int i = 0; i < points; ++i) {
        if (i == node.boundary_index || !exists[boundary_node(i)]) {
            continue;
        }
        int root = uf.find(boundary_node(i));
        auto [it, inserted] = canonical.emplace(root, static_cast<int>(canonical.size()));
        next.labels[i] = it->second;
    }
    return next;
}

bool OrderEngine::coarsens(const State& before, const State& after) const {
    for (std::size_t i = 0; i < before.labels.size(); ++i) {
        if (before.labels[i] < 0) {
            continue;
        }
        if (after.labels[i] < 0) {
            return false;
        }
        for (std::size_t j = i + 1; j < before.labels.size(); ++j) {
            if (before.labels[j] == before.labels[i] && after.labels[j] != after.labels[i]) {
                return false;
            }
        }
    }
    return true;
}

void OrderEngine::solve(const std::vector<LatticePoint>& queries) {
    std::vector<LatticePoint> pending;
    for (const LatticePoint& q : queries) {
        auto it = node_index_.find(q);
        if (it == node_index_.end() || solved_.count(it->second) == 0) {
            pending.push_back(q);
        }
    }
    if (pending.empty()) {
        return;
    }
    // Every orbit point restarts from level 0 so each state is exactly its
    // level-k value at step k, whatever else shares the batch.
    const std::vector<int> ids = closure(pending);
    std::vector<int> pos(nodes_.size(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        pos[ids[i]] = static_cast<int>(i);
    }
    const State empty{0, std::vector<int>(boundary_.size(), -1)};
    std::vector<State> current(ids.size(), empty);
    std::vector<int> last_change(ids.size(), 0);
    for (int level = 1; level <= max_levels_; ++level) {
        std::vector<State> next(ids.size());
        bool changed = false;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            next[i] = step(nodes_[ids[i]], current, pos);
            if (!(next[i] == current[i])) {
                changed = true;
                last_change[i] = level;
                if (!coarsens(current[i], next[i])) {
                    ++coarsening_failures_;
                }
            }
        }
        current = std::move(next);
        if (!changed) {
            for (std::size_t i = 0; i < ids.size(); ++i) {
                solved_[ids[i]] = current[i];
                settled_[ids[i]] = last_change[i];
            }
            return;
        }
    }
    throw Error(ErrorKind::NoStabilization,
                "order states did not settle within " + std::to_string(max_levels_) + " levels");
}

const OrderEngine::State& OrderEngine::state(LatticePoint p) {
    solve({p});
    return solved_.at(node_index_.at(p));
}

int OrderEngine::order(LatticePoint p) { return state(p).order(); }

int OrderEngine::settled_level(LatticePoint p) {
    solve({p});
    return settled_.at(node_index_.at(p));
}

std::vector<OrderEngine::State> OrderEngine::history(LatticePoint p, int k) {
    const std::vector<int> ids = closure({p});
    std::vector<int> pos(nodes_.size(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        pos[ids[i]] = static_cast<int>(i);
    }
    const State empty{0, std::vector<int>(boundary_.size(), -1)};
    std::vector<State> current(ids.size(), empty);
    std::vector<State> out{current[0]};
    for (int level = 1; level <= k; ++level) {
        std::vector<State> next(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            next[i] = step(nodes_[ids[i]], current, pos);
        }
        current = std::move(next);
        out.push_back(current[0]);
    }
    return out;
}

std::int64_t order_scale(const DigitSet& d, const Point& p) {
    std::int64_t s = checked_mul(d.n(), base_scale(d.n()));
    for (const BigInt& den : {p.x.den(), p.y.den()}) {
        if (den > BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
            throw Error(ErrorKind::Budget, "point denominator too large");
        }
        s = lattice_lcm(s, static_cast<std::int64_t>(den), d.n());
    }
    return s;
}

int branch_count(const DigitSet& d, const FaceTable& table, const Point& p, int k) {
    BipartiteGraph g = level_graph(d, table, k);
    std::int64_t scale = g.scale;
    for (const BigInt& den : {p.x.den(), p.y.den()}) {
        scale = lattice_lcm(scale, static_cast<std::int64_t>(den), d.n());
    }
    std::int64_t nk = 1;
    for (int i = 0; i < k; ++i) {
        nk *= d.n();
    }
    checked_mul(nk, scale);
    Membership member(d, scale);
    const LatticePoint q = require_lattice(p, scale);
    const int w = static_cast<int>(g.whites.size());
    std::vector<char> removed(g.whites.size(), 0);
    bool any = false;
    for (int i = 0; i < w; ++i) {
        LatticePoint local{nk * q.x - g.whites[i].x * scale, nk * q.y - g.whites[i].y * scale};
        if (member.contains(local)) {
            removed[i] = 1;
            any = true;
        }
    }
    if (!any) {
        throw Error(ErrorKind::NotInAttractor, "point (" + p.str() + ") is not in K");
    }
    int removed_black = -1;
    if (auto lp = to_lattice(p, g.scale)) {
        if (auto it = g.black_index.find(*lp); it != g.black_index.end()) {
            removed_black = it->second;
        }
    }
    UnionFind uf(g.whites.size() + g.blacks.size());
    for (std::size_t b = 0; b < g.blacks.size(); ++b) {
        if (static_cast<int>(b) == removed_black) {
            continue;
        }
        for (int c : g.black_cells[b]) {
            if (!removed[c]) {
                uf.unite(w + static_cast<int>(b), c);
            }
        }
    }
    int components = 0;
    for (int v = 0; v < static_cast<int>(uf.parent.size()); ++v) {
        const bool present = v < w ? !removed[v] : v - w != removed_black;
        if (present && uf.find(v) == v) {
            ++components;
        }
    }
    return components;
}

namespace {

int order_by_pieces_impl(OrderEngine& engine, LatticePoint p, std::unordered_map<LatticePoint, int, LatticePointHash>& memo,
                         int depth) {
    if (auto it = memo.find(p); it != memo.end()) {
        return it->second;
    }
    if (depth > 64) {
        return engine.order(p);
    }
    std::vector<LatticePoint> chain{p};
    std::unordered_set<LatticePoint, LatticePointHash> on_chain{p};
    LatticePoint cur = p;
    int result = -1;
    while (result < 0) {
        std::vector<LatticePoint> children;
        for (const Cell& u : engine.membership().containing_pieces(cur)) {
            children.push_back(engine.membership().inverse(u, cur));
        }
        if (children.empty()) {
            throw Error(ErrorKind::NotInAttractor, "point is not in K");
        }
        if (children.size() == 1) {
            // one piece: Ord(cur) = Ord(S_w^{-1} cur)
            if (!on_chain.insert(children[0]).second) {
                result = engine.order(children[0]);
                break;
            }
            chain.push_back(children[0]);
            cur = children[0];
            continue;
        }
        int sum = 0;
        for (const LatticePoint& c : children) {
            sum += order_by_pieces_impl(engine, c, memo, depth + 1);
        }
        result = sum;
    }
    for (const LatticePoint& c : chain) {
        memo[c] = result;
    }
    return result;
}

}  // namespace

int order_by_pieces(OrderEngine& engine, LatticePoint p) {
    std::unordered_map<LatticePoint, int, LatticePointHash> memo;
    return order_by_pieces_impl(engine, p, memo, 0);
}

OrderResult point_order(const DigitSet& d, const FaceTable& table, const std::vector<Point>& boundary, const Point& p) {
    if (!p.in_unit_square()) {
        throw Error(ErrorKind::NotInAttractor, "point (" + p.str() + ") is outside the unit square");
    }
    OrderEngine engine(d, table, boundary, order_scale(d, p));
    const LatticePoint q = require_lattice(p, engine.scale());
    OrderResult r;
    r.point = p;
    r.order = engine.order(q);
    r.method = "branch counting";
    r.stabilized_at_level = engine.settled_level(q);
    return r;
}

OrderCensus order_census(const DigitSet& d, const FaceTable& table, const std::vector<Point>& boundary, int k) {
    if (k < 1) {
        throw Error(ErrorKind::InvalidArgument, "order census level must be at least 1");
    }
    const int n = d.n();
    const std::int64_t first = checked_mul(n, base_scale(n));
    std::int64_t scale = first;
    for (int i = 1; i < k; ++i) {
        scale = checked_mul(scale, n);
    }
    OrderEngine engine(d, table, boundary, scale);

    // seeds over the first-level scale n * n(n-1)
    std::set<LatticePoint> seeds;
    for (const Point& p : boundary) {
        seeds.insert(require_lattice(p, first));
    }
    for (std::int64_t cx : {0, 1}) {
        for (std::int64_t cy : {0, 1}) {
            if (engine.contains({cx * scale, cy * scale})) {
                seeds.insert({cx * first, cy * first});
            }
        }
    }
    for (const Cell& c : d.digits()) {
        seeds.insert({c.x * first / (n - 1), c.y * first / (n - 1)});
    }
    const std::int64_t factor = scale / first;
    for (const LatticePoint& b : engine.first_level_blacks()) {
        seeds.insert({b.x / factor, b.y / factor});
    }

    std::set<LatticePoint> candidates;
    std::int64_t level_scale = first;  // n^j * first
    for (int j = 0; j < k; ++j) {
        const std::int64_t up = scale / level_scale;
        for (const Cell& c : refine(d, j)) {
            for (const LatticePoint& s : seeds) {
                candidates.insert({(s.x + c.x * first) * up, (s.y + c.y * first) * up});
            }
        }
        level_scale *= n;
    }
    std::vector<LatticePoint> queries(candidates.begin(), candidates.end());
    engine.solve(queries);

    OrderCensus out;
    out.candidates = queries.size();
    for (const LatticePoint& q : queries) {
        const int ord = engine.order(q);
        out.max_order = std::max(out.max_order, ord);
        ++out.histogram[ord];
        if (ord >= 3) {
            out.ramification_points.emplace_back(from_lattice(q, scale), ord);
        }
    }
    out.coarsening_failures = engine.coarsening_failures();
    return out;
}

std::map<Point, int> corner_orders(const DigitSet& d, const FaceTable& table, const std::vector<Point>& boundary) {
    std::map<Point, int> out;
    std::vector<Point> corners;
    for (const Point& p : boundary) {
        if (p.is_corner()) {
            corners.push_back(p);
        }
    }
    if (corners.empty()) {
        return out;
    }
    OrderEngine engine(d, table, boundary, checked_mul(d.n(), base_scale(d.n())));
    std::vector<LatticePoint> qs;
    for (const Point& c : corners) {
        qs.push_back(require_lattice(c, engine.scale()));
    }
    engine.solve(qs);
    for (std::size_t i = 0; i < corners.size(); ++i) {
        out[corners[i]] = engine.order(qs[i]);
    }
    return out;
}

}  // namespace fsq
