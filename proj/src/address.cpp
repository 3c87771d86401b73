#include "fsq/address.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "fsq/errors.hpp"

namespace fsq {

std::string Address::str() const {
    std::string s;
    for (const Cell& c : preperiod) {
        s += "(" + c.str() + ")";
    }
    s += "[";
    for (const Cell& c : period) {
        s += "(" + c.str() + ")";
    }
    return s + "]";
}

namespace {

struct Automaton {
    std::vector<Point> states;
    // transitions[i] = (digit, target state)
    std::vector<std::vector<std::pair<Cell, int>>> transitions;
    std::vector<bool> live;
};

constexpr std::size_t kMaxStates = 1'000'000;

Automaton build(const Point& start, const DigitSet& d) {
    Automaton a;
    std::map<Point, int> index;
    index.emplace(start, 0);
    a.states.push_back(start);
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        if (a.states.size() > kMaxStates) {
            throw Error(ErrorKind::Budget, "residual automaton exceeded state budget");
        }
        std::vector<std::pair<Cell, int>> out;
        for (const Cell& digit : d.digits()) {
            Point next = invert_map(d.n(), digit, a.states[i]);
            if (!next.in_unit_square()) {
                continue;
            }
            auto [it, inserted] = index.emplace(next, static_cast<int>(a.states.size()));
            if (inserted) {
                a.states.push_back(next);
            }
            out.emplace_back(digit, it->second);
        }
        a.transitions.push_back(std::move(out));
    }
    // A state is live iff some infinite path leaves it: prune dead states to a fixpoint.
    a.live.assign(a.states.size(), true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < a.states.size(); ++i) {
            if (!a.live[i]) {
                continue;
            }
            bool any = std::any_of(a.transitions[i].begin(), a.transitions[i].end(),
                                   [&](const auto& t) { return a.live[t.second]; });
            if (!any) {
                a.live[i] = false;
                changed = true;
            }
        }
    }
    return a;
}

// Tarjan SCC over live states; returns component id per state.
std::vector<int> strongly_connected(const Automaton& a, std::vector<bool>& cyclic) {
    const int count = static_cast<int>(a.states.size());
    std::vector<int> idx(count, -1), low(count, 0), comp(count, -1), stack;
    std::vector<bool> on_stack(count, false);
    int next_index = 0;
    int next_comp = 0;
    struct Frame {
        int v;
        std::size_t edge;
    };
    for (int root = 0; root < count; ++root) {
        if (!a.live[root] || idx[root] != -1) {
            continue;
        }
        std::vector<Frame> frames{{root, 0}};
        idx[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& edges = a.transitions[f.v];
            if (f.edge < edges.size()) {
                int w = edges[f.edge++].second;
                if (!a.live[w]) {
                    continue;
                }
                if (idx[w] == -1) {
                    idx[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], idx[w]);
                }
                continue;
            }
            int v = f.v;
            frames.pop_back();
            if (!frames.empty()) {
                low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
            if (low[v] == idx[v]) {
                int w = -1;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = next_comp;
                } while (w != v);
                ++next_comp;
            }
        }
    }
    cyclic.assign(next_comp, false);
    for (int v = 0; v < count; ++v) {
        if (!a.live[v]) {
            continue;
        }
        for (const auto& [digit, w] : a.transitions[v]) {
            if (a.live[w] && comp[w] == comp[v]) {
                cyclic[comp[v]] = true;
            }
        }
    }
    return comp;
}

}  // namespace

std::vector<Address> point_addresses(const Point& p, const DigitSet& d) {
    if (!p.in_unit_square()) {
        throw Error(ErrorKind::NotInAttractor, "point " + p.str() + " lies outside the unit square");
    }
    Automaton a = build(p, d);
    if (!a.live[0]) {
        return {};
    }
    std::vector<bool> cyclic;
    std::vector<int> comp = strongly_connected(a, cyclic);
    for (std::size_t v = 0; v < a.states.size(); ++v) {
        if (!a.live[v] || !cyclic[comp[v]]) {
            continue;
        }
        auto live_out = std::count_if(a.transitions[v].begin(), a.transitions[v].end(),
                                      [&](const auto& t) { return a.live[t.second]; });
        if (live_out > 1) {
            throw Error(ErrorKind::Unbounded, "point " + p.str() + " has infinitely many addresses (state " +
                                                  a.states[v].str() + " branches on a cycle)");
        }
    }

    // Every cycle is exitless, so each infinite path is a lasso.
    std::vector<Address> out;
    std::vector<int> path{0};
    std::vector<Cell> digits;
    struct Frame {
        std::size_t edge;
    };
    std::vector<Frame> frames{{0}};
    while (!frames.empty()) {
        int v = path.back();
        Frame& f = frames.back();
        const auto& edges = a.transitions[v];
        if (f.edge >= edges.size()) {
            frames.pop_back();
            path.pop_back();
            if (!digits.empty()) {
                digits.pop_back();
            }
            continue;
        }
        const auto [digit, w] = edges[f.edge++];
        if (!a.live[w]) {
            continue;
        }
        auto seen = std::find(path.begin(), path.end(), w);
        if (seen != path.end()) {
            auto start = static_cast<std::size_t>(seen - path.begin());
            Address addr;
            addr.preperiod.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(start));
            addr.period.assign(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end());
            addr.period.push_back(digit);
            out.push_back(std::move(addr));
            continue;
        }
        path.push_back(w);
        digits.push_back(digit);
        frames.push_back({0});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Point address_point(const Address& a, const DigitSet& d) {
    if (a.period.empty()) {
        throw Error(ErrorKind::InvalidArgument, "address period must be nonempty");
    }
    for (const auto* part : {&a.preperiod, &a.period}) {
        for (const Cell& c : *part) {
            if (!d.contains(c)) {
                throw Error(ErrorKind::InvalidArgument, "digit (" + c.str() + ") not in the digit set");
            }
        }
    }
    const BigInt n = d.n();
    BigInt sx = 0;
    BigInt sy = 0;
    BigInt power = 1;
    for (const Cell& c : a.period) {
        sx = sx * n + c.x;
        sy = sy * n + c.y;
        power *= n;
    }
    Point p{Rational(sx, power - 1), Rational(sy, power - 1)};
    for (auto it = a.preperiod.rbegin(); it != a.preperiod.rend(); ++it) {
        p = apply_map(d.n(), *it, p);
    }
    return p;
}

}  // namespace fsq
