#include "fsq/lattice.hpp"

#include <limits>
#include <numeric>
#include <unordered_set>

#include "fsq/errors.hpp"

namespace fsq {

std::optional<LatticePoint> to_lattice(const Point& p, std::int64_t scale) {
    auto coord = [scale](const Rational& r) -> std::optional<std::int64_t> {
        BigInt s = scale;
        if (s % r.den() != 0) {
            return std::nullopt;
        }
        BigInt v = r.num() * (s / r.den());
        if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
            return std::nullopt;
        }
        return static_cast<std::int64_t>(v);
    };
    auto x = coord(p.x);
    auto y = coord(p.y);
    if (!x || !y) {
        return std::nullopt;
    }
    return LatticePoint{*x, *y};
}

Point from_lattice(LatticePoint p, std::int64_t scale) {
    return {Rational(p.x, scale), Rational(p.y, scale)};
}

std::int64_t base_scale(int n) { return static_cast<std::int64_t>(n) * (n - 1); }

std::int64_t lattice_lcm(std::int64_t a, std::int64_t b, int n) {
    BigInt l = BigInt(a) / boost::multiprecision::gcd(BigInt(a), BigInt(b)) * b;
    // n * scale must stay representable for the automaton transitions.
    if (l * (n + 1) > BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
        throw Error(ErrorKind::Budget, "point denominators too large for the lattice representation");
    }
    return static_cast<std::int64_t>(l);
}

Membership::Membership(const DigitSet& d, std::int64_t scale)
    : n_(d.n()), scale_(scale), digits_(d.digits().begin(), d.digits().end()) {
    if (BigInt(scale) * (n_ + 1) > BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
        throw Error(ErrorKind::Budget, "lattice scale too large");
    }
}

bool Membership::contains(LatticePoint p) {
    if (!in_square(p)) {
        return false;
    }
    if (auto it = memo_.find(p); it != memo_.end()) {
        return it->second;
    }
    struct Frame {
        LatticePoint p;
        std::size_t next = 0;
        bool live = false;
    };
    std::vector<Frame> stack{{p}};
    std::unordered_set<LatticePoint, LatticePointHash> gray{p};
    bool result = false;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (!f.live && f.next < digits_.size()) {
            LatticePoint q = inverse(digits_[f.next++], f.p);
            if (!in_square(q)) {
                continue;
            }
            if (auto it = memo_.find(q); it != memo_.end()) {
                f.live = it->second;
                continue;
            }
            if (gray.count(q) != 0) {
                // back edge: q reaches the current state, so both lie on a cycle
                f.live = true;
                continue;
            }
            gray.insert(q);
            stack.push_back({q});
            continue;
        }
        result = f.live;
        memo_[f.p] = result;
        gray.erase(f.p);
        stack.pop_back();
        if (!stack.empty() && result) {
            stack.back().live = true;
        }
    }
    return result;
}

std::vector<Cell> Membership::containing_pieces(LatticePoint p) {
    std::vector<Cell> out;
    for (const Cell& w : digits_) {
        if (contains(inverse(w, p))) {
            out.push_back(w);
        }
    }
    return out;
}

}  // namespace fsq
