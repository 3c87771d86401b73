#include "fsq/intersections.hpp"

#include <algorithm>
#include <set>

#include "fsq/errors.hpp"

namespace fsq {

Point diagonal_corner(FaceVector alpha) {
    return {Rational(BigInt(alpha.a + 1), BigInt(2)), Rational(BigInt(alpha.b + 1), BigInt(2))};
}

namespace {

Cell corner_digit(int n, const Point& corner) {
    return {static_cast<std::int64_t>(corner.x.floor()) * (n - 1), static_cast<std::int64_t>(corner.y.floor()) * (n - 1)};
}

bool corner_set_nonempty(const DigitSet& d, FaceVector alpha) {
    Point c = diagonal_corner(alpha);
    Point opposite = c - alpha.cell().point();
    return d.contains(corner_digit(d.n(), c)) && d.contains(corner_digit(d.n(), opposite));
}

}  // namespace

FaceIntersection face_intersection(const DigitSet& d, FaceVector alpha) {
    FaceIntersection f;
    f.alpha = alpha;
    if (alpha.is_zero()) {
        throw Error(ErrorKind::InvalidArgument, "F_0 is K itself");
    }
    if (alpha.is_diagonal()) {
        if (corner_set_nonempty(d, alpha)) {
            f.kind = IntersectionKind::Finite;
            f.points = {diagonal_corner(alpha)};
        }
        return f;
    }

    const int n = d.n();
    const FaceVector beta = alpha.perp();
    const GSets g = g_sets(d, alpha, beta);

    std::set<Point> corner;
    for (int sign : {1, -1}) {
        FaceVector diag{alpha.a + sign * beta.a, alpha.b + sign * beta.b};
        if (!corner_set_nonempty(d, diag)) {
            continue;
        }
        const Point c = diagonal_corner(diag);
        for (const Cell& digit : sign == 1 ? g.plus_beta : g.minus_beta) {
            corner.insert(apply_map(n, digit, c));
        }
    }

    if (g.self.size() >= 2) {
        f.kind = IntersectionKind::Uncountable;
        f.generator_digits = g.self;
        return f;
    }
    if (g.self.size() == 1) {
        const Cell d0 = g.self.front();
        const Point fixed{Rational(BigInt(d0.x), BigInt(n - 1)), Rational(BigInt(d0.y), BigInt(n - 1))};
        corner.erase(fixed);
        if (corner.empty()) {
            f.kind = IntersectionKind::Finite;
            f.points = {fixed};
        } else {
            f.kind = IntersectionKind::CountablyInfinite;
            f.fixed_point = fixed;
            f.generator_digit = d0;
            f.seeds.assign(corner.begin(), corner.end());
        }
        return f;
    }
    f.kind = corner.empty() ? IntersectionKind::Empty : IntersectionKind::Finite;
    f.points.assign(corner.begin(), corner.end());
    return f;
}

std::vector<Point> FaceIntersection::expand(int n, std::size_t count) const {
    if (kind == IntersectionKind::Finite) {
        return {points.begin(), points.begin() + static_cast<std::ptrdiff_t>(std::min(count, points.size()))};
    }
    if (kind != IntersectionKind::CountablyInfinite || count == 0) {
        return {};
    }
    std::vector<Point> out{fixed_point};
    std::vector<Point> layer = seeds;
    while (out.size() < count) {
        for (Point& s : layer) {
            if (out.size() == count) {
                break;
            }
            out.push_back(s);
            s = apply_map(n, generator_digit, s);
        }
    }
    return out;
}

std::string FaceIntersection::str() const {
    std::string s = "F(" + alpha.str() + ") " + to_string(kind);
    auto join = [](const std::vector<Point>& v) {
        std::string r;
        for (std::size_t i = 0; i < v.size(); ++i) {
            r += (i ? " " : "") + ("(" + v[i].str() + ")");
        }
        return r;
    };
    switch (kind) {
        case IntersectionKind::Empty: break;
        case IntersectionKind::Finite: s += ": " + join(points); break;
        case IntersectionKind::CountablyInfinite:
            s += ": fixed (" + fixed_point.str() + "), seeds " + join(seeds) + ", map (" + generator_digit.str() + ")";
            break;
        case IntersectionKind::Uncountable:
            s += ": digits";
            for (const Cell& c : generator_digits) {
                s += " (" + c.str() + ")";
            }
            break;
    }
    return s;
}

FaceTable face_table(const DigitSet& d) {
    FaceTable t;
    for (FaceVector alpha : nonzero_faces()) {
        t.faces[alpha.index()] = face_intersection(d, alpha);
    }
    return t;
}

std::array<bool, 9> realized_offsets(const DigitSet& d) {
    const int n = d.n();
    std::set<Cell> differences;
    for (const Cell& a : d.digits()) {
        for (const Cell& b : d.digits()) {
            differences.insert(a - b);
        }
    }
    std::array<bool, 9> base{};
    for (FaceVector alpha : nonzero_faces()) {
        base[alpha.index()] = differences.count(alpha.cell()) != 0;
    }
    // alpha is realized at level k iff it is realized at level 1, or
    // alpha - n*gamma ∈ D - D for some gamma realized at level k-1.
    std::array<bool, 9> current = base;
    for (bool changed = true; changed;) {
        changed = false;
        std::array<bool, 9> next = base;
        for (FaceVector alpha : nonzero_faces()) {
            for (FaceVector gamma : nonzero_faces()) {
                if (current[gamma.index()] && differences.count(alpha.cell() - static_cast<std::int64_t>(n) * gamma.cell())) {
                    next[alpha.index()] = true;
                }
            }
        }
        for (int i = 0; i < 9; ++i) {
            next[i] = next[i] || current[i];
            changed = changed || next[i] != current[i];
        }
        current = next;
    }
    return current;
}

std::vector<FaceVector> active_faces(const FaceTable& table, const std::array<bool, 9>& realized) {
    std::vector<FaceVector> out;
    for (FaceVector alpha : nonzero_faces()) {
        if (realized[alpha.index()] && !table[alpha].empty()) {
            out.push_back(alpha);
        }
    }
    return out;
}

bool one_point(const FaceTable& table, const std::array<bool, 9>& realized) {
    for (FaceVector alpha : nonzero_faces()) {
        const auto& f = table[alpha];
        if (realized[alpha.index()] && !(f.empty() || (f.kind == IntersectionKind::Finite && f.points.size() == 1))) {
            return false;
        }
    }
    return true;
}

bool finite_intersection(const FaceTable& table, const std::array<bool, 9>& realized) {
    for (FaceVector alpha : nonzero_faces()) {
        if (realized[alpha.index()] && !table[alpha].finite()) {
            return false;
        }
    }
    return true;
}

std::optional<std::size_t> max_piece_intersection(const FaceTable& table, const std::array<bool, 9>& realized) {
    std::size_t best = 0;
    for (FaceVector alpha : nonzero_faces()) {
        if (!realized[alpha.index()]) {
            continue;
        }
        if (!table[alpha].finite()) {
            return std::nullopt;
        }
        best = std::max(best, table[alpha].points.size());
    }
    return best;
}

std::vector<Point> piece_intersection(const DigitSet& d, const FaceTable& table, Cell a, Cell b) {
    Cell diff = b - a;
    if (std::abs(diff.x) > 1 || std::abs(diff.y) > 1 || (diff.x == 0 && diff.y == 0)) {
        return {};
    }
    const auto& f = table[FaceVector{static_cast<int>(diff.x), static_cast<int>(diff.y)}];
    if (!f.finite()) {
        throw Error(ErrorKind::Unbounded, "pieces (" + a.str() + ") and (" + b.str() + ") meet in an infinite set");
    }
    std::vector<Point> out;
    for (const Point& p : f.points) {
        out.push_back(apply_map(d.n(), a, p));
    }
    return out;
}

}  // namespace fsq
