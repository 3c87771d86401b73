#include "fsq/segments.hpp"

#include <algorithm>

#include "fsq/errors.hpp"

namespace fsq {

SegmentDigitSet::SegmentDigitSet(int n, std::vector<int> digits) : n_(n), digits_(std::move(digits)) {
    if (n_ < 2) {
        throw Error(ErrorKind::InvalidArgument, "segment order must be at least 2");
    }
    std::sort(digits_.begin(), digits_.end());
    digits_.erase(std::unique(digits_.begin(), digits_.end()), digits_.end());
    if (digits_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "segment digit set is empty");
    }
    if (digits_.front() < 0 || digits_.back() >= n_) {
        throw Error(ErrorKind::OutOfRange, "segment digit outside {0.." + std::to_string(n_ - 1) + "}");
    }
}

bool SegmentDigitSet::contains(int d) const { return std::binary_search(digits_.begin(), digits_.end(), d); }

SegmentDigitSet SegmentDigitSet::reflected() const {
    std::vector<int> r;
    r.reserve(digits_.size());
    for (int d : digits_) {
        r.push_back(n_ - 1 - d);
    }
    return {n_, std::move(r)};
}

const char* to_string(IntersectionKind kind) {
    switch (kind) {
        case IntersectionKind::Empty: return "Empty";
        case IntersectionKind::Finite: return "Finite";
        case IntersectionKind::CountablyInfinite: return "CountablyInfinite";
        case IntersectionKind::Uncountable: return "Uncountable";
    }
    return "?";
}

std::vector<Rational> SegmentIntersection::expand(int n, std::size_t count) const {
    if (kind == IntersectionKind::Finite) {
        return {points.begin(), points.begin() + static_cast<std::ptrdiff_t>(std::min(count, points.size()))};
    }
    if (kind != IntersectionKind::CountablyInfinite || count == 0) {
        return {};
    }
    std::vector<Rational> out{fixed_point};
    std::vector<Rational> layer = seeds;
    while (out.size() < count) {
        for (Rational& s : layer) {
            if (out.size() == count) {
                break;
            }
            out.push_back(s);
            s = (s + Rational(generator_digit)) / Rational(n);
        }
    }
    return out;
}

std::string SegmentIntersection::str() const {
    std::string s = to_string(kind);
    auto join = [](const std::vector<Rational>& v) {
        std::string r;
        for (std::size_t i = 0; i < v.size(); ++i) {
            r += (i ? ", " : "") + v[i].str();
        }
        return r;
    };
    switch (kind) {
        case IntersectionKind::Empty: break;
        case IntersectionKind::Finite: s += ": " + join(points); break;
        case IntersectionKind::CountablyInfinite:
            s += ": fixed point " + fixed_point.str() + ", seeds " + join(seeds) + ", map digit " +
                 std::to_string(generator_digit);
            break;
        case IntersectionKind::Uncountable: {
            s += ": generated by digits";
            for (int d : generator_digits) {
                s += " " + std::to_string(d);
            }
            break;
        }
    }
    return s;
}

SegmentIntersection segment_intersect(const SegmentDigitSet& d1, const SegmentDigitSet& d2) {
    if (d1.n() != d2.n()) {
        throw Error(ErrorKind::InvalidArgument, "segment digit sets have different orders");
    }
    const int n = d1.n();
    // G_a = D1 ∩ (D2 - a)
    auto g = [&](int a) {
        std::vector<int> out;
        for (int d : d1.digits()) {
            if (d2.contains(d + a)) {
                out.push_back(d);
            }
        }
        return out;
    };
    const auto g0 = g(0);
    const auto g_plus = g(1);
    const auto g_minus = g(-1);
    const bool f_plus = d1.contains(n - 1) && d2.contains(0);   // F_1 = {1}
    const bool f_minus = d1.contains(0) && d2.contains(n - 1);  // F_{-1} = {0}

    std::vector<Rational> corner;
    if (f_plus) {
        for (int d : g_plus) {
            corner.emplace_back(BigInt(1 + d), BigInt(n));
        }
    }
    if (f_minus) {
        for (int d : g_minus) {
            corner.emplace_back(BigInt(d), BigInt(n));
        }
    }
    std::sort(corner.begin(), corner.end());
    corner.erase(std::unique(corner.begin(), corner.end()), corner.end());

    SegmentIntersection r;
    if (g0.size() >= 2) {
        r.kind = IntersectionKind::Uncountable;
        r.generator_digits = g0;
    } else if (g0.size() == 1) {
        Rational fixed(BigInt(g0.front()), BigInt(n - 1));
        if (corner.empty()) {
            r.kind = IntersectionKind::Finite;
            r.points = {fixed};
        } else {
            r.kind = IntersectionKind::CountablyInfinite;
            r.fixed_point = fixed;
            r.generator_digit = g0.front();
            r.seeds = corner;
        }
    } else {
        r.kind = corner.empty() ? IntersectionKind::Empty : IntersectionKind::Finite;
        r.points = corner;
    }
    return r;
}

std::vector<Rational> junction_points(const SegmentDigitSet& d1, const SegmentDigitSet& d2) {
    if (d1.n() != d2.n()) {
        throw Error(ErrorKind::InvalidArgument, "segment digit sets have different orders");
    }
    const int n = d1.n();
    if (!d1.contains(0) || !d2.contains(n - 1)) {
        throw Error(ErrorKind::InvalidArgument, "junction points need 0 in D1 and n-1 in D2");
    }
    std::vector<Rational> out;
    for (int k : d1.digits()) {
        if (d2.contains(k - 1)) {
            out.emplace_back(BigInt(k), BigInt(n));
        }
    }
    return out;
}

int finite_bound(int n) { return (n - 2) / 2; }

int relaxed_finite_bound(int n) { return std::max(1, finite_bound(n)); }

}  // namespace fsq
