#include <random>
#include <unordered_set>

#include "doctest.h"
#include "fsq/errors.hpp"
#include "fsq/intersections.hpp"
#include "test_support.hpp"

using namespace fsq;
using namespace fsq::testing;

TEST_CASE("Vicsek face intersections") {
    DigitSet v = vicsek();
    FaceTable t = face_table(v);
    CHECK(t[{1, 0}].points == std::vector<Point>{pt(1, 1, 1, 2)});
    CHECK(t[{-1, 0}].points == std::vector<Point>{pt(0, 1, 1, 2)});
    CHECK(t[{0, 1}].points == std::vector<Point>{pt(1, 2, 1, 1)});
    CHECK(t[{0, -1}].points == std::vector<Point>{pt(1, 2, 0, 1)});
    CHECK(t[{1, 1}].empty());
    CHECK(t[{1, -1}].empty());
    auto r = realized_offsets(v);
    for (FaceVector a : nonzero_faces()) {
        CHECK(r[a.index()]);
    }
    CHECK(active_faces(t, r).size() == 4);
    CHECK(one_point(t, r));
    CHECK(max_piece_intersection(t, r) == std::optional<std::size_t>(1));
}

TEST_CASE("diagonal cross: unrealized uncountable sides") {
    DigitSet c = diagonal_cross();
    FaceTable t = face_table(c);
    CHECK(t[{1, 0}].kind == IntersectionKind::Uncountable);
    CHECK(t[{1, 0}].generator_digits == std::vector<Cell>{{2, 0}, {2, 2}});
    CHECK(t[{1, 1}].points == std::vector<Point>{pt(1, 1, 1, 1)});
    CHECK(t[{1, -1}].points == std::vector<Point>{pt(1, 1, 0, 1)});
    CHECK(t[{-1, 1}].points == std::vector<Point>{pt(0, 1, 1, 1)});
    auto r = realized_offsets(c);
    CHECK_FALSE(r[FaceVector{1, 0}.index()]);
    CHECK_FALSE(r[FaceVector{0, 1}.index()]);
    CHECK(r[FaceVector{1, 1}.index()]);
    CHECK(r[FaceVector{1, -1}.index()]);
    CHECK(one_point(t, r));
    CHECK(finite_intersection(t, r));
}

TEST_CASE("Sierpinski triangle sides") {
    DigitSet s = ds("2: 0,0 1,0 0,1");
    FaceTable t = face_table(s);
    CHECK(t[{1, 0}].points == std::vector<Point>{pt(1, 1, 0, 1)});
    CHECK(t[{-1, 1}].points == std::vector<Point>{pt(0, 1, 1, 1)});
    auto pieces = piece_intersection(s, t, {1, 0}, {0, 1});
    CHECK(pieces == std::vector<Point>{pt(1, 2, 1, 2)});
}

TEST_CASE("countable side intersection") {
    // right column rows 0,1; left column rows 0,2: one common row plus a
    // junction through the bottom-right/top-left corners
    DigitSet d = ds("3: 0,0 2,0 2,1 0,2");
    FaceTable t = face_table(d);
    const auto& f = t[{1, 0}];
    CHECK(f.kind == IntersectionKind::CountablyInfinite);
    CHECK(f.fixed_point == pt(1, 1, 0, 1));
    CHECK(f.generator_digit == Cell{2, 0});
    CHECK(f.seeds == std::vector<Point>{pt(1, 1, 1, 3)});
    CHECK(f.expand(3, 3) == std::vector<Point>{pt(1, 1, 0, 1), pt(1, 1, 1, 3), pt(1, 1, 1, 9)});
    CHECK_THROWS_AS(face_intersection(d, {0, 0}), Error);
}

namespace {

std::vector<std::int64_t> column(const DigitSet& d, bool x_fixed, std::int64_t value) {
    std::vector<std::int64_t> out;
    for (const Cell& c : d.digits()) {
        if ((x_fixed ? c.x : c.y) == value) {
            out.push_back(x_fixed ? c.y : c.x);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("side intersections: translation identity, segment form, overlap clumps") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + trial % 3;
        DigitSet d = random_digit_set(rng, n, 12);
        FaceTable t = face_table(d);
        CAPTURE(d.str());
        for (FaceVector a : nonzero_faces()) {
            const auto& f = t[a];
            const auto& g = t[-a];
            CHECK(f.kind == g.kind);
            if (f.kind == IntersectionKind::Finite) {
                std::vector<Point> shifted;
                for (const Point& p : f.points) {
                    shifted.push_back(p - a.cell().point());
                }
                std::sort(shifted.begin(), shifted.end());
                CHECK(shifted == g.points);
            }
        }
        for (bool horizontal : {true, false}) {
            FaceVector a = horizontal ? FaceVector{1, 0} : FaceVector{0, 1};
            auto far = column(d, horizontal, n - 1);
            auto near = column(d, horizontal, 0);
            const auto& f = t[a];
            if (far.empty() || near.empty()) {
                CHECK(f.empty());
                continue;
            }
            std::vector<int> fi(far.begin(), far.end()), ni(near.begin(), near.end());
            auto seg = segment_intersect({n, fi}, {n, ni});
            CHECK(seg.kind == f.kind);

            const int level = 6;
            std::int64_t scale = 1;
            for (int i = 0; i < level; ++i) {
                scale *= n;
            }
            auto cs = overlap_clumps(refine_1d(n, far, level), refine_1d(n, near, level));
            auto coord = [&](const Point& p) { return (horizontal ? p.y : p.x) * Rational(scale); };
            for (const Point& p : f.expand(n, 10)) {
                CHECK((horizontal ? p.x : p.y) == Rational(1));
                bool found = std::any_of(cs.begin(), cs.end(), [&](auto c) {
                    return Rational(c.first) <= coord(p) && coord(p) <= Rational(c.second);
                });
                CHECK(found);
            }
            if (f.kind == IntersectionKind::Finite) {
                CHECK(surviving_clumps(n, far, near, level, 3).size() == f.points.size());
            }
        }
    }
}

TEST_CASE("realized offsets equal offsets seen in refinements") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        DigitSet d = random_digit_set(rng, 3 + trial % 2, 6);
        auto r = realized_offsets(d);
        std::array<bool, 9> seen{};
        for (int k = 1; k <= 5; ++k) {
            auto cells = refine(d, k);
            std::unordered_set<Cell, CellHash> set(cells.begin(), cells.end());
            for (const Cell& c : cells) {
                for (FaceVector a : nonzero_faces()) {
                    if (set.count(c + a.cell())) {
                        seen[a.index()] = true;
                    }
                }
            }
        }
        CAPTURE(d.str());
        CHECK(seen == r);
    }
}
