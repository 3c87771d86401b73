#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fsq/census.hpp"
#include "test_support.hpp"

using namespace fsq;
using namespace fsq::testing;

namespace {

// Sorted row-major indices: the reference ordering for canonical forms.
std::vector<int> indices(const DigitSet& d) {
    std::vector<int> out;
    for (const Cell& c : d.digits()) {
        out.push_back(static_cast<int>(c.y * d.n() + c.x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Eight images by explicit coordinate formulas.
std::vector<DigitSet> images_by_formula(const DigitSet& d) {
    const std::int64_t k = d.n() - 1;
    std::vector<DigitSet> out;
    for (int g = 0; g < 8; ++g) {
        std::vector<Cell> cells;
        for (const Cell& c : d.digits()) {
            std::int64_t x = c.x, y = c.y;
            switch (g) {
                case 0: cells.push_back({x, y}); break;
                case 1: cells.push_back({k - y, x}); break;
                case 2: cells.push_back({k - x, k - y}); break;
                case 3: cells.push_back({y, k - x}); break;
                case 4: cells.push_back({k - x, y}); break;
                case 5: cells.push_back({k - y, k - x}); break;
                case 6: cells.push_back({x, k - y}); break;
                case 7: cells.push_back({y, x}); break;
            }
        }
        out.emplace_back(d.n(), cells);
    }
    return out;
}

}  // namespace

TEST_CASE("dihedral images match coordinate formulas") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + static_cast<int>(rng() % 4);
        DigitSet d = random_digit_set(rng, n, n * n - 1);
        auto want = images_by_formula(d);
        std::set<std::uint64_t> a, b;
        for (int g = 0; g < 8; ++g) {
            a.insert(dihedral_image(n, d.mask(), g));
            b.insert(want[g].mask());
            CHECK(dihedral_image(d, g).mask() == dihedral_image(n, d.mask(), g));
        }
        CHECK(a == b);
    }
}

TEST_CASE("canonical form is the lexicographic minimum of index lists") {
    CHECK(canonicalize(vicsek()) == vicsek());
    CHECK(orbit_size(3, vicsek().mask()) == 1);
    DigitSet pair = ds("2: 0,0 1,0");
    CHECK(orbit_size(2, pair.mask()) == 4);
    CHECK(canonicalize(ds("2: 1,0 1,1")) == pair);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const int n = 2 + static_cast<int>(rng() % 4);
        DigitSet d = random_digit_set(rng, n, n * n - 1);
        std::vector<int> best;
        std::set<std::vector<int>> orbit;
        for (const auto& img : images_by_formula(d)) {
            auto idx = indices(img);
            orbit.insert(idx);
            if (best.empty() || idx < best) {
                best = idx;
            }
        }
        CHECK(indices(canonicalize(d)) == best);
        CHECK(orbit_size(n, d.mask()) == static_cast<int>(orbit.size()));
        CHECK(8 % orbit.size() == 0);
    }
}

TEST_CASE("mask order agrees with index-list order") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t a = rng() & 0x1FF;
        const std::uint64_t b = rng() & 0x1FF;
        auto list = [](std::uint64_t m) {
            std::vector<int> v;
            for (int k = 0; k < 9; ++k) {
                if (m >> k & 1) {
                    v.push_back(k);
                }
            }
            return v;
        };
        CHECK(mask_precedes(a, b) == (list(a) < list(b)));
    }
}

TEST_CASE("n=2 census: ten sets, six segment dendrites") {
    CensusOptions o;
    o.n = 2;
    auto r = run_census(o);
    CHECK(r.subsets == 10);
    CHECK(r.records.size() == 10);
    CHECK(r.clean());
    int connected = 0, dendrites = 0;
    for (const auto& rec : r.records) {
        connected += rec.connected;
        if (rec.dendrite) {
            ++dendrites;
            CHECK(rec.boundary_type == BoundaryType::Segment);
            CHECK(rec.m == 2);
        }
    }
    CHECK(connected == 10);
    CHECK(dendrites == 6);
    auto s = census_summary(r);
    CHECK(s["dendrites"] == 6);
    CHECK(s["connected"] == 10);
}

TEST_CASE("n=3 census: 501 rows, consistent fields, witnesses present") {
    CensusOptions o;
    o.n = 3;
    auto r = run_census(o);
    CHECK(r.subsets == 501);  // sum of C(9,m) for m = 2..8
    CHECK(r.records.size() == 501);
    CHECK(r.clean());
    CHECK(r.inconclusive.empty());
    bool vicsek_seen = false, cross_seen = false;
    std::size_t orbit_total = 0;
    for (const auto& rec : r.records) {
        CHECK((!rec.dendrite || rec.connected));
        CHECK(rec.boundary_type.has_value() == rec.dendrite);
        CHECK(canonical_mask(3, rec.digits) == rec.canonical);
        vicsek_seen |= rec.digits == vicsek().mask() && rec.boundary_type == BoundaryType::A;
        cross_seen |= rec.digits == diagonal_cross().mask() && rec.boundary_type == BoundaryType::B;
    }
    for (const auto& rec : r.classes_analysed) {
        orbit_total += static_cast<std::size_t>(rec.orbit);
    }
    CHECK(orbit_total == 501);
    CHECK(vicsek_seen);
    CHECK(cross_seen);
    // rows are sorted by canonical form
    for (std::size_t i = 1; i < r.records.size(); ++i) {
        CHECK_FALSE(mask_precedes(r.records[i].canonical, r.records[i - 1].canonical));
    }
}

TEST_CASE("census output does not depend on the job count") {
    CensusOptions o;
    o.n = 3;
    std::ostringstream one, four;
    write_csv(one, run_census(o));
    o.jobs = 4;
    write_csv(four, run_census(o));
    CHECK(one.str() == four.str());
    CHECK(one.str().rfind("n,m,canonical,connected,dendrite,btype,boundary_size,tree_type,max_order,max_fint,quadfree,orbit,digits\n", 0) == 0);
}

TEST_CASE("property: classification is invariant across each orbit") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 60; ++i) {
        const int n = 3 + static_cast<int>(rng() % 2);
        DigitSet d = random_digit_set(rng, n, 2 * n);
        AnalysisOptions opt;
        opt.order_level = 1;
        opt.tree_k_max = 4;
        Analysis base = analyze(d, opt);
        Analysis img = analyze(dihedral_image(d, static_cast<int>(rng() % 8)), opt);
        CAPTURE(d.str());
        CHECK(base.dendrite.connected == img.dendrite.connected);
        CHECK(base.dendrite.is_dendrite() == img.dendrite.is_dendrite());
        CHECK(base.largest_finite_face == img.largest_finite_face);
        CHECK(base.boundary.size() == img.boundary.size());
        CHECK(base.boundary_type == img.boundary_type);
    }
}

TEST_CASE("n=5 needs the opt-in flag") {
    CensusOptions o;
    o.n = 5;
    CHECK_THROWS_AS(run_census(o), Error);
}
