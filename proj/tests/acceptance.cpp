// Acceptance run: one PASS/FAIL line per criterion. Exit status 1 if any fails.
// Usage: acceptance <path-to-fsq-cli> <scratch-dir>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "fsq/analysis.hpp"
#include "fsq/census.hpp"
#include "fsq/render.hpp"
#include "fsq/segments.hpp"
#include "test_support.hpp"

using namespace fsq;
using namespace fsq::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt_seconds(double s) {
    std::ostringstream o;
    o.precision(3);
    o << s << " s";
    return o.str();
}

// All digit sets of order n with 1 < m < n^2.
std::vector<DigitSet> all_digit_sets(int n) {
    std::vector<DigitSet> out;
    const int cells = n * n;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cells); ++mask) {
        const int m = std::popcount(mask);
        if (m > 1 && m < cells) {
            out.push_back(DigitSet::from_mask(n, mask));
        }
    }
    return out;
}

// ---- independent oracles -------------------------------------------------

// alpha in K - K, from the greatest set of offsets closed under beta -> n beta - e, e in D - D.
std::array<bool, 9> difference_set_offsets(const DigitSet& d) {
    std::set<std::pair<std::int64_t, std::int64_t>> diffs;
    for (const Cell& a : d.digits()) {
        for (const Cell& b : d.digits()) {
            diffs.insert({a.x - b.x, a.y - b.y});
        }
    }
    std::array<bool, 9> alive;
    alive.fill(true);
    for (bool changed = true; changed;) {
        changed = false;
        for (int i = 0; i < 9; ++i) {
            if (!alive[i]) {
                continue;
            }
            const int bx = i % 3 - 1, by = i / 3 - 1;
            bool next = false;
            for (auto [ex, ey] : diffs) {
                const std::int64_t x = d.n() * bx - ex, y = d.n() * by - ey;
                if (std::abs(x) <= 1 && std::abs(y) <= 1 && alive[(y + 1) * 3 + (x + 1)]) {
                    next = true;
                    break;
                }
            }
            if (!next) {
                alive[i] = false;
                changed = true;
            }
        }
    }
    return alive;
}

// Level-k raster as a dense bitmap: cell (x, y) present iff every base-n digit pair is in D.
std::vector<char> raster(const DigitSet& d, int k, std::int64_t& side) {
    side = 1;
    for (int i = 0; i < k; ++i) {
        side *= d.n();
    }
    std::vector<char> in_d(d.n() * d.n(), 0);
    for (const Cell& c : d.digits()) {
        in_d[c.y * d.n() + c.x] = 1;
    }
    std::vector<char> bits(static_cast<std::size_t>(side * side), 0);
    for (std::int64_t y = 0; y < side; ++y) {
        for (std::int64_t x = 0; x < side; ++x) {
            std::int64_t a = x, b = y;
            bool ok = true;
            for (int i = 0; i < k && ok; ++i) {
                ok = in_d[(b % d.n()) * d.n() + a % d.n()];
                a /= d.n();
                b /= d.n();
            }
            bits[y * side + x] = ok;
        }
    }
    return bits;
}

bool cell_present(const DigitSet& d, int k, std::int64_t x, std::int64_t y) {
    for (int i = 0; i < k; ++i) {
        if (!d.contains({x % d.n(), y % d.n()})) {
            return false;
        }
        x /= d.n();
        y /= d.n();
    }
    return true;
}

// Components of the level-k raster where neighbouring cells join when
// K meets its translate by their offset.
int raster_components(const DigitSet& d, int k) {
    std::int64_t side = 0;
    auto bits = raster(d, k, side);
    auto offsets = difference_set_offsets(d);
    std::vector<int> label(bits.size(), -1);
    int components = 0;
    std::vector<std::int64_t> stack;
    for (std::int64_t start = 0; start < static_cast<std::int64_t>(bits.size()); ++start) {
        if (!bits[start] || label[start] >= 0) {
            continue;
        }
        label[start] = components;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::int64_t v = stack.back();
            stack.pop_back();
            const std::int64_t x = v % side, y = v / side;
            for (int i = 0; i < 9; ++i) {
                const int ax = i % 3 - 1, ay = i / 3 - 1;
                if ((ax == 0 && ay == 0) || !offsets[i]) {
                    continue;
                }
                const std::int64_t nx = x + ax, ny = y + ay;
                if (nx < 0 || ny < 0 || nx >= side || ny >= side) {
                    continue;
                }
                const std::int64_t u = ny * side + nx;
                if (bits[u] && label[u] < 0) {
                    label[u] = components;
                    stack.push_back(u);
                }
            }
        }
        ++components;
    }
    return components;
}

// One-dimensional digit sets of the two faces that meet across side alpha.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> side_digits(const DigitSet& d, FaceVector alpha) {
    std::vector<std::int64_t> near, far;
    const int last = d.n() - 1;
    for (const Cell& c : d.digits()) {
        const bool vertical = alpha.a != 0;
        const std::int64_t along = vertical ? c.y : c.x;
        const std::int64_t across = vertical ? c.x : c.y;
        const int sign = vertical ? alpha.a : alpha.b;
        if (across == (sign > 0 ? last : 0)) {
            near.push_back(along);
        }
        if (across == (sign > 0 ? 0 : last)) {
            far.push_back(along);
        }
    }
    return {near, far};
}

// ---- criteria -------------------------------------------------------------

Outcome criterion_vicsek() {
    Outcome o;
    const auto start = Clock::now();
    DigitSet v = vicsek();
    Analysis a = analyze(v);
    o.require(a.dendrite.is_dendrite(), "not a dendrite");
    o.require(a.boundary_type == BoundaryType::A, std::string("type ") + to_string(a.boundary_type));
    std::vector<Point> want{pt(0, 1, 1, 2), pt(1, 1, 1, 2), pt(1, 2, 0, 1), pt(1, 2, 1, 1)};
    std::sort(want.begin(), want.end());
    o.require(a.boundary == want, "boundary points differ");
    o.require(a.main_tree && a.main_tree->stabilized && a.main_tree->shape.type_id == 3, "main tree type");
    auto centre = point_order(v, a.faces, a.boundary, pt(1, 2, 1, 2));
    o.require(centre.order == 4, "centre order " + std::to_string(centre.order));
    o.require(a.violations.empty(), "violations reported");
    const double elapsed = seconds_since(start);
    o.require(elapsed < 1.0, "took " + fmt_seconds(elapsed));
    // raster oracle: drop the 3x3 block of level-6 cells around the centre; four arms remain
    std::int64_t side = 0;
    auto bits = raster(v, 6, side);
    const std::int64_t mid = side / 2;
    for (std::int64_t y = mid - 1; y <= mid + 1; ++y) {
        for (std::int64_t x = mid - 1; x <= mid + 1; ++x) {
            bits[y * side + x] = 0;
        }
    }
    std::vector<char> seen(bits.size(), 0);
    int arms = 0;
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(bits.size()); ++s) {
        if (!bits[s] || seen[s]) {
            continue;
        }
        ++arms;
        std::vector<std::int64_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            auto q = stack.back();
            stack.pop_back();
            const std::int64_t x = q % side, y = q / side;
            for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
                const std::int64_t nx = x + dx, ny = y + dy;
                if (nx >= 0 && ny >= 0 && nx < side && ny < side && bits[ny * side + nx] && !seen[ny * side + nx]) {
                    seen[ny * side + nx] = 1;
                    stack.push_back(ny * side + nx);
                }
            }
        }
    }
    o.require(arms == 4, "raster arms around the centre: " + std::to_string(arms));
    if (o.pass) {
        o.detail = "A, #dK=4 midpoints, tree type 3, centre order 4 (raster: 4 arms), " + fmt_seconds(elapsed);
    }
    return o;
}

Outcome criterion_cross() {
    Outcome o;
    const auto start = Clock::now();
    Analysis a = analyze(diagonal_cross());
    o.require(a.dendrite.is_dendrite(), "not a dendrite");
    o.require(a.boundary_type == BoundaryType::B, std::string("type ") + to_string(a.boundary_type));
    o.require(a.corner_orders.size() == 4, std::to_string(a.corner_orders.size()) + " corners");
    for (const auto& [p, ord] : a.corner_orders) {
        o.require(ord == 1, "corner (" + p.str() + ") order " + std::to_string(ord));
    }
    o.require(a.main_tree && a.main_tree->stabilized && a.main_tree->shape.type_id == 3, "main tree type");
    o.require(a.violations.empty(), "violations reported");
    const double elapsed = seconds_since(start);
    o.require(elapsed < 1.0, "took " + fmt_seconds(elapsed));
    if (o.pass) {
        o.detail = "B, four corners of order 1, tree type 3, " + fmt_seconds(elapsed);
    }
    return o;
}

Outcome criterion_n2() {
    Outcome o;
    const auto start = Clock::now();
    CensusOptions options;
    options.n = 2;
    CensusResult r = run_census(options);
    int connected = 0, dendrites = 0, segments = 0, six_cycles = 0;
    for (const auto& rec : r.records) {
        connected += rec.connected;
        dendrites += rec.dendrite;
        segments += rec.boundary_type == BoundaryType::Segment;
        if (rec.m == 3) {
            Analysis a = analyze(DigitSet::from_mask(2, rec.digits));
            six_cycles += !a.dendrite.is_dendrite() && a.dendrite.failed == DendriteGate::Tree &&
                          a.dendrite.cycle_witness.size() == 6;
        }
    }
    const double elapsed = seconds_since(start);
    o.require(r.records.size() == 10, std::to_string(r.records.size()) + " sets");
    o.require(connected == 10, std::to_string(connected) + " connected");
    o.require(dendrites == 6 && segments == 6, std::to_string(dendrites) + " dendrites");
    o.require(six_cycles == 4, std::to_string(six_cycles) + " six-cycle witnesses");
    o.require(elapsed < 1.0, "took " + fmt_seconds(elapsed));
    if (o.pass) {
        o.detail = "10 sets, 10 connected, 6 Segment dendrites, 4 six-cycles, " + fmt_seconds(elapsed);
    }
    return o;
}

Outcome criterion_census(int n, std::size_t expected, double limit) {
    Outcome o;
    const auto start = Clock::now();
    CensusOptions options;
    options.n = n;
    options.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    CensusResult r = run_census(options);
    const double elapsed = seconds_since(start);
    o.require(r.subsets == expected, std::to_string(r.subsets) + " sets");
    for (const auto& v : r.violations) {
        o.require(false, census_digits(n, v.canonical) + " " + v.violation.code);
    }
    o.require(r.inconclusive.empty(), std::to_string(r.inconclusive.size()) + " inconclusive");
    o.require(elapsed < limit, "took " + fmt_seconds(elapsed));
    std::size_t dendrites = 0;
    for (const auto& rec : r.classes_analysed) {
        dendrites += rec.dendrite ? rec.orbit : 0;
    }
    if (o.pass) {
        o.detail = "n=" + std::to_string(n) + ": " + std::to_string(r.subsets) + " sets, " + std::to_string(dendrites) +
                   " dendrites, 0 violations, " + fmt_seconds(elapsed);
    }
    return o;
}

Outcome criterion_segment() {
    Outcome o;
    auto r = segment_intersect(SegmentDigitSet(6, {0, 2, 4}), SegmentDigitSet(6, {1, 3, 5}));
    o.require(r.kind == IntersectionKind::Finite, std::string("kind ") + to_string(r.kind));
    o.require(r.points == std::vector<Rational>{q(1, 3), q(2, 3)}, "points " + r.str());
    o.require(static_cast<int>(r.points.size()) == finite_bound(6), "bound (6-2)/2 not attained");
    if (o.pass) {
        o.detail = r.str();
    }
    return o;
}

Outcome criterion_oracles() {
    Outcome o;
    std::mt19937_64 rng(20240611);
    int connectivity = 0, finite_faces = 0, dihedral = 0;
    for (int i = 0; i < 200; ++i) {
        const int n = 3 + i % 3;
        DigitSet d = random_digit_set(rng, n, n * n - 1);
        FaceTable table = face_table(d);
        // (a) connectivity
        const bool by_graph = ordinary_graph_connected(d, table);
        const bool raster_connected = raster_components(d, 5) == 1;
        if (by_graph != raster_connected) {
            o.require(false, "connectivity " + d.str());
        } else {
            ++connectivity;
        }
        // (b) finite intersections
        for (FaceVector alpha : nonzero_faces()) {
            const auto& f = table[alpha];
            if (f.kind != IntersectionKind::Finite) {
                continue;
            }
            bool ok = true;
            if (alpha.is_side()) {
                auto [near, far] = side_digits(d, alpha);
                auto surviving = surviving_clumps(n, near, far, 6, 3);
                ok = surviving.size() == f.points.size();
                std::int64_t scale = 1;
                for (int k = 0; k < 6; ++k) {
                    scale *= n;
                }
                for (const Point& p : f.points) {
                    const Rational along = alpha.a != 0 ? p.y : p.x;
                    const Rational pos = along * Rational(scale);
                    ok = ok && std::any_of(surviving.begin(), surviving.end(), [&](auto c) {
                             return Rational(c.first) <= pos && pos <= Rational(c.second);
                         });
                }
            } else {
                std::int64_t side = 1;
                for (int k = 0; k < 6; ++k) {
                    side *= n;
                }
                auto corner = [&](int sx, int sy) {
                    return cell_present(d, 6, sx > 0 ? side - 1 : 0, sy > 0 ? side - 1 : 0);
                };
                const bool present = corner(alpha.a, alpha.b) && corner(-alpha.a, -alpha.b);
                ok = present == !f.points.empty() && f.points.size() <= 1;
            }
            if (ok) {
                ++finite_faces;
            } else {
                o.require(false, "F" + alpha.str() + " of " + d.str());
            }
        }
        // (c) dihedral invariance of the dendrite flag
        const bool flag = dendrite_check(d, table, realized_offsets(d)).is_dendrite();
        bool same = true;
        for (int g = 1; g < 8; ++g) {
            DigitSet img = dihedral_image(d, g);
            FaceTable t = face_table(img);
            same = same && dendrite_check(img, t, realized_offsets(img)).is_dendrite() == flag;
        }
        if (same) {
            ++dihedral;
        } else {
            o.require(false, "dihedral " + d.str());
        }
    }
    if (o.pass) {
        o.detail = "200 sets: connectivity " + std::to_string(connectivity) + "/200, " + std::to_string(finite_faces) +
                   " finite faces match level-6 clumps, dendrite flag invariant " + std::to_string(dihedral) + "/200";
    }
    return o;
}

Outcome criterion_levels() {
    Outcome o;
    int dendrites = 0;
    int latest = 0;
    for (const DigitSet& d : all_digit_sets(3)) {
        FaceTable table = face_table(d);
        auto realized = realized_offsets(d);
        if (!dendrite_check(d, table, realized).is_dendrite()) {
            continue;
        }
        ++dendrites;
        for (int k = 1; k <= 3; ++k) {
            o.require(level_graph(d, table, k).is_tree(), "level " + std::to_string(k) + " not a tree: " + d.str());
        }
        auto boundary = boundary_points(table, active_faces(table, realized));
        auto r = classify_main_tree(d, table, boundary, 1, 5);
        o.require(r.stabilized && r.stabilized_at <= 4, "no stable shape by level 4: " + d.str());
        latest = std::max(latest, r.stabilized_at);
    }
    o.require(dendrites > 0, "no dendrites");
    if (o.pass) {
        o.detail = std::to_string(dendrites) + " dendrites, trees at k=1..3, shapes stable from level <= " +
                   std::to_string(latest);
    }
    return o;
}

Outcome criterion_orders() {
    Outcome o;
    int points = 0;
    for (const DigitSet& d : all_digit_sets(3)) {
        FaceTable table = face_table(d);
        auto realized = realized_offsets(d);
        if (!dendrite_check(d, table, realized).is_dendrite()) {
            continue;
        }
        auto boundary = boundary_points(table, active_faces(table, realized));
        BipartiteGraph g = level_graph(d, table, 2);
        OrderEngine engine(d, table, boundary, 3 * base_scale(3) * 9);
        for (const LatticePoint& b : g.blacks) {
            const Point p = from_lattice(b, g.scale);
            // branch counting: explicit level-k counts until two consecutive levels agree
            int previous = -1, counted = -1;
            for (int k = 3; k <= 7; ++k) {
                const int c = branch_count(d, table, p, k);
                if (c == previous) {
                    counted = c;
                    break;
                }
                previous = c;
            }
            const LatticePoint q = *to_lattice(p, engine.scale());
            const int recursion = order_by_pieces(engine, q);
            ++points;
            if (counted != recursion) {
                o.require(false, d.str() + " at (" + p.str() + "): counted " + std::to_string(counted) +
                                     ", recursion " + std::to_string(recursion));
            }
        }
    }
    if (o.pass) {
        o.detail = std::to_string(points) + " black vertices of level <= 2 agree";
    }
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

Outcome criterion_determinism(const std::string& cli, const std::filesystem::path& scratch) {
    Outcome o;
    auto run = [&](const std::string& args) {
        const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const auto one = scratch / "jobs1";
    const auto eight = scratch / "jobs8";
    std::filesystem::create_directories(one);
    std::filesystem::create_directories(eight);
    o.require(run("census -n 3 --jobs 1 --quiet --out \"" + one.string() + "\"") == 0, "census --jobs 1 failed");
    o.require(run("census -n 3 --jobs 8 --quiet --out \"" + eight.string() + "\"") == 0, "census --jobs 8 failed");
    const std::string a = slurp(one / "census_n3.csv");
    const std::string b = slurp(eight / "census_n3.csv");
    o.require(!a.empty() && a == b, "CSV differs between job counts");
    o.require(slurp(one / "census_n3.json") == slurp(eight / "census_n3.json"), "summary differs");

    const std::string vicsek_arg = "\"3: 1,0 0,1 1,1 2,1 1,2\"";
    int identical = 0;
    for (const std::string& mode : {std::string("-k 3"), std::string("-k 2 --tree"), std::string("--diagram")}) {
        const std::string ext = mode == "--diagram" ? ".svg" : ".png";
        const auto first = scratch / ("first" + ext);
        const auto second = scratch / ("second" + ext);
        o.require(run("render " + vicsek_arg + " " + mode + " -o \"" + first.string() + "\"") == 0, "render " + mode);
        o.require(run("render " + vicsek_arg + " " + mode + " -o \"" + second.string() + "\"") == 0, "render " + mode);
        const std::string x = slurp(first), y = slurp(second);
        if (!x.empty() && x == y) {
            ++identical;
        } else {
            o.require(false, "render " + mode + " not byte-identical");
        }
    }
    if (o.pass) {
        const auto rows = std::count(a.begin(), a.end(), '\n') - 1;
        o.detail = "census CSV identical for 1 and 8 jobs (" + std::to_string(rows) + " rows); " +
                   std::to_string(identical) + " render modes byte-identical";
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <fsq-cli> <scratch-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::filesystem::path scratch = argv[2];
    std::filesystem::create_directories(scratch);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 Vicsek witness", criterion_vicsek},
        {"2 diagonal-cross witness", criterion_cross},
        {"3 n=2 census", criterion_n2},
        {"4 n=3 census", [] { return criterion_census(3, 501, 10.0); }},
        {"4 n=4 census", [] { return criterion_census(4, 65518, 600.0); }},
        {"5 segment two-point witness", criterion_segment},
        {"6 oracle equivalence", criterion_oracles},
        {"7 level consistency", criterion_levels},
        {"8 order-method agreement", criterion_orders},
        {"9 determinism", [&] { return criterion_determinism(cli, scratch); }},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        failures += !out.pass;
        std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << out.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
