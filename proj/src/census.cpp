#include "fsq/census.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>

#include "fsq/errors.hpp"

namespace fsq {

namespace {

Cell dihedral_cell(int n, Cell c, int g) {
    if (g >= 4) {
        c = {n - 1 - c.x, c.y};
        g -= 4;
    }
    for (int i = 0; i < g; ++i) {
        c = {n - 1 - c.y, c.x};
    }
    return c;
}

// Byte lookup tables: image of each 8-bit chunk of a mask.
struct DihedralTables {
    int n = 0;
    int chunks = 0;
    std::array<std::vector<std::array<std::uint64_t, 256>>, 8> table;

    explicit DihedralTables(int order) : n(order), chunks((order * order + 7) / 8) {
        for (int g = 0; g < 8; ++g) {
            table[g].resize(chunks);
            for (int chunk = 0; chunk < chunks; ++chunk) {
                for (int byte = 0; byte < 256; ++byte) {
                    std::uint64_t out = 0;
                    for (int bit = 0; bit < 8; ++bit) {
                        const int i = chunk * 8 + bit;
                        if (!(byte >> bit & 1) || i >= n * n) {
                            continue;
                        }
                        Cell c = dihedral_cell(n, {i % n, i / n}, g);
                        out |= std::uint64_t{1} << (c.y * n + c.x);
                    }
                    table[g][chunk][byte] = out;
                }
            }
        }
    }

    std::uint64_t image(std::uint64_t mask, int g) const {
        std::uint64_t out = 0;
        for (int chunk = 0; chunk < chunks; ++chunk) {
            out |= table[g][chunk][(mask >> (8 * chunk)) & 0xFF];
        }
        return out;
    }
};

const DihedralTables& tables(int n) {
    static const std::vector<DihedralTables> all = [] {
        std::vector<DihedralTables> v;
        for (int k = 0; k <= 8; ++k) {
            v.emplace_back(std::max(k, 1));
        }
        return v;
    }();
    if (n < 1 || n > 8) {
        throw Error(ErrorKind::OutOfRange, "census masks need 1 <= n <= 8");
    }
    return all[n];
}

// Lexicographic order of the sorted index lists, sizes allowed to differ.
bool list_less(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t diff = a ^ b;
    if (diff == 0) {
        return false;
    }
    const std::uint64_t low = diff & (~diff + 1);
    const std::uint64_t above = ~(low - 1);
    if (a & low) {
        return (b & above) != 0;  // otherwise b ended first
    }
    return (a & above) == 0;
}

CensusRecord record_from(const Analysis& a, std::uint64_t canonical, int orbit) {
    CensusRecord r;
    r.n = a.digits.n();
    r.m = static_cast<int>(a.digits.size());
    r.digits = canonical;
    r.canonical = canonical;
    r.orbit = orbit;
    r.connected = a.dendrite.connected;
    r.dendrite = a.dendrite.is_dendrite();
    r.max_finite_intersection = a.largest_finite_face;
    if (r.dendrite) {
        r.boundary_type = a.boundary_type;
        r.boundary_size = a.boundary.size();
        r.quadruple_free = a.quadruple_free;
        if (a.main_tree && a.main_tree->stabilized) {
            r.tree_type = a.main_tree->shape.type_id;
        }
        if (a.orders) {
            r.max_order = a.orders->max_order;
        }
        r.inconclusive = !r.tree_type || !r.max_order || !r.quadruple_free;
    }
    return r;
}

struct ClassResult {
    CensusRecord record;
    Violations violations;
    std::string note;
};

ClassResult classify_class(int n, std::uint64_t canonical, const AnalysisOptions& options) {
    ClassResult out;
    const DigitSet d = DigitSet::from_mask(n, canonical);
    const int orbit = orbit_size(n, canonical);
    try {
        Analysis a = analyze(d, options);
        out.record = record_from(a, canonical, orbit);
        out.violations = a.violations;
        for (const auto& note : a.notes) {
            out.note += (out.note.empty() ? "" : "; ") + note;
        }
    } catch (const Error& e) {
        out.record.n = n;
        out.record.m = static_cast<int>(d.size());
        out.record.digits = canonical;
        out.record.canonical = canonical;
        out.record.orbit = orbit;
        out.record.inconclusive = true;
        out.note = std::string("analysis failed: ") + e.what();
    }
    return out;
}

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn fn) {
    jobs = std::max(1, jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            fn(i);
        }
    };
    if (jobs == 1) {
        worker();
        return;
    }
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) {
        threads.emplace_back(worker);
    }
    for (auto& t : threads) {
        t.join();
    }
}

}  // namespace

std::uint64_t dihedral_image(int n, std::uint64_t mask, int g) { return tables(n).image(mask, g); }

DigitSet dihedral_image(const DigitSet& d, int g) {
    std::vector<Cell> cells;
    for (const Cell& c : d.digits()) {
        cells.push_back(dihedral_cell(d.n(), c, g));
    }
    return DigitSet(d.n(), std::move(cells));
}

bool mask_precedes(std::uint64_t a, std::uint64_t b) { return list_less(a, b); }

std::uint64_t canonical_mask(int n, std::uint64_t mask) {
    const auto& t = tables(n);
    std::uint64_t best = mask;
    for (int g = 1; g < 8; ++g) {
        const std::uint64_t img = t.image(mask, g);
        if (list_less(img, best)) {
            best = img;
        }
    }
    return best;
}

DigitSet canonicalize(const DigitSet& d) { return DigitSet::from_mask(d.n(), canonical_mask(d.n(), d.mask())); }

int orbit_size(int n, std::uint64_t mask) {
    const auto& t = tables(n);
    std::array<std::uint64_t, 8> images{};
    for (int g = 0; g < 8; ++g) {
        images[g] = t.image(mask, g);
    }
    std::sort(images.begin(), images.end());
    return static_cast<int>(std::unique(images.begin(), images.end()) - images.begin());
}

CensusResult run_census(const CensusOptions& options) {
    const int n = options.n;
    if (n < 2 || n > 5) {
        throw Error(ErrorKind::OutOfRange, "census supports n = 2..5");
    }
    if (n == 5 && !options.allow_n5) {
        throw Error(ErrorKind::InvalidArgument, "the n=5 census needs the explicit opt-in flag");
    }
    const int cells = n * n;
    const std::uint64_t limit = std::uint64_t{1} << cells;
    CensusResult result;
    result.n = n;
    result.per_class_rows = n == 5;

    // canonical representatives, found in parallel over slices of the mask range
    const int jobs = std::max(1, options.jobs);
    std::vector<std::vector<std::uint64_t>> found(jobs);
    std::vector<std::size_t> subsets(jobs, 0);
    {
        std::vector<std::thread> threads;
        for (int j = 0; j < jobs; ++j) {
            threads.emplace_back([&, j] {
                for (std::uint64_t mask = j; mask < limit; mask += jobs) {
                    const int m = std::popcount(mask);
                    if (m < 2 || m >= cells) {
                        continue;
                    }
                    ++subsets[j];
                    if (canonical_mask(n, mask) == mask) {
                        found[j].push_back(mask);
                    }
                }
            });
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    std::vector<std::uint64_t> classes;
    for (int j = 0; j < jobs; ++j) {
        result.subsets += subsets[j];
        classes.insert(classes.end(), found[j].begin(), found[j].end());
    }
    std::sort(classes.begin(), classes.end(), list_less);
    result.classes = classes.size();

    std::vector<ClassResult> analysed(classes.size());
    std::mutex progress_lock;
    std::atomic<std::size_t> done{0};
    parallel_for(classes.size(), jobs, [&](std::size_t i) {
        analysed[i] = classify_class(n, classes[i], options.analysis);
        const std::size_t finished = ++done;
        if (options.progress && (finished % 512 == 0 || finished == classes.size())) {
            std::lock_guard<std::mutex> lock(progress_lock);
            options.progress(finished, classes.size());
        }
    });

    for (const auto& c : analysed) {
        result.classes_analysed.push_back(c.record);
        for (const auto& v : c.violations) {
            result.violations.push_back({c.record.canonical, v});
        }
        if (c.record.inconclusive) {
            result.inconclusive.emplace_back(c.record.canonical, c.note);
        }
    }

    auto keep = [&](const CensusRecord& r) { return !options.dendrites_only || r.dendrite; };
    if (result.per_class_rows) {
        for (const auto& c : analysed) {
            if (keep(c.record)) {
                result.records.push_back(c.record);
            }
        }
        return result;
    }
    // one row per subset: every member of an orbit shares its class record
    for (const auto& c : analysed) {
        if (!keep(c.record)) {
            continue;
        }
        std::vector<std::uint64_t> members;
        for (int g = 0; g < 8; ++g) {
            members.push_back(dihedral_image(n, c.record.canonical, g));
        }
        std::sort(members.begin(), members.end(), list_less);
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (std::uint64_t mask : members) {
            CensusRecord r = c.record;
            r.digits = mask;
            result.records.push_back(r);
        }
    }
    return result;
}

std::string census_digits(int n, std::uint64_t mask) { return DigitSet::from_mask(n, mask).str(); }

void write_csv(std::ostream& out, const CensusResult& r) {
    out << "n,m,canonical,connected,dendrite,btype,boundary_size,tree_type,max_order,max_fint,quadfree,orbit,digits\n";
    auto flag = [](bool b) { return b ? "true" : "false"; };
    for (const auto& rec : r.records) {
        out << rec.n << ',' << rec.m << ",\"" << census_digits(rec.n, rec.canonical) << "\"," << flag(rec.connected)
            << ',' << flag(rec.dendrite) << ',';
        if (rec.boundary_type) {
            out << to_string(*rec.boundary_type);
        }
        out << ',';
        if (rec.boundary_size) {
            out << *rec.boundary_size;
        }
        out << ',';
        if (rec.tree_type) {
            out << *rec.tree_type;
        }
        out << ',';
        if (rec.max_order) {
            out << *rec.max_order;
        }
        out << ',' << rec.max_finite_intersection << ',';
        if (rec.quadruple_free) {
            out << flag(*rec.quadruple_free);
        }
        out << ',' << rec.orbit << ",\"" << census_digits(rec.n, rec.digits) << "\"\n";
    }
}

nlohmann::json census_summary(const CensusResult& r) {
    // counts are over all subsets: each class stands for its orbit
    std::size_t connected = 0;
    std::size_t dendrites = 0;
    std::size_t connected_classes = 0;
    std::size_t dendrite_classes = 0;
    std::map<std::string, std::size_t> by_boundary;
    std::map<std::string, std::size_t> by_tree;
    std::map<std::string, std::size_t> by_order;
    for (const auto& rec : r.classes_analysed) {
        const std::size_t weight = static_cast<std::size_t>(rec.orbit);
        if (rec.connected) {
            connected += weight;
            ++connected_classes;
        }
        if (rec.dendrite) {
            dendrites += weight;
            ++dendrite_classes;
            by_boundary[to_string(rec.boundary_type.value_or(BoundaryType::Unclassified))] += weight;
            by_tree[rec.tree_type ? std::to_string(*rec.tree_type) : "inconclusive"] += weight;
            by_order[rec.max_order ? std::to_string(*rec.max_order) : "inconclusive"] += weight;
        }
    }
    nlohmann::json j;
    j["n"] = r.n;
    j["subsets"] = r.subsets;
    j["classes"] = r.classes;
    j["rows"] = r.records.size();
    j["rows_per"] = r.per_class_rows ? "class" : "subset";
    j["connected"] = connected;
    j["dendrites"] = dendrites;
    j["connected_classes"] = connected_classes;
    j["dendrite_classes"] = dendrite_classes;
    j["boundary_types"] = by_boundary;
    j["tree_types"] = by_tree;
    j["max_orders"] = by_order;
    auto inconclusive = nlohmann::json::array();
    for (const auto& [mask, note] : r.inconclusive) {
        inconclusive.push_back({{"digits", census_digits(r.n, mask)}, {"note", note}});
    }
    j["inconclusive"] = inconclusive;
    auto violations = nlohmann::json::array();
    for (const auto& v : r.violations) {
        violations.push_back(
            {{"digits", census_digits(r.n, v.canonical)}, {"code", v.violation.code}, {"message", v.violation.message}});
    }
    j["violations"] = violations;
    return j;
}

}  // namespace fsq
