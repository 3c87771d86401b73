#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsq/analysis.hpp"

namespace fsq {

// Image of a digit mask under one of the 8 symmetries of the square.
// g = 0..3 rotates by g quarter turns, g = 4..7 reflects in x first.
std::uint64_t dihedral_image(int n, std::uint64_t mask, int g);
DigitSet dihedral_image(const DigitSet& d, int g);

// Whether the sorted row-major index list of a precedes that of b
// (both of equal size).
bool mask_precedes(std::uint64_t a, std::uint64_t b);

// Minimum over the dihedral orbit, in the order above.
std::uint64_t canonical_mask(int n, std::uint64_t mask);
DigitSet canonicalize(const DigitSet& d);
int orbit_size(int n, std::uint64_t mask);

struct CensusRecord {
    int n = 0;
    int m = 0;
    std::uint64_t digits = 0;
    std::uint64_t canonical = 0;
    int orbit = 0;
    bool connected = false;
    bool dendrite = false;
    std::optional<BoundaryType> boundary_type;
    std::optional<std::size_t> boundary_size;
    std::optional<int> tree_type;
    std::optional<int> max_order;
    std::size_t max_finite_intersection = 0;
    std::optional<bool> quadruple_free;
    bool inconclusive = false;
};

struct CensusViolation {
    std::uint64_t canonical = 0;
    Violation violation;
};

struct CensusOptions {
    int n = 3;
    int jobs = 1;
    bool dendrites_only = false;
    // n = 5 has 2^25 subsets; rows are emitted per canonical class only.
    bool allow_n5 = false;
    AnalysisOptions analysis;
    std::function<void(std::size_t done, std::size_t total)> progress;
};

struct CensusResult {
    int n = 0;
    std::size_t subsets = 0;  // all digit sets with 1 < m < n^2
    std::size_t classes = 0;  // canonical representatives
    bool per_class_rows = false;
    std::vector<CensusRecord> classes_analysed;  // one per canonical class, sorted
    std::vector<CensusRecord> records;           // output rows, sorted by (canonical, digits)
    std::vector<CensusViolation> violations;
    std::vector<std::pair<std::uint64_t, std::string>> inconclusive;

    bool clean() const { return violations.empty(); }
};

CensusResult run_census(const CensusOptions& options);

std::string census_digits(int n, std::uint64_t mask);
void write_csv(std::ostream& out, const CensusResult& r);
nlohmann::json census_summary(const CensusResult& r);

}  // namespace fsq
