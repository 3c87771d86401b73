#pragma once

#include <array>
#include <compare>
#include <cstdlib>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fsq/rational.hpp"

namespace fsq {

// Integer grid position; used both for digits and for level-k cells.
// Ordering is row-major: by y, then by x.
struct Cell {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
    friend std::strong_ordering operator<=>(const Cell& a, const Cell& b) {
        if (auto c = a.y <=> b.y; c != 0) {
            return c;
        }
        return a.x <=> b.x;
    }
    friend Cell operator+(Cell a, Cell b) { return {a.x + b.x, a.y + b.y}; }
    friend Cell operator-(Cell a, Cell b) { return {a.x - b.x, a.y - b.y}; }
    friend Cell operator*(std::int64_t s, Cell c) { return {s * c.x, s * c.y}; }

    Point point() const { return {Rational(x), Rational(y)}; }
    std::string str() const;
};

struct CellHash {
    std::size_t operator()(const Cell& c) const noexcept {
        return std::hash<std::int64_t>{}(c.x * 0x9E3779B97F4A7C15ULL ^ (c.y + 0x632BE59BD9B4E019ULL));
    }
};

// Element of {-1,0,1}^2: indexes the faces of the unit square.
struct FaceVector {
    int a = 0;
    int b = 0;

    friend bool operator==(const FaceVector&, const FaceVector&) = default;
    friend auto operator<=>(const FaceVector&, const FaceVector&) = default;

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_side() const { return std::abs(a) + std::abs(b) == 1; }
    bool is_diagonal() const { return std::abs(a) + std::abs(b) == 2; }
    FaceVector operator-() const { return {-a, -b}; }
    Cell cell() const { return {a, b}; }
    // The side vector orthogonal to a side vector, with nonnegative entries.
    FaceVector perp() const { return {std::abs(b), std::abs(a)}; }
    // Index in 0..8 of the 3x3 neighbourhood.
    int index() const { return (b + 1) * 3 + (a + 1); }
    std::string str() const;
    static FaceVector from_index(int i) { return {i % 3 - 1, i / 3 - 1}; }
};

// The eight nonzero face vectors, in index order.
const std::array<FaceVector, 8>& nonzero_faces();
// Representatives of the four +-pairs: (1,0), (0,1), (1,1), (1,-1).
const std::array<FaceVector, 4>& face_pair_representatives();

std::size_t default_cell_budget();
// FSQ_CELL_BUDGET when set, else the default.
std::size_t cell_budget();

// Digit set of a fractal square: order n and 1 < m < n^2 distinct digits in
// {0..n-1}^2, kept in row-major order.
class DigitSet {
public:
    DigitSet(int n, std::vector<Cell> digits, std::vector<std::string>* warnings = nullptr);

    int n() const { return n_; }
    std::size_t size() const { return digits_.size(); }
    std::span<const Cell> digits() const { return digits_; }
    bool contains(Cell c) const;

    // Bit (y*n + x) set for each digit. n <= 8.
    std::uint64_t mask() const;
    static DigitSet from_mask(int n, std::uint64_t mask);

    // "<n>: x,y x,y ..."
    std::string str() const;

    friend bool operator==(const DigitSet& a, const DigitSet& b) {
        return a.n_ == b.n_ && a.digits_ == b.digits_;
    }

private:
    int n_;
    std::vector<Cell> digits_;
};

// Accepts the text form "<n>: x,y ..." or {"n": 3, "digits": [[x,y],...]}.
DigitSet parse_digit_set(std::string_view text, std::vector<std::string>* warnings = nullptr);

// D^k = n^{k-1} D + ... + D as sorted cells of the n^k grid. D^0 = {(0,0)}.
std::vector<Cell> refine(const DigitSet& d, int k, std::size_t budget = cell_budget());
std::vector<Cell> refine(int n, std::span<const Cell> digits, int k, std::size_t budget = cell_budget());

// D_alpha = D intersected with (n-1) P_alpha.
std::vector<Cell> face_digits(int n, std::span<const Cell> digits, FaceVector alpha);
inline std::vector<Cell> face_digits(const DigitSet& d, FaceVector alpha) {
    return face_digits(d.n(), d.digits(), alpha);
}

struct GSets {
    std::vector<Cell> self;        // G_alpha
    std::vector<Cell> plus_beta;   // G_{alpha,beta}
    std::vector<Cell> minus_beta;  // G_{alpha,-beta}
};

// G_{alpha,gamma} = D_alpha ∩ (D_{-alpha} + (n-1)alpha - gamma) for gamma in {0, beta, -beta}.
GSets g_sets(const DigitSet& d, FaceVector alpha, FaceVector beta);

// S_d(p) = (p + d)/n.
Point apply_map(int n, Cell d, const Point& p);
// S_d^{-1}(p) = n p - d.
Point invert_map(int n, Cell d, const Point& p);

}  // namespace fsq
