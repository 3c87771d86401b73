#include "fsq/digit_set.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "fsq/errors.hpp"

namespace fsq {

std::string Cell::str() const { return std::to_string(x) + "," + std::to_string(y); }

std::string FaceVector::str() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

const std::array<FaceVector, 8>& nonzero_faces() {
    static const std::array<FaceVector, 8> faces = [] {
        std::array<FaceVector, 8> f{};
        int k = 0;
        for (int i = 0; i < 9; ++i) {
            if (i != 4) {
                f[k++] = FaceVector::from_index(i);
            }
        }
        return f;
    }();
    return faces;
}

const std::array<FaceVector, 4>& face_pair_representatives() {
    static const std::array<FaceVector, 4> reps{{{1, 0}, {0, 1}, {1, 1}, {1, -1}}};
    return reps;
}

std::size_t default_cell_budget() { return 10'000'000; }

std::size_t cell_budget() {
    static const std::size_t budget = [] {
        if (const char* env = std::getenv("FSQ_CELL_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) {
                return static_cast<std::size_t>(v);
            }
        }
        return default_cell_budget();
    }();
    return budget;
}

DigitSet::DigitSet(int n, std::vector<Cell> digits, std::vector<std::string>* warnings)
    : n_(n), digits_(std::move(digits)) {
    if (n_ < 2) {
        throw Error(ErrorKind::InvalidArgument, "order n must be at least 2, got " + std::to_string(n_));
    }
    for (const Cell& c : digits_) {
        if (c.x < 0 || c.y < 0 || c.x >= n_ || c.y >= n_) {
            throw Error(ErrorKind::OutOfRange,
                        "digit (" + c.str() + ") outside {0.." + std::to_string(n_ - 1) + "}^2");
        }
    }
    std::sort(digits_.begin(), digits_.end());
    auto last = std::unique(digits_.begin(), digits_.end());
    if (last != digits_.end()) {
        if (warnings != nullptr) {
            warnings->push_back("duplicate digits removed: " +
                                std::to_string(std::distance(last, digits_.end())));
        }
        digits_.erase(last, digits_.end());
    }
    const auto m = static_cast<long long>(digits_.size());
    if (m <= 1 || m >= static_cast<long long>(n_) * n_) {
        throw Error(ErrorKind::InvalidArgument,
                    "digit count m=" + std::to_string(m) + " must satisfy 1 < m < n^2=" +
                        std::to_string(n_ * n_));
    }
}

bool DigitSet::contains(Cell c) const { return std::binary_search(digits_.begin(), digits_.end(), c); }

std::uint64_t DigitSet::mask() const {
    std::uint64_t m = 0;
    for (const Cell& c : digits_) {
        m |= std::uint64_t{1} << (c.y * n_ + c.x);
    }
    return m;
}

DigitSet DigitSet::from_mask(int n, std::uint64_t mask) {
    std::vector<Cell> digits;
    for (int i = 0; i < n * n; ++i) {
        if ((mask >> i) & 1U) {
            digits.push_back({i % n, i / n});
        }
    }
    return DigitSet(n, std::move(digits));
}

std::string DigitSet::str() const {
    std::string s = std::to_string(n_) + ":";
    for (const Cell& c : digits_) {
        s += " " + c.str();
    }
    return s;
}

namespace {

DigitSet parse_json(std::string_view text, std::vector<std::string>* warnings) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("malformed digit-set JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("digits") || !j["n"].is_number_integer() ||
        !j["digits"].is_array()) {
        throw Error(ErrorKind::Parse, "digit-set JSON needs integer 'n' and array 'digits'");
    }
    std::vector<Cell> digits;
    for (const auto& d : j["digits"]) {
        if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer()) {
            throw Error(ErrorKind::Parse, "each digit must be a pair of integers");
        }
        digits.push_back({d[0].get<std::int64_t>(), d[1].get<std::int64_t>()});
    }
    return DigitSet(j["n"].get<int>(), std::move(digits), warnings);
}

std::int64_t parse_decimal(std::string_view s, std::string_view context) {
    if (s.empty()) {
        throw Error(ErrorKind::Parse, "malformed digit set: empty number in '" + std::string(context) + "'");
    }
    std::int64_t v = 0;
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-') {
        neg = true;
        i = 1;
    }
    if (i == s.size()) {
        throw Error(ErrorKind::Parse, "malformed digit set near '" + std::string(context) + "'");
    }
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])) || v > 1'000'000'000) {
            throw Error(ErrorKind::Parse, "malformed digit set near '" + std::string(context) + "'");
        }
        v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
}

}  // namespace

DigitSet parse_digit_set(std::string_view text, std::vector<std::string>* warnings) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        throw Error(ErrorKind::Parse, "empty digit set");
    }
    if (text[first] == '{') {
        return parse_json(text, warnings);
    }
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorKind::Parse, "digit set must look like '<n>: x,y x,y ...'");
    }
    std::string head(text.substr(0, colon));
    head.erase(std::remove_if(head.begin(), head.end(), [](unsigned char c) { return std::isspace(c); }),
               head.end());
    std::int64_t n = parse_decimal(head, text);
    if (n > 64) {
        throw Error(ErrorKind::InvalidArgument, "order n too large: " + std::to_string(n));
    }
    std::vector<Cell> digits;
    std::istringstream in{std::string(text.substr(colon + 1))};
    std::string token;
    while (in >> token) {
        auto comma = token.find(',');
        if (comma == std::string::npos || token.find(',', comma + 1) != std::string::npos) {
            throw Error(ErrorKind::Parse, "expected 'x,y', got '" + token + "'");
        }
        std::string_view tv = token;
        digits.push_back({parse_decimal(tv.substr(0, comma), token), parse_decimal(tv.substr(comma + 1), token)});
    }
    return DigitSet(static_cast<int>(n), std::move(digits), warnings);
}

std::vector<Cell> refine(int n, std::span<const Cell> digits, int k, std::size_t budget) {
    if (k < 0) {
        throw Error(ErrorKind::InvalidArgument, "refinement level must be nonnegative");
    }
    long double count = 1;
    for (int i = 0; i < k; ++i) {
        count *= static_cast<long double>(digits.size());
    }
    if (count > static_cast<long double>(budget)) {
        throw Error(ErrorKind::Budget, "level " + std::to_string(k) + " needs " +
                                           std::to_string(static_cast<double>(count)) +
                                           " cells, over the budget of " + std::to_string(budget));
    }
    std::vector<Cell> cur{{0, 0}};
    for (int i = 0; i < k; ++i) {
        std::vector<Cell> next;
        next.reserve(cur.size() * digits.size());
        for (const Cell& c : cur) {
            for (const Cell& d : digits) {
                next.push_back(static_cast<std::int64_t>(n) * c + d);
            }
        }
        cur = std::move(next);
    }
    std::sort(cur.begin(), cur.end());
    return cur;
}

std::vector<Cell> refine(const DigitSet& d, int k, std::size_t budget) {
    return refine(d.n(), d.digits(), k, budget);
}

std::vector<Cell> face_digits(int n, std::span<const Cell> digits, FaceVector alpha) {
    auto on = [n](std::int64_t coord, int a) {
        if (a == 1) {
            return coord == n - 1;
        }
        if (a == -1) {
            return coord == 0;
        }
        return true;
    };
    std::vector<Cell> out;
    for (const Cell& c : digits) {
        if (on(c.x, alpha.a) && on(c.y, alpha.b)) {
            out.push_back(c);
        }
    }
    return out;
}

GSets g_sets(const DigitSet& d, FaceVector alpha, FaceVector beta) {
    if (!alpha.is_side() || !beta.is_side() || alpha.a * beta.a + alpha.b * beta.b != 0) {
        throw Error(ErrorKind::InvalidArgument,
                    "g_sets needs a side vector alpha and an orthogonal side vector beta, got " + alpha.str() +
                        ", " + beta.str());
    }
    const int n = d.n();
    const auto da = face_digits(d, alpha);
    const auto dm = face_digits(d, -alpha);
    auto build = [&](Cell gamma) {
        std::vector<Cell> out;
        const Cell shift = static_cast<std::int64_t>(n - 1) * alpha.cell() - gamma;
        for (const Cell& c : da) {
            if (std::binary_search(dm.begin(), dm.end(), c - shift)) {
                out.push_back(c);
            }
        }
        return out;
    };
    return {build({0, 0}), build(beta.cell()), build((-beta).cell())};
}

Point apply_map(int n, Cell d, const Point& p) { return (p + d.point()) / Rational(n); }

Point invert_map(int n, Cell d, const Point& p) { return Rational(n) * p - d.point(); }

}  // namespace fsq
