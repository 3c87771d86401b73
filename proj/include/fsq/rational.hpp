#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fsq {

using BigInt = boost::multiprecision::cpp_int;

// Exact fraction kept in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(BigInt num, BigInt den);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_.sign(); }

    // "p" for integers, "p/q" otherwise.
    std::string str() const;
    static Rational parse(std::string_view text);

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    // floor(this), exact.
    BigInt floor() const;

private:
    void normalize();

    BigInt num_{0};
    BigInt den_{1};
};

// true when gcd(|num|, den) == 1 and den > 0.
bool in_lowest_terms(const Rational& r);

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point&, const Point&) = default;
    friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
        if (auto c = a.x <=> b.x; c != 0) {
            return c;
        }
        return a.y <=> b.y;
    }

    friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(const Rational& s, const Point& p) { return {s * p.x, s * p.y}; }
    friend Point operator/(const Point& p, const Rational& s) { return {p.x / s, p.y / s}; }

    // "x,y" with each coordinate in p/q form.
    std::string str() const;
    static Point parse(std::string_view text);

    bool in_unit_square() const;
    // Corner of [0,1]^2.
    bool is_corner() const;
};

}  // namespace fsq
