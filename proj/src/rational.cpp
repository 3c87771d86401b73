#include "fsq/rational.hpp"


#include "fsq/errors.hpp"

namespace fsq {

namespace {

BigInt parse_int(std::string_view s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) {
        throw Error(ErrorKind::Parse, "expected integer, got '" + std::string(s) + "'");
    }
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
            throw Error(ErrorKind::Parse, "expected integer, got '" + std::string(s) + "'");
        }
        v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
}

}  // namespace

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "parse";
        case ErrorKind::OutOfRange: return "digit-out-of-range";
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::Budget: return "budget";
        case ErrorKind::NotDendrite: return "not-dendrite";
        case ErrorKind::OnePointFails: return "one-point-fails";
        case ErrorKind::NotInAttractor: return "not-in-attractor";
        case ErrorKind::Unbounded: return "unbounded-addresses";
        case ErrorKind::NoStabilization: return "no-stabilization";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) {
        throw Error(ErrorKind::InvalidArgument, "zero denominator");
    }
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g != 1) {
        num_ /= g;
        den_ /= g;
    }
}

std::string Rational::str() const {
    if (den_ == 1) {
        return num_.str();
    }
    return num_.str() + "/" + den_.str();
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text), 1);
    }
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
    }
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) {
        throw Error(ErrorKind::InvalidArgument, "division by zero");
    }
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    BigInt lhs = a.num_ * b.den_;
    BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) {
        return std::strong_ordering::less;
    }
    if (lhs > rhs) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

BigInt Rational::floor() const {
    BigInt q = num_ / den_;  // truncates toward zero
    if (num_ < 0 && q * den_ != num_) {
        q -= 1;
    }
    return q;
}

bool in_lowest_terms(const Rational& r) {
    if (r.den() <= 0) {
        return false;
    }
    BigInt a = r.num() < 0 ? BigInt(-r.num()) : r.num();
    return boost::multiprecision::gcd(a, r.den()) == 1 || (a == 0 && r.den() == 1);
}

std::string Point::str() const { return x.str() + "," + y.str(); }

Point Point::parse(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        throw Error(ErrorKind::Parse, "expected point 'x,y', got '" + std::string(text) + "'");
    }
    return {Rational::parse(text.substr(0, comma)), Rational::parse(text.substr(comma + 1))};
}

bool Point::in_unit_square() const {
    return x.sign() >= 0 && y.sign() >= 0 && x <= Rational(1) && y <= Rational(1);
}

bool Point::is_corner() const {
    auto edge = [](const Rational& r) { return r.is_zero() || r == Rational(1); };
    return edge(x) && edge(y);
}

}  // namespace fsq
