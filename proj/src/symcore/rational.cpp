#include "s2kg/symcore/rational.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace s2kg::sym {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
    return r;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = checked_mul(n, -1);
        d = checked_mul(d, -1);
    }
    const std::int64_t g = std::gcd(n, d);
    num_ = n / g;
    den_ = d / g;
}

Rational Rational::inverse() const {
    if (num_ == 0) throw std::domain_error("inverse of zero");
    return Rational(den_, num_);
}

Rational Rational::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Rational result(1);
    Rational base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = checked_mul(num_, -1);
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    const std::int64_t g = std::gcd(den_, o.den_);
    const std::int64_t lhs = checked_mul(num_, o.den_ / g);
    const std::int64_t rhs = checked_mul(o.num_, den_ / g);
    *this = Rational(checked_add(lhs, rhs), checked_mul(den_ / g, o.den_));
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    const std::int64_t g1 = std::gcd(num_, o.den_);
    const std::int64_t g2 = std::gcd(o.num_, den_);
    const std::int64_t n = checked_mul(g1 ? num_ / g1 : 0, g2 ? o.num_ / g2 : 0);
    const std::int64_t d = checked_mul(g2 ? den_ / g2 : den_, g1 ? o.den_ / g1 : o.den_);
    *this = Rational(n, d);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.inverse(); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::from_decimal(const std::string& text) {
    std::int64_t n = 0;
    std::int64_t d = 1;
    bool seen_dot = false;
    bool any_digit = false;
    for (char ch : text) {
        if (ch == '.') {
            if (seen_dot) throw std::invalid_argument("malformed decimal: " + text);
            seen_dot = true;
            continue;
        }
        if (ch < '0' || ch > '9') throw std::invalid_argument("malformed decimal: " + text);
        any_digit = true;
        n = checked_add(checked_mul(n, 10), ch - '0');
        if (seen_dot) d = checked_mul(d, 10);
    }
    if (!any_digit) throw std::invalid_argument("malformed decimal: " + text);
    return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace s2kg::sym
