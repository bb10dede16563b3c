#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace s2kg::sym {

/// Exact rational number p/q with q > 0 and gcd(p, q) = 1.
///
/// Backed by 64-bit integers; every operation checks for overflow and
/// throws std::overflow_error instead of wrapping. The magnitudes that occur
/// in this toolkit (structure constants, Taylor coefficients, small exact
/// solves) stay far below that limit.
class Rational {
public:
    constexpr Rational() noexcept = default;
    constexpr Rational(std::int64_t n) noexcept : num_(n) {}  // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d);

    [[nodiscard]] std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] std::int64_t den() const noexcept { return den_; }

    [[nodiscard]] bool is_zero() const noexcept { return num_ == 0; }
    [[nodiscard]] bool is_one() const noexcept { return num_ == 1 && den_ == 1; }
    [[nodiscard]] bool is_integer() const noexcept { return den_ == 1; }
    [[nodiscard]] bool is_negative() const noexcept { return num_ < 0; }
    [[nodiscard]] int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

    [[nodiscard]] double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// Inverse; throws std::domain_error on zero.
    [[nodiscard]] Rational inverse() const;
    /// Integer power, negative exponents allowed for nonzero values.
    [[nodiscard]] Rational pow(int e) const;
    [[nodiscard]] Rational abs() const { return num_ < 0 ? -*this : *this; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// "p" or "p/q".
    [[nodiscard]] std::string str() const;

    /// Parses a decimal literal such as "0.15" or "12" exactly.
    static Rational from_decimal(const std::string& text);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace s2kg::sym
