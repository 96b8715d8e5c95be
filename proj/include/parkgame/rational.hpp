#pragma once

#include "parkgame/bigint.hpp"

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace parkgame {

/// Exact rational number in canonical form: denominator strictly positive,
/// gcd(|numerator|, denominator) == 1, zero represented as 0/1. Every
/// operation renormalizes eagerly.
class Rational {
public:
    Rational() : num_(0), den_(std::int64_t{1}) {}
    Rational(std::int64_t value) : num_(value), den_(std::int64_t{1}) {}  // NOLINT: implicit
    Rational(BigInteger numerator, BigInteger denominator);
    explicit Rational(BigInteger integer) : num_(std::move(integer)), den_(std::int64_t{1}) {}
    static Rational of(std::int64_t numerator, std::int64_t denominator);

    const BigInteger& numerator() const { return num_; }
    const BigInteger& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }
    Rational abs() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);  // throws std::domain_error when rhs == 0

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    std::strong_ordering operator<=>(const Rational& rhs) const;
    bool operator==(const Rational& rhs) const = default;

    // Lowest-terms "p/q"; plain "p" when the value is an integer.
    std::string to_string() const;

    friend std::ostream& operator<<(std::ostream& os, const Rational& value);

private:
    void normalize();

    BigInteger num_;
    BigInteger den_;
};

} // namespace parkgame
