#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace parkgame {

/// Signed arbitrary-precision integer.
///
/// Magnitude is a little-endian sequence of 64-bit limbs; the inline limb
/// capacity covers values up to ~2^640 (comfortably past 100! * n^2) without
/// touching the heap, which keeps the Shapley accumulation loops allocation
/// free. Values normalize after every operation: no trailing zero limbs, and
/// sign() == 0 exactly when the magnitude is empty.
class BigInteger {
public:
    BigInteger() = default;
    BigInteger(std::int64_t value);   // NOLINT: implicit by design, mirrors int
    BigInteger(std::uint64_t value);
    BigInteger(int value) : BigInteger(static_cast<std::int64_t>(value)) {}

    // Parses an optionally '-'-prefixed decimal string. Throws std::invalid_argument.
    static BigInteger from_string(std::string_view text);

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    bool is_one() const;
    bool fits_int64() const;
    std::int64_t to_int64() const;  // requires fits_int64()

    BigInteger& negate();
    BigInteger abs() const;

    BigInteger& operator+=(const BigInteger& rhs);
    BigInteger& operator-=(const BigInteger& rhs);
    BigInteger& operator*=(const BigInteger& rhs);
    BigInteger& operator/=(const BigInteger& rhs);  // truncated toward zero
    BigInteger& operator%=(const BigInteger& rhs);  // sign follows the dividend

    friend BigInteger operator+(BigInteger lhs, const BigInteger& rhs) { return lhs += rhs; }
    friend BigInteger operator-(BigInteger lhs, const BigInteger& rhs) { return lhs -= rhs; }
    friend BigInteger operator*(const BigInteger& lhs, const BigInteger& rhs);
    friend BigInteger operator/(BigInteger lhs, const BigInteger& rhs) { return lhs /= rhs; }
    friend BigInteger operator%(BigInteger lhs, const BigInteger& rhs) { return lhs %= rhs; }
    BigInteger operator-() const;

    // *this += a * b without materializing the product. Hot path of the
    // Shapley numerator accumulation.
    BigInteger& add_product(const BigInteger& a, const BigInteger& b);

    // In-place multiply by a small nonnegative factor (factorial tables).
    BigInteger& multiply_small(std::uint64_t factor);

    // Quotient truncated toward zero and remainder with the dividend's sign.
    // Satisfies *this == q * rhs + r and |r| < |rhs|. Throws std::domain_error
    // on division by zero.
    void divmod(const BigInteger& rhs, BigInteger& quotient, BigInteger& remainder) const;

    BigInteger& operator<<=(unsigned bits);
    friend BigInteger operator<<(BigInteger lhs, unsigned bits) { return lhs <<= bits; }

    std::strong_ordering operator<=>(const BigInteger& rhs) const;
    bool operator==(const BigInteger& rhs) const = default;

    std::string to_string() const;
    std::size_t limb_count() const { return limbs_.size(); }

    friend std::ostream& operator<<(std::ostream& os, const BigInteger& value);

    friend BigInteger gcd(BigInteger a, BigInteger b);
    friend BigInteger pow(const BigInteger& base, std::uint64_t exponent);

private:
    using Limbs = boost::container::small_vector<std::uint64_t, 10>;

    void normalize();
    static std::strong_ordering compare_magnitudes(const Limbs& a, const Limbs& b);
    static void add_magnitudes(Limbs& acc, const Limbs& addend);
    static void sub_magnitudes(Limbs& acc, const Limbs& subtrahend);  // requires acc >= subtrahend
    static void mul_magnitudes(Limbs& dest, const Limbs& a, const Limbs& b);
    static void addmul_magnitudes(Limbs& acc, const Limbs& a, const Limbs& b);
    static void divmod_magnitudes(const Limbs& u, const Limbs& v, Limbs& quot, Limbs& rem);
    void add_signed(const Limbs& mag, int sign);

    Limbs limbs_;
    int sign_ = 0;
};

BigInteger gcd(BigInteger a, BigInteger b);
BigInteger pow(const BigInteger& base, std::uint64_t exponent);

} // namespace parkgame
