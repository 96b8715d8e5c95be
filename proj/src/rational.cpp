#include "parkgame/rational.hpp"

#include <ostream>
#include <stdexcept>
#include <utility>

namespace parkgame {

Rational::Rational(BigInteger numerator, BigInteger denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    normalize();
}

Rational Rational::of(std::int64_t numerator, std::int64_t denominator) {
    return Rational(BigInteger(numerator), BigInteger(denominator));
}

void Rational::normalize() {
    if (den_.is_zero()) {
        throw std::domain_error("Rational: zero denominator");
    }
    if (num_.is_zero()) {
        den_ = BigInteger(std::int64_t{1});
        return;
    }
    if (den_.sign() < 0) {
        num_.negate();
        den_.negate();
    }
    BigInteger g = gcd(num_, den_);
    if (!g.is_one()) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::abs() const {
    Rational r = *this;
    if (r.num_.sign() < 0) r.num_.negate();
    return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    num_ = num_ * rhs.den_ - rhs.num_ * den_;
    den_ = den_ * rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) {
        throw std::domain_error("Rational: division by zero");
    }
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    normalize();
    return *this;
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_.negate();
    return r;
}

std::strong_ordering Rational::operator<=>(const Rational& rhs) const {
    // Denominators are positive, so cross multiplication preserves order.
    return (num_ * rhs.den_) <=> (rhs.num_ * den_);
}

std::string Rational::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
    return os << value.to_string();
}

} // namespace parkgame
