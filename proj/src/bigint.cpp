#include "parkgame/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <ostream>
#include <stdexcept>

namespace parkgame {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kDecimalChunk = 1000000000000000000ULL;  // 10^18
constexpr int kDecimalChunkDigits = 18;

} // namespace

BigInteger::BigInteger(std::int64_t value) {
    if (value < 0) {
        sign_ = -1;
        // Negating INT64_MIN directly is UB; go through uint64.
        limbs_.push_back(~static_cast<std::uint64_t>(value) + 1);
    } else if (value > 0) {
        sign_ = 1;
        limbs_.push_back(static_cast<std::uint64_t>(value));
    }
}

BigInteger::BigInteger(std::uint64_t value) {
    if (value != 0) {
        sign_ = 1;
        limbs_.push_back(value);
    }
}

BigInteger BigInteger::from_string(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("BigInteger: empty numeral");
    }
    BigInteger result;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t take = std::min<std::size_t>(kDecimalChunkDigits, text.size() - pos);
        std::uint64_t chunk = 0;
        std::uint64_t scale = 1;
        for (std::size_t i = 0; i < take; ++i) {
            const char c = text[pos + i];
            if (c < '0' || c > '9') {
                throw std::invalid_argument("BigInteger: invalid digit in numeral");
            }
            chunk = chunk * 10 + static_cast<std::uint64_t>(c - '0');
            scale *= 10;
        }
        result.multiply_small(scale);
        result += BigInteger(chunk);
        pos += take;
    }
    if (negative) {
        result.negate();
    }
    return result;
}

bool BigInteger::is_one() const {
    return sign_ == 1 && limbs_.size() == 1 && limbs_[0] == 1;
}

bool BigInteger::fits_int64() const {
    if (limbs_.empty()) return true;
    if (limbs_.size() > 1) return false;
    if (sign_ > 0) return limbs_[0] <= static_cast<std::uint64_t>(INT64_MAX);
    return limbs_[0] <= static_cast<std::uint64_t>(INT64_MAX) + 1;
}

std::int64_t BigInteger::to_int64() const {
    assert(fits_int64());
    if (limbs_.empty()) return 0;
    if (sign_ > 0) return static_cast<std::int64_t>(limbs_[0]);
    return -static_cast<std::int64_t>(limbs_[0] - 1) - 1;
}

BigInteger& BigInteger::negate() {
    sign_ = -sign_;
    return *this;
}

BigInteger BigInteger::abs() const {
    BigInteger result = *this;
    if (result.sign_ < 0) result.sign_ = 1;
    return result;
}

BigInteger BigInteger::operator-() const {
    BigInteger result = *this;
    result.negate();
    return result;
}

void BigInteger::normalize() {
    while (!limbs_.empty() && limbs_.back() == 0) {
        limbs_.pop_back();
    }
    if (limbs_.empty()) {
        sign_ = 0;
    }
}

std::strong_ordering BigInteger::compare_magnitudes(const Limbs& a, const Limbs& b) {
    if (a.size() != b.size()) {
        return a.size() < b.size() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) {
            return a[i] < b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
        }
    }
    return std::strong_ordering::equal;
}

void BigInteger::add_magnitudes(Limbs& acc, const Limbs& addend) {
    if (acc.size() < addend.size()) {
        acc.resize(addend.size(), 0);
    }
    std::uint64_t carry = 0;
    std::size_t i = 0;
    for (; i < addend.size(); ++i) {
        const u128 sum = static_cast<u128>(acc[i]) + addend[i] + carry;
        acc[i] = static_cast<std::uint64_t>(sum);
        carry = static_cast<std::uint64_t>(sum >> 64);
    }
    for (; carry != 0 && i < acc.size(); ++i) {
        const u128 sum = static_cast<u128>(acc[i]) + carry;
        acc[i] = static_cast<std::uint64_t>(sum);
        carry = static_cast<std::uint64_t>(sum >> 64);
    }
    if (carry != 0) {
        acc.push_back(carry);
    }
}

void BigInteger::sub_magnitudes(Limbs& acc, const Limbs& subtrahend) {
    std::uint64_t borrow = 0;
    std::size_t i = 0;
    for (; i < subtrahend.size(); ++i) {
        const std::uint64_t s = subtrahend[i];
        const std::uint64_t before = acc[i];
        const std::uint64_t mid = before - s;
        const std::uint64_t after = mid - borrow;
        borrow = (before < s) || (mid < borrow) ? 1 : 0;
        acc[i] = after;
    }
    for (; borrow != 0 && i < acc.size(); ++i) {
        const std::uint64_t before = acc[i];
        acc[i] = before - borrow;
        borrow = before < borrow ? 1 : 0;
    }
    assert(borrow == 0 && "sub_magnitudes requires acc >= subtrahend");
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
}

void BigInteger::mul_magnitudes(Limbs& dest, const Limbs& a, const Limbs& b) {
    dest.assign(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::uint64_t ai = a[i];
        if (ai == 0) continue;
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const u128 cur = static_cast<u128>(ai) * b[j] + dest[i + j] + carry;
            dest[i + j] = static_cast<std::uint64_t>(cur);
            carry = static_cast<std::uint64_t>(cur >> 64);
        }
        std::size_t k = i + b.size();
        while (carry != 0) {
            const u128 cur = static_cast<u128>(dest[k]) + carry;
            dest[k] = static_cast<std::uint64_t>(cur);
            carry = static_cast<std::uint64_t>(cur >> 64);
            ++k;
        }
    }
    while (!dest.empty() && dest.back() == 0) dest.pop_back();
}

void BigInteger::addmul_magnitudes(Limbs& acc, const Limbs& a, const Limbs& b) {
    if (a.empty() || b.empty()) return;
    if (acc.size() < a.size() + b.size()) {
        acc.resize(a.size() + b.size(), 0);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::uint64_t ai = a[i];
        if (ai == 0) continue;
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const u128 cur = static_cast<u128>(ai) * b[j] + acc[i + j] + carry;
            acc[i + j] = static_cast<std::uint64_t>(cur);
            carry = static_cast<std::uint64_t>(cur >> 64);
        }
        std::size_t k = i + b.size();
        while (carry != 0) {
            if (k == acc.size()) {
                acc.push_back(carry);
                carry = 0;
            } else {
                const u128 cur = static_cast<u128>(acc[k]) + carry;
                acc[k] = static_cast<std::uint64_t>(cur);
                carry = static_cast<std::uint64_t>(cur >> 64);
                ++k;
            }
        }
    }
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
}

void BigInteger::add_signed(const Limbs& mag, int sign) {
    if (sign == 0) return;
    if (sign_ == 0) {
        limbs_ = mag;
        sign_ = sign;
        return;
    }
    if (sign_ == sign) {
        add_magnitudes(limbs_, mag);
        return;
    }
    const auto cmp = compare_magnitudes(limbs_, mag);
    if (cmp == std::strong_ordering::equal) {
        limbs_.clear();
        sign_ = 0;
    } else if (cmp == std::strong_ordering::greater) {
        sub_magnitudes(limbs_, mag);
    } else {
        Limbs tmp = mag;
        sub_magnitudes(tmp, limbs_);
        limbs_ = std::move(tmp);
        sign_ = sign;
    }
}

BigInteger& BigInteger::operator+=(const BigInteger& rhs) {
    if (this == &rhs) {
        Limbs copy = rhs.limbs_;
        add_signed(copy, rhs.sign_);
    } else {
        add_signed(rhs.limbs_, rhs.sign_);
    }
    return *this;
}

BigInteger& BigInteger::operator-=(const BigInteger& rhs) {
    if (this == &rhs) {
        limbs_.clear();
        sign_ = 0;
    } else {
        add_signed(rhs.limbs_, -rhs.sign_);
    }
    return *this;
}

BigInteger operator*(const BigInteger& lhs, const BigInteger& rhs) {
    BigInteger result;
    if (lhs.sign_ == 0 || rhs.sign_ == 0) return result;
    BigInteger::mul_magnitudes(result.limbs_, lhs.limbs_, rhs.limbs_);
    result.sign_ = lhs.sign_ * rhs.sign_;
    result.normalize();
    return result;
}

BigInteger& BigInteger::operator*=(const BigInteger& rhs) {
    *this = *this * rhs;
    return *this;
}

BigInteger& BigInteger::add_product(const BigInteger& a, const BigInteger& b) {
    const int prod_sign = a.sign_ * b.sign_;
    if (prod_sign == 0) return *this;
    if (sign_ == prod_sign) {
        addmul_magnitudes(limbs_, a.limbs_, b.limbs_);
        return *this;
    }
    // Mixed signs fall back to a temporary; the accumulation loops this
    // method serves only ever add nonnegative terms.
    return *this += a * b;
}

BigInteger& BigInteger::multiply_small(std::uint64_t factor) {
    if (sign_ == 0) return *this;
    if (factor == 0) {
        limbs_.clear();
        sign_ = 0;
        return *this;
    }
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
        const u128 cur = static_cast<u128>(limb) * factor + carry;
        limb = static_cast<std::uint64_t>(cur);
        carry = static_cast<std::uint64_t>(cur >> 64);
    }
    if (carry != 0) limbs_.push_back(carry);
    return *this;
}

// Knuth algorithm D on 64-bit limbs with 128-bit intermediates.
void BigInteger::divmod_magnitudes(const Limbs& u, const Limbs& v, Limbs& quot, Limbs& rem) {
    assert(!v.empty());
    quot.clear();
    rem.clear();
    if (compare_magnitudes(u, v) == std::strong_ordering::less) {
        rem = u;
        return;
    }
    if (v.size() == 1) {
        const std::uint64_t d = v[0];
        quot.assign(u.size(), 0);
        std::uint64_t r = 0;
        for (std::size_t i = u.size(); i-- > 0;) {
            const u128 cur = (static_cast<u128>(r) << 64) | u[i];
            quot[i] = static_cast<std::uint64_t>(cur / d);
            r = static_cast<std::uint64_t>(cur % d);
        }
        while (!quot.empty() && quot.back() == 0) quot.pop_back();
        if (r != 0) rem.push_back(r);
        return;
    }

    const int shift = std::countl_zero(v.back());
    const std::size_t n = v.size();
    const std::size_t m = u.size() - n;

    // Normalized copies: vn = v << shift, un = u << shift with one extra limb.
    Limbs vn(n, 0);
    for (std::size_t i = n; i-- > 0;) {
        vn[i] = v[i] << shift;
        if (shift != 0 && i > 0) vn[i] |= v[i - 1] >> (64 - shift);
    }
    Limbs un(u.size() + 1, 0);
    un[u.size()] = shift != 0 ? (u.back() >> (64 - shift)) : 0;
    for (std::size_t i = u.size(); i-- > 0;) {
        un[i] = u[i] << shift;
        if (shift != 0 && i > 0) un[i] |= u[i - 1] >> (64 - shift);
    }

    quot.assign(m + 1, 0);
    const std::uint64_t vhi = vn[n - 1];
    const std::uint64_t vlo = vn[n - 2];
    for (std::size_t j = m + 1; j-- > 0;) {
        const u128 numerator = (static_cast<u128>(un[j + n]) << 64) | un[j + n - 1];
        u128 qhat = numerator / vhi;
        u128 rhat = numerator % vhi;
        while (qhat >> 64 != 0 ||
               qhat * vlo > ((rhat << 64) | un[j + n - 2])) {
            --qhat;
            rhat += vhi;
            if (rhat >> 64 != 0) break;
        }
        // Multiply-subtract qhat * vn from un[j .. j+n].
        u128 borrow = 0;
        u128 carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const u128 p = qhat * vn[i] + carry;
            carry = p >> 64;
            const std::uint64_t plo = static_cast<std::uint64_t>(p);
            const u128 diff = static_cast<u128>(un[i + j]) - plo - borrow;
            un[i + j] = static_cast<std::uint64_t>(diff);
            borrow = (diff >> 64) != 0 ? 1 : 0;
        }
        const u128 last = static_cast<u128>(un[j + n]) - carry - borrow;
        un[j + n] = static_cast<std::uint64_t>(last);
        if ((last >> 64) != 0) {
            // qhat was one too large; add v back.
            --qhat;
            std::uint64_t c = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const u128 sum = static_cast<u128>(un[i + j]) + vn[i] + c;
                un[i + j] = static_cast<std::uint64_t>(sum);
                c = static_cast<std::uint64_t>(sum >> 64);
            }
            un[j + n] += c;
        }
        quot[j] = static_cast<std::uint64_t>(qhat);
    }
    while (!quot.empty() && quot.back() == 0) quot.pop_back();

    rem.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        rem[i] = un[i] >> shift;
        if (shift != 0 && i + 1 < un.size()) rem[i] |= un[i + 1] << (64 - shift);
    }
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
}

void BigInteger::divmod(const BigInteger& rhs, BigInteger& quotient, BigInteger& remainder) const {
    if (rhs.sign_ == 0) {
        throw std::domain_error("BigInteger: division by zero");
    }
    Limbs q, r;
    divmod_magnitudes(limbs_, rhs.limbs_, q, r);
    quotient.limbs_ = std::move(q);
    quotient.sign_ = quotient.limbs_.empty() ? 0 : sign_ * rhs.sign_;
    remainder.limbs_ = std::move(r);
    remainder.sign_ = remainder.limbs_.empty() ? 0 : sign_;
}

BigInteger& BigInteger::operator/=(const BigInteger& rhs) {
    BigInteger q, r;
    divmod(rhs, q, r);
    *this = std::move(q);
    return *this;
}

BigInteger& BigInteger::operator%=(const BigInteger& rhs) {
    BigInteger q, r;
    divmod(rhs, q, r);
    *this = std::move(r);
    return *this;
}

BigInteger& BigInteger::operator<<=(unsigned bits) {
    if (sign_ == 0 || bits == 0) return *this;
    const unsigned limb_shift = bits / 64;
    const unsigned bit_shift = bits % 64;
    limbs_.insert(limbs_.begin(), limb_shift, 0);
    if (bit_shift != 0) {
        std::uint64_t carry = 0;
        for (std::size_t i = limb_shift; i < limbs_.size(); ++i) {
            const std::uint64_t next = limbs_[i] >> (64 - bit_shift);
            limbs_[i] = (limbs_[i] << bit_shift) | carry;
            carry = next;
        }
        if (carry != 0) limbs_.push_back(carry);
    }
    return *this;
}

std::strong_ordering BigInteger::operator<=>(const BigInteger& rhs) const {
    if (sign_ != rhs.sign_) {
        return sign_ < rhs.sign_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (sign_ == 0) return std::strong_ordering::equal;
    const auto mag = compare_magnitudes(limbs_, rhs.limbs_);
    if (sign_ > 0) return mag;
    if (mag == std::strong_ordering::less) return std::strong_ordering::greater;
    if (mag == std::strong_ordering::greater) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

std::string BigInteger::to_string() const {
    if (sign_ == 0) return "0";
    Limbs mag = limbs_;
    std::string digits;
    const Limbs chunk_div(1, kDecimalChunk);
    while (!mag.empty()) {
        Limbs q, r;
        divmod_magnitudes(mag, chunk_div, q, r);
        std::uint64_t chunk = r.empty() ? 0 : r[0];
        if (q.empty()) {
            // Most significant chunk: no zero padding.
            digits.insert(0, std::to_string(chunk));
            break;
        }
        std::string part = std::to_string(chunk);
        digits.insert(0, std::string(kDecimalChunkDigits - part.size(), '0') + part);
        mag = std::move(q);
    }
    return sign_ < 0 ? "-" + digits : digits;
}

std::ostream& operator<<(std::ostream& os, const BigInteger& value) {
    return os << value.to_string();
}

BigInteger gcd(BigInteger a, BigInteger b) {
    a.sign_ = a.limbs_.empty() ? 0 : 1;
    b.sign_ = b.limbs_.empty() ? 0 : 1;
    while (!b.is_zero()) {
        BigInteger q, r;
        a.divmod(b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigInteger pow(const BigInteger& base, std::uint64_t exponent) {
    BigInteger result(std::int64_t{1});
    BigInteger square = base;
    while (exponent != 0) {
        if (exponent & 1) result *= square;
        exponent >>= 1;
        if (exponent != 0) square *= square;
    }
    return result;
}

} // namespace parkgame
