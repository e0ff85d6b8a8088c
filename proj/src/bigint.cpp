#include "champs/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace champs {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
} // namespace

BigUint::BigUint(std::uint64_t v) {
    if (v) limbs_.push_back(static_cast<std::uint32_t>(v));
    if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::from_double_floor(double y) {
    if (!(y >= 0.0) || !std::isfinite(y))
        throw std::domain_error("from_double_floor: need finite y >= 0");
    if (y < 1.0) return BigUint();
    int e;
    double m = std::frexp(y, &e); // y = m * 2^e, m in [0.5, 1)
    auto mant = static_cast<std::uint64_t>(std::ldexp(m, 53)); // exact
    int shift = e - 53;
    BigUint r(mant);
    if (shift >= 0) r <<= static_cast<std::size_t>(shift);
    else r >>= static_cast<std::size_t>(-shift); // truncation == floor for >= 0
    return r;
}

std::size_t BigUint::bit_length() const {
    if (limbs_.empty()) return 0;
    std::uint32_t top = limbs_.back();
    std::size_t b = limbs_.size() * 32;
    for (std::uint32_t probe = 0x80000000u; probe && !(top & probe); probe >>= 1) --b;
    return b;
}

bool BigUint::bit(std::size_t i) const {
    std::size_t limb = i / 32;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 32)) & 1u;
}

int BigUint::compare(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size())
        return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
}

BigUint& BigUint::operator+=(const BigUint& o) {
    if (limbs_.size() < o.limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
        limbs_[i] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& o) {
    if (*this < o) throw std::underflow_error("BigUint subtraction underflow");
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(limbs_[i]) - borrow -
                         (i < o.limbs_.size() ? o.limbs_[i] : 0);
        if (d < 0) { d += kBase; borrow = 1; } else borrow = 0;
        limbs_[i] = static_cast<std::uint32_t>(d);
    }
    trim();
    return *this;
}

BigUint BigUint::operator*(const BigUint& o) const {
    BigUint r;
    if (is_zero() || o.is_zero()) return r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
            std::uint64_t cur = r.limbs_[i + j] +
                                static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] + carry;
            r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        r.limbs_[i + o.limbs_.size()] += static_cast<std::uint32_t>(carry);
    }
    r.trim();
    return r;
}

BigUint& BigUint::operator<<=(std::size_t bits) {
    if (is_zero() || bits == 0) return *this;
    std::size_t words = bits / 32, rem = bits % 32;
    limbs_.insert(limbs_.begin(), words, 0);
    if (rem) {
        std::uint32_t carry = 0;
        for (std::size_t i = words; i < limbs_.size(); ++i) {
            std::uint32_t nxt = limbs_[i] >> (32 - rem);
            limbs_[i] = (limbs_[i] << rem) | carry;
            carry = nxt;
        }
        if (carry) limbs_.push_back(carry);
    }
    return *this;
}

BigUint& BigUint::operator>>=(std::size_t bits) {
    std::size_t words = bits / 32, rem = bits % 32;
    if (words >= limbs_.size()) { limbs_.clear(); return *this; }
    limbs_.erase(limbs_.begin(), limbs_.begin() + words);
    if (rem) {
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint32_t hi = (i + 1 < limbs_.size()) ? limbs_[i + 1] << (32 - rem) : 0;
            limbs_[i] = (limbs_[i] >> rem) | hi;
        }
    }
    trim();
    return *this;
}

void BigUint::divmod(const BigUint& divisor, BigUint& quot, BigUint& rem) const {
    if (divisor.is_zero()) throw std::domain_error("BigUint division by zero");
    quot = BigUint();
    if (*this < divisor) { rem = *this; return; }
    // Shift-subtract long division; fine at the operand sizes seen here.
    std::size_t shift = bit_length() - divisor.bit_length();
    BigUint den = divisor;
    den <<= shift;
    rem = *this;
    for (std::size_t i = shift + 1; i-- > 0;) {
        quot <<= 1;
        if (den <= rem) {
            rem -= den;
            if (quot.limbs_.empty()) quot.limbs_.push_back(1);
            else quot.limbs_[0] |= 1u;
        }
        den >>= 1;
    }
    quot.trim();
}

BigUint BigUint::operator/(const BigUint& o) const {
    BigUint q, r;
    divmod(o, q, r);
    return q;
}

BigUint BigUint::operator%(const BigUint& o) const {
    BigUint q, r;
    divmod(o, q, r);
    return r;
}

BigUint& BigUint::mul_small(std::uint32_t m) {
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
        std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
        limb = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    trim();
    return *this;
}

std::uint32_t BigUint::divmod_small(std::uint32_t d) {
    if (d == 0) throw std::domain_error("BigUint division by zero");
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
    }
    trim();
    return static_cast<std::uint32_t>(rem);
}

BigUint BigUint::gcd(BigUint a, BigUint b) {
    while (!b.is_zero()) {
        BigUint r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigUint BigUint::pow(const BigUint& base, unsigned exp) {
    BigUint r(1), b = base;
    while (exp) {
        if (exp & 1u) r = r * b;
        exp >>= 1;
        if (exp) b = b * b;
    }
    return r;
}

std::uint64_t BigUint::to_u64() const {
    std::uint64_t v = 0;
    if (limbs_.size() > 2) throw std::overflow_error("BigUint does not fit in uint64");
    if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
}

double BigUint::to_double() const {
    double r = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) r = r * kBase + limbs_[i];
    return r;
}

std::string BigUint::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    BigUint tmp = *this;
    while (!tmp.is_zero()) {
        std::uint32_t chunk = tmp.divmod_small(1000000000u);
        for (int i = 0; i < 9; ++i) {
            out.push_back(static_cast<char>('0' + chunk % 10));
            chunk /= 10;
        }
    }
    while (out.size() > 1 && out.back() == '0') out.pop_back();
    return std::string(out.rbegin(), out.rend());
}

BigInt::BigInt(std::int64_t v) {
    if (v > 0) { sign_ = 1; mag_ = BigUint(static_cast<std::uint64_t>(v)); }
    else if (v < 0) {
        sign_ = -1;
        mag_ = BigUint(v == INT64_MIN ? (1ull << 63) : static_cast<std::uint64_t>(-v));
    }
}

BigInt::BigInt(int sign, BigUint mag) : sign_(sign), mag_(std::move(mag)) {
    if (mag_.is_zero()) sign_ = 0;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    if (sign_ == o.sign_) return BigInt(sign_, mag_ + o.mag_);
    int c = mag_.compare(o.mag_);
    if (c == 0) return BigInt();
    return c > 0 ? BigInt(sign_, mag_ - o.mag_) : BigInt(o.sign_, o.mag_ - mag_);
}

BigInt BigInt::operator*(const BigInt& o) const {
    return BigInt(sign_ * o.sign_, mag_ * o.mag_);
}

bool BigInt::operator<(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_;
    int c = mag_.compare(o.mag_);
    return sign_ >= 0 ? c < 0 : c > 0;
}

std::string BigInt::to_string() const {
    if (sign_ < 0) return "-" + mag_.to_string();
    return mag_.to_string();
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational with zero denominator");
    if (num_.is_zero()) { den_ = BigInt(1); return; }
    int sign = num_.sign() * den_.sign();
    BigUint g = BigUint::gcd(num_.magnitude(), den_.magnitude());
    num_ = BigInt(sign, num_.magnitude() / g);
    den_ = BigInt(1, den_.magnitude() / g);
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("Rational division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

double Rational::to_double() const {
    // Scale so both parts stay in double range before dividing.
    std::size_t nb = num_.magnitude().bit_length(), db = den_.magnitude().bit_length();
    if (nb < 900 && db < 900) return num_.to_double() / den_.to_double();
    std::size_t drop = (nb > db ? nb : db) - 512;
    BigUint n = num_.magnitude(), d = den_.magnitude();
    n >>= drop;
    d >>= drop;
    return num_.sign() * (n.to_double() / d.to_double());
}

std::string Rational::to_string() const {
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

} // namespace champs
