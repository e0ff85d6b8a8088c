#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace champs {

// Unsigned arbitrary-precision integer. Little-endian 32-bit limbs, no
// trailing zero limbs (zero is an empty limb vector).
class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v);

    // Exact floor of a finite nonnegative double.
    static BigUint from_double_floor(double y);

    bool is_zero() const { return limbs_.empty(); }
    std::size_t bit_length() const;

    int compare(const BigUint& o) const;
    bool operator==(const BigUint& o) const { return limbs_ == o.limbs_; }
    bool operator!=(const BigUint& o) const { return limbs_ != o.limbs_; }
    bool operator<(const BigUint& o) const { return compare(o) < 0; }
    bool operator<=(const BigUint& o) const { return compare(o) <= 0; }
    bool operator>(const BigUint& o) const { return compare(o) > 0; }
    bool operator>=(const BigUint& o) const { return compare(o) >= 0; }

    BigUint& operator+=(const BigUint& o);
    BigUint& operator-=(const BigUint& o); // requires *this >= o
    BigUint operator+(const BigUint& o) const { BigUint r = *this; r += o; return r; }
    BigUint operator-(const BigUint& o) const { BigUint r = *this; r -= o; return r; }
    BigUint operator*(const BigUint& o) const;

    BigUint& operator<<=(std::size_t bits);
    BigUint& operator>>=(std::size_t bits);

    // Quotient/remainder; divisor must be nonzero.
    void divmod(const BigUint& divisor, BigUint& quot, BigUint& rem) const;
    BigUint operator/(const BigUint& o) const;
    BigUint operator%(const BigUint& o) const;

    BigUint& mul_small(std::uint32_t m);
    std::uint32_t divmod_small(std::uint32_t d); // in place, returns remainder

    static BigUint gcd(BigUint a, BigUint b);
    static BigUint pow(const BigUint& base, unsigned exp);

    // Fits in uint64? Then value.
    bool fits_u64() const { return limbs_.size() <= 2; }
    std::uint64_t to_u64() const;

    double to_double() const; // nearest-ish, fine for reporting
    std::string to_string() const;

private:
    std::vector<std::uint32_t> limbs_;
    void trim();
    bool bit(std::size_t i) const;
};

// Signed arbitrary-precision integer.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);
    BigInt(int sign, BigUint mag);

    static BigInt from_u64(std::uint64_t v) { return BigInt(1, BigUint(v)); }

    int sign() const { return sign_; }
    const BigUint& magnitude() const { return mag_; }
    bool is_zero() const { return sign_ == 0; }

    BigInt operator-() const { return BigInt(-sign_, mag_); }
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const { return *this + (-o); }
    BigInt operator*(const BigInt& o) const;

    bool operator==(const BigInt& o) const { return sign_ == o.sign_ && mag_ == o.mag_; }
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;

    double to_double() const { return sign_ * mag_.to_double(); }
    std::string to_string() const;

private:
    int sign_ = 0; // -1, 0, +1
    BigUint mag_;
};

// Exact rational: reduced, denominator > 0.
class Rational {
public:
    Rational() : num_(0), den_(1, BigUint(1)) {}
    Rational(std::int64_t v) : num_(v), den_(1, BigUint(1)) {}
    Rational(BigInt num, BigInt den); // den != 0, normalizes

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const; // o != 0
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    double to_double() const;
    std::string to_string() const; // "n/d", or "n" when d == 1

private:
    BigInt num_, den_;
};

} // namespace champs
