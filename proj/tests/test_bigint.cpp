#include "champs/bigint.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>

using namespace champs;

TEST_CASE("BigUint round trips uint64 values through strings") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t v = rng() >> (rng() % 60);
        CHECK(BigUint(v).to_string() == std::to_string(v));
        CHECK(BigUint(v).to_u64() == v);
    }
    CHECK(BigUint(0).to_string() == "0");
    CHECK(BigUint(0).is_zero());
}

TEST_CASE("BigUint arithmetic agrees with native on random small operands") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 3000; ++i) {
        const std::uint64_t a = rng() >> (rng() % 40 + 16); // < 2^48, sums stay in range
        const std::uint64_t b = (rng() >> (rng() % 40 + 16)) | 1;
        CHECK((BigUint(a) + BigUint(b)).to_string() == std::to_string(a + b));
        const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
        const BigUint big_prod = BigUint(a) * BigUint(b);
        const BigUint lo_part = big_prod % BigUint(1ull << 32);
        CHECK(lo_part.to_u64() == static_cast<std::uint64_t>(prod % (1ull << 32)));
        CHECK((BigUint(a) / BigUint(b)).to_u64() == a / b);
        CHECK((BigUint(a) % BigUint(b)).to_u64() == a % b);
        if (a >= b) CHECK((BigUint(a) - BigUint(b)).to_u64() == a - b);
        CHECK(BigUint::gcd(BigUint(a), BigUint(b)).to_u64() == std::gcd(a, b));
    }
}

TEST_CASE("BigUint multiply/divide invert each other on large values") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 200; ++i) {
        BigUint a(1), b(1);
        for (int j = 0; j < 6; ++j) a = a * BigUint(rng() | 1);
        for (int j = 0; j < 3; ++j) b = b * BigUint(rng() | 1);
        const BigUint prod = a * b;
        CHECK(prod / b == a);
        CHECK((prod % b).is_zero());
        CHECK((prod + BigUint(5)) / b == a);
        CHECK((prod + BigUint(5)) % b == BigUint(5));
    }
}

TEST_CASE("BigUint shifting and bit length") {
    BigUint one(1);
    BigUint shifted = one;
    shifted <<= 130;
    CHECK(shifted.bit_length() == 131);
    shifted >>= 130;
    CHECK(shifted == one);
    CHECK(BigUint(0).bit_length() == 0);
    CHECK(BigUint(255).bit_length() == 8);
}

TEST_CASE("from_double_floor is an exact floor of the double value") {
    CHECK(BigUint::from_double_floor(0.75).is_zero());
    CHECK(BigUint::from_double_floor(1.0).to_u64() == 1);
    CHECK(BigUint::from_double_floor(2310.99).to_u64() == 2310);
    // 2^64 is exactly representable; its floor has bit length 65.
    const BigUint big = BigUint::from_double_floor(18446744073709551616.0);
    CHECK(big.bit_length() == 65);
    CHECK(big.to_string() == "18446744073709551616");
    CHECK_THROWS_AS(BigUint::from_double_floor(-1.0), std::domain_error);
}

TEST_CASE("BigInt signs behave") {
    CHECK((BigInt(-5) + BigInt(5)).is_zero());
    CHECK((BigInt(-5) * BigInt(-7)).to_string() == "35");
    CHECK((BigInt(-5) * BigInt(7)).to_string() == "-35");
    CHECK(BigInt(-5) < BigInt(-4));
    CHECK(BigInt(-5) < BigInt(0));
    CHECK((BigInt(3) - BigInt(10)).to_string() == "-7");
}

TEST_CASE("Rational reduces and compares exactly") {
    const Rational half{BigInt(2), BigInt(4)};
    CHECK(half.num().to_string() == "1");
    CHECK(half.den().to_string() == "2");
    CHECK(half == Rational(BigInt(-3), BigInt(-6)));
    const Rational neg{BigInt(3), BigInt(-6)};
    CHECK(neg.num().to_string() == "-1");
    CHECK(neg.to_string() == "-1/2");
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST_CASE("Rational arithmetic matches an int128 fraction oracle") {
    std::mt19937_64 rng(31);
    auto rnd = [&] { return static_cast<std::int64_t>(rng() % 2000) - 1000; };
    for (int i = 0; i < 1500; ++i) {
        std::int64_t an = rnd(), ad = rnd(), bn = rnd(), bd = rnd();
        if (ad == 0) ad = 1;
        if (bd == 0) bd = 1;
        const Rational a{BigInt(an), BigInt(ad)};
        const Rational b{BigInt(bn), BigInt(bd)};
        // oracle: exact int128 cross-multiplication, compared without reduction
        const __int128 sum_n = static_cast<__int128>(an) * bd + static_cast<__int128>(bn) * ad;
        const __int128 sum_d = static_cast<__int128>(ad) * bd;
        const Rational sum = a + b;
        const long double oracle_sum = static_cast<long double>(sum_n) / static_cast<long double>(sum_d);
        CHECK(std::abs(static_cast<long double>(sum.to_double()) - oracle_sum) <=
              1e-12L * (std::abs(oracle_sum) + 1.0L));
        const __int128 prod_n = static_cast<__int128>(an) * bn;
        const __int128 prod_d = static_cast<__int128>(ad) * bd;
        const long double oracle_prod = static_cast<long double>(prod_n) / static_cast<long double>(prod_d);
        CHECK(std::abs(static_cast<long double>((a * b).to_double()) - oracle_prod) <=
              1e-12L * (std::abs(oracle_prod) + 1.0L));
    }
}

TEST_CASE("Rational to_double survives very large operands") {
    // ratio of consecutive huge products collapses to the last factor
    BigUint big(1), bigger(1);
    for (std::uint64_t f = 3; f <= 1500; f += 2) big = big * BigUint(f);
    bigger = big * BigUint(1511);
    const Rational r{BigInt(1, bigger), BigInt(1, big)};
    CHECK(r.to_double() == doctest::Approx(1511.0).epsilon(1e-12));
    CHECK(big.bit_length() > 900); // exercises the scaled conversion path
}

TEST_CASE("Rational exact identities") {
    // (a/b) * (b/a) == 1, (a/b) + (-a/b) == 0
    std::mt19937_64 rng(37);
    for (int i = 0; i < 500; ++i) {
        const std::int64_t a = static_cast<std::int64_t>(rng() % 10000) + 1;
        const std::int64_t b = static_cast<std::int64_t>(rng() % 10000) + 1;
        const Rational r{BigInt(a), BigInt(b)};
        CHECK(r * (Rational(1) / r) == Rational(1));
        CHECK((r - r).is_zero());
        CHECK(r / r == Rational(1));
    }
}
