#pragma once

#include "champs/bigint.hpp"
#include "champs/pattern.hpp"
#include "champs/prime_engine.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace champs {

// Truncated Euler product for the singular series with a certified tail.
// When zero_flag is set the series vanishes exactly (some prime has all
// residue classes occupied) and value = tail_bound = 0. Otherwise the true
// value lies in [value*exp(-tail_bound), value*exp(+tail_bound)].
struct SingularSeriesValue {
    double value = 0.0;
    std::uint64_t truncation_prime = 0;
    double tail_bound = 0.0;
    bool zero_flag = false;

    double lower_enclosure() const;
    double upper_enclosure() const;
};

// Number of distinct residue classes mod p occupied by D. p must be prime.
int nu(const std::vector<std::uint64_t>& D, std::uint64_t p);

// Exact p-local factor (1 - 1/p)^{-n} (1 - nu_D(p)/p), n = |D|.
Rational local_factor(const std::vector<std::uint64_t>& D, std::uint64_t p);

// log of the p-local factor in long double; -inf when nu_p == p.
long double log_local_factor(int n, int nu_p, std::uint64_t p);

// Smallest admissible truncation prime for a set of span `span` and size n:
// the tail bound |log factor| <= n^2/p^2 needs p > max(span, 2n^2, n).
std::uint64_t min_truncation_prime(std::uint64_t span, int n);

// Truncated singular series over all primes <= truncation_prime. D is any
// nonempty set of distinct integers; it is normalized by subtracting min(D)
// first, so shifted copies agree bit for bit.
SingularSeriesValue singular_series(std::vector<std::uint64_t> D, std::uint64_t truncation_prime);
SingularSeriesValue singular_series(std::vector<std::uint64_t> D, std::uint64_t truncation_prime,
                                    std::span<const std::uint64_t> primes);

struct GcdDecomposition {
    std::uint64_t d = 1;                 // gcd of the pattern elements
    std::vector<std::uint32_t> reduced;  // coprime pattern D', d * D' = D
};
GcdDecomposition gcd_decompose(const GapPattern& D);

// Product of the first n primes.
BigUint primorial(unsigned n);

// Largest primorial <= y. The double overload requires y >= 2; the exact
// overload accepts any y >= 2 as a big integer.
BigUint floor_primorial(double y);
BigUint floor_primorial_exact(const BigUint& y);

// Product of all positive pairwise differences of a set of distinct values.
BigUint delta_product(const std::vector<std::uint64_t>& elems);

// Sum of 1/p over primes p <= x (compensated), and the Mertens-constant
// estimate sum - log log x.
double mertens_sum(std::uint64_t x, const SieveConfig& cfg = {});
double mertens_constant_estimate(std::uint64_t x, const SieveConfig& cfg = {});

} // namespace champs
