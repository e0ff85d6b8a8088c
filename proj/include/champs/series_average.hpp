#pragma once

#include "champs/bigint.hpp"
#include "champs/singular_series.hpp"

#include <cstdint>
#include <vector>

namespace champs {

// Per-prime data for the ratio S_{d0} = series(D ∪ {d0}) / series(D).
struct RatioTerm {
    std::uint64_t p = 0;
    int nu_base = 0;         // nu_D(p)
    int nu_ext = 0;          // nu_{D ∪ {d0}}(p), nu_base or nu_base + 1
    Rational a_value;        // local ratio minus one, exact
    std::uint64_t f_value = 0; // residue classes of d0 realizing nu_ext
};

// a(p, v) for the two admissible extension values v given nu = nu_D(p):
// extends = false keeps v = nu, extends = true moves to v = nu + 1.
// Requires nu < p.
Rational a_of(std::uint64_t p, int nu_base, bool extends);

RatioTerm ratio_term(const std::vector<std::uint64_t>& D, std::uint64_t d0, std::uint64_t p);

// The local identity behind A(q) = 0: a(p,nu)·nu + a(p,nu+1)·(p-nu) == 0,
// evaluated as exact rationals. nu == p has no extension branch and returns
// the trivial-zero marker.
struct AIdentityWitness {
    std::uint64_t p = 0;
    int nu_base = 0;
    Rational a_same, a_new;
    std::uint64_t f_same = 0, f_new = 0;
    Rational sum;
    bool trivial_zero = false;
};
AIdentityWitness verify_A_identity(std::uint64_t p, const std::vector<std::uint64_t>& D);

// S_{d0} computed two ways: as a quotient of truncated products and as the
// direct product of (1 + a(p, ·)). tail_bound is the combined certified tail
// on the log scale.
struct RatioSeriesValue {
    double quotient_path = 0.0;
    double product_path = 0.0;
    double tail_bound = 0.0;
    bool zero = false; // extension vanishes
};
RatioSeriesValue ratio_S(const std::vector<std::uint64_t>& D, std::uint64_t d0,
                         std::uint64_t truncation_prime);

// Σ_{1<=d0<=H, d0 ∉ D} S_{d0} against the Lemma main term H.
struct AverageReport {
    std::vector<std::uint64_t> D;
    std::uint64_t H = 0;
    double sum = 0.0;
    double deviation = 0.0;  // |sum - H|
    double normalized = 0.0; // deviation / sqrt(H)
    bool trivial = false;    // series(D) = 0, sum trivially 0
};
AverageReport average_ratio_sum(const std::vector<std::uint64_t>& D, std::uint64_t H,
                                std::uint64_t truncation_prime);

// Brute-force Σ series(D_k) over ordered distinct tuples in [1, D]^k against
// Gallagher's leading term D^k and the Montgomery-Soundararajan three-term
// expansion.
struct GallagherReport {
    int k = 0;
    std::uint64_t d_limit = 0;
    std::uint64_t tuple_count = 0; // ordered
    double brute_sum = 0.0;
    double leading = 0.0;
    double ms_three_term = 0.0;
    double rel_err_leading = 0.0;
    double rel_err_ms = 0.0;
};
GallagherReport gallagher_ms_average(int k, std::uint64_t d_limit,
                                     std::uint64_t truncation_prime);

// Σ_{1<=d_1<...<d_{k-2}<H} series(0, d_1, ..., d_{k-2}, D) against
// series({0,D}) H^{k-2}/(k-2)!.
struct OrwReport {
    int k = 0;
    std::uint64_t D = 0;
    std::uint64_t H = 0;
    std::uint64_t term_count = 0;
    double lhs_sum = 0.0;
    double rhs_main = 0.0;
    double deviation = 0.0;  // |lhs - rhs|
    double normalized = 0.0; // |lhs/rhs - 1| * sqrt(H)
    bool degenerate = false; // no tuples in range
};
OrwReport orw_average(int k, std::uint64_t D, std::uint64_t H, std::uint64_t truncation_prime);

} // namespace champs
