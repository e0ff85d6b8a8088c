#pragma once

#include "champs/pattern.hpp"
#include "champs/singular_series.hpp"

#include <cstdint>
#include <vector>

namespace champs {

inline constexpr std::uint64_t kDefaultTruncationPrime = 100000;

// Integral main term: ∫_2^x dt / log^n t, adaptive quadrature with relative
// error around 1e-10. x >= 2 (x == 2 gives 0).
double li_power(double x, int n);

struct PiTuplePrediction {
    SingularSeriesValue series;
    double integral_form = 0.0; // series * ∫_2^x dt/log^n t (preferred)
    double ratio_form = 0.0;    // series * x / log^n x (also reported)
};

// Prediction for the count of m <= x with m + d prime for all offsets d.
// Offsets must include 0. Vanishing series yields zeros with the flag set.
PiTuplePrediction predict_pi_tuple(double x, const std::vector<std::uint64_t>& offsets,
                                   std::uint64_t truncation_prime = kDefaultTruncationPrime);

struct Prediction {
    double x = 0.0;
    GapPattern pattern;
    SingularSeriesValue series;          // series of {0} ∪ D
    double main_term = 0.0;              // series * li_power(x, k+1)
    double main_term_ratio_form = 0.0;   // series * x / log^{k+1} x
    double correction_factor = 0.0;      // 1 - d_k / log x
    double corrected = 0.0;              // main_term * correction_factor
    double sieve_upper = 0.0;            // 2^{k+1} (k+1)! * series * x / log^{k+1} x
    bool regime_warning = false;         // d_k >= log x
};

// First-order corrected prediction for N_k(x, D).
Prediction predict_N(double x, const GapPattern& D,
                     std::uint64_t truncation_prime = kDefaultTruncationPrime);

// Sieve-theoretic upper bound (2^n n!) * series * x / log^n x, n = |offsets|.
// Undefined (error) when the series vanishes.
double sieve_upper_bound(double x, const std::vector<std::uint64_t>& offsets,
                         std::uint64_t truncation_prime = kDefaultTruncationPrime);

struct PatternFamily {
    std::vector<GapPattern> patterns;

    static PatternFamily explicit_list(std::vector<GapPattern> patterns);

    // Every k-pattern with even differences, nonzero series and d_k <= cutoff
    // (default: 3k log x), plus primorial-scaled {1..k} sets.
    static PatternFamily default_family(double x, int k, std::uint32_t dmax_override = 0);
};

struct RankedPrediction {
    GapPattern pattern;
    Prediction prediction;
    int rank = 0; // competition ranking; ties share a rank
};

// Candidates ranked by corrected prediction, zero-series patterns dropped.
// Deterministic: ties ordered lexicographically and annotated by equal ranks.
std::vector<RankedPrediction> predict_champion(double x, int k, const PatternFamily& family,
                                               std::uint64_t truncation_prime = kDefaultTruncationPrime);

} // namespace champs
