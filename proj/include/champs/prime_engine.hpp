#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace champs {

inline constexpr std::uint64_t kDefaultSegmentSize = 1ull << 20; // integers per segment
inline constexpr std::uint64_t kMaxSieveLimit = 1ull << 62;

// Consecutive block of the prime sequence: all primes in [lo, hi).
struct PrimeSegment {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::vector<std::uint64_t> primes;
};

struct SieveConfig {
    std::uint64_t segment_size = kDefaultSegmentSize;
    unsigned threads = 1; // 0 = hardware concurrency
};

// Simple monolithic odd sieve; used for base primes and small limits.
std::vector<std::uint64_t> small_primes_up_to(std::uint64_t limit);

// Byte-per-value primality map for [lo, hi); index v - lo.
std::vector<std::uint8_t> primality_range(std::uint64_t lo, std::uint64_t hi);

// Ordered stream of sieved segments covering [start, limit]. Segments may be
// produced by several workers; next() hands them out in index order.
class SegmentStream {
public:
    SegmentStream(std::uint64_t limit, std::uint64_t segment_size = kDefaultSegmentSize,
                  unsigned threads = 1, std::uint64_t start = 2);
    ~SegmentStream();

    SegmentStream(const SegmentStream&) = delete;
    SegmentStream& operator=(const SegmentStream&) = delete;

    // Next segment in increasing order, or nullopt when the range is done.
    std::optional<PrimeSegment> next();

private:
    struct Impl;
    Impl* impl_;
};

// Drives a SegmentStream and invokes fn for every prime <= limit in order.
void for_each_prime(std::uint64_t limit, const SieveConfig& cfg,
                    const std::function<void(std::uint64_t)>& fn);

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit,
                                        std::uint64_t segment_size = kDefaultSegmentSize,
                                        unsigned threads = 1);

std::uint64_t count_primes_up_to(std::uint64_t limit, const SieveConfig& cfg = {});

// Deterministic for the whole uint64 range (Miller-Rabin with a proven
// witness set, not a probabilistic test).
bool is_prime(std::uint64_t n) noexcept;

// Prime factorization by trial division, (prime, exponent) pairs in
// increasing prime order. Intended for the small n this toolkit meets
// (pattern gcds, Delta products); n must be >= 1.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

// Count of prime factors with multiplicity, e.g. 12 -> 3.
int omega_with_multiplicity(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

} // namespace champs
