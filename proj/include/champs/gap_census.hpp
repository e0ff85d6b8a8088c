#pragma once

#include "champs/pattern.hpp"
#include "champs/prime_engine.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace champs {

// A window of k+1 consecutive primes p_n, ..., p_{n+k} is attributed to a
// checkpoint x either by its largest element (p_{n+k} <= x) or its smallest
// (p_n <= x). Both conventions are implemented; they differ only by windows
// straddling the boundary.
enum class Anchor { largest_le_x, smallest_le_x };

std::string to_string(Anchor a);
Anchor anchor_from_string(const std::string& s);

struct CensusSnapshot {
    std::uint64_t x = 0;
    int k = 0;
    Anchor anchor = Anchor::largest_le_x;
    std::map<GapPattern, std::uint64_t> counts;

    std::uint64_t total() const;
};

struct ChampionRecord {
    std::uint64_t x = 0;
    int k = 0;
    std::uint64_t max_count = 0;
    std::vector<GapPattern> champions;          // every argmax pattern, sorted
    std::map<GapPattern, std::uint64_t> gcds;   // champion -> gcd of its diffs
};

// Incremental scanner over the ordered prime sequence. Feed primes in strictly
// increasing order; every full window of k+1 consecutive primes is counted
// once under its difference pattern. Windows are counted in nondecreasing
// anchor order, so a driver can cut snapshots at checkpoints by consulting
// pending_anchor() before feeding.
class CensusScanner {
public:
    CensusScanner(int k, Anchor anchor); // 1 <= k <= 8

    // Anchor of the window that feeding p would complete, if any.
    std::optional<std::uint64_t> pending_anchor(std::uint64_t p) const;
    void feed(std::uint64_t p);

    int k() const { return k_; }
    Anchor anchor() const { return anchor_; }
    std::uint64_t last_prime() const { return last_prime_; }
    const std::vector<std::uint64_t>& window() const { return window_; }
    std::uint64_t windows_counted() const { return windows_; }

    // Snapshot of the cumulative counts labeled with checkpoint x. Only
    // meaningful when every counted window has anchor <= x.
    CensusSnapshot snapshot(std::uint64_t x) const;

    // JSON journal: scan position (last prime), open window, counts.
    std::string serialize() const;
    static CensusScanner deserialize(const std::string& json);

private:
    int k_;
    Anchor anchor_;
    std::vector<std::uint64_t> window_;
    std::uint64_t last_prime_ = 0;
    std::uint64_t windows_ = 0;
    std::vector<std::uint64_t> gap_counts_; // k == 1 fast path, indexed by gap
    std::unordered_map<GapPattern, std::uint64_t, GapPatternHash> counts_;

    void count_current_window();
};

// Cumulative snapshots at each checkpoint. Checkpoints must be strictly
// increasing and >= 2; k in [1, 8].
std::vector<CensusSnapshot> run_census(const std::vector<std::uint64_t>& checkpoints, int k,
                                       Anchor anchor, const SieveConfig& cfg = {});

// Same, continuing from an existing scanner (used for resume). Checkpoints
// must all be >= scanner.last_prime().
std::vector<CensusSnapshot> run_census(CensusScanner& scanner,
                                       const std::vector<std::uint64_t>& checkpoints,
                                       const SieveConfig& cfg = {});

ChampionRecord champions_of(const CensusSnapshot& snapshot);

// Count of m <= x such that m + d is prime for every offset d. Offsets must
// be distinct and include 0.
std::uint64_t pi_tuple_empirical(std::uint64_t x, std::vector<std::uint64_t> offsets);

inline constexpr std::uint64_t kDefaultBonferroniBudget = 4'000'000'000'000ull;

// Truncated inclusion-exclusion bounds for N_k(x, D), both sides anchored at
// the window's smallest element so the sandwich is an exact finite statement.
struct BonferroniReport {
    std::uint64_t x = 0;
    GapPattern pattern;
    int depth = 0;      // I: lower uses 2I+1 levels, upper 2I
    std::uint32_t h = 0;
    std::uint64_t census_count = 0;
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    std::vector<std::int64_t> lower_levels; // S_i, interior positions < d_k
    std::vector<std::int64_t> upper_levels; // S_i, interior positions < H
    bool holds() const {
        return lower <= static_cast<std::int64_t>(census_count) &&
               static_cast<std::int64_t>(census_count) <= upper;
    }
};

BonferroniReport bonferroni_check(std::uint64_t x, const GapPattern& D, int I, std::uint32_t H,
                                  std::uint64_t budget = kDefaultBonferroniBudget);

} // namespace champs
