#include "champs/gap_census.hpp"

#include "champs/errors.hpp"
#include "champs/pattern.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

using namespace champs;

namespace {

// Oracle prime list by incremental trial division, independent of the sieve.
std::vector<std::uint64_t> oracle_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        bool prime = true;
        for (std::uint64_t p : primes) {
            if (p * p > n) break;
            if (n % p == 0) { prime = false; break; }
        }
        if (prime) primes.push_back(n);
    }
    return primes;
}

bool oracle_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Naive census: list windows of k+1 consecutive primes directly.
std::map<GapPattern, std::uint64_t> oracle_census(std::uint64_t x, int k, Anchor anchor) {
    const auto primes = oracle_primes(x + 40000); // slack for smallest-anchor windows
    std::map<GapPattern, std::uint64_t> counts;
    for (std::size_t i = 0; i + k < primes.size(); ++i) {
        const std::uint64_t anchor_value =
            anchor == Anchor::largest_le_x ? primes[i + k] : primes[i];
        if (anchor_value > x) {
            if (anchor == Anchor::smallest_le_x) break;
            continue;
        }
        std::vector<std::uint32_t> diffs;
        for (int j = 1; j <= k; ++j)
            diffs.push_back(static_cast<std::uint32_t>(primes[i + j] - primes[i]));
        ++counts[GapPattern(std::move(diffs))];
    }
    return counts;
}

std::map<GapPattern, std::uint64_t> run_single(std::uint64_t x, int k, Anchor anchor,
                                               unsigned threads = 1) {
    SieveConfig cfg;
    cfg.threads = threads;
    cfg.segment_size = 1 << 16;
    return run_census({x}, k, anchor, cfg).front().counts;
}

} // namespace

TEST_CASE("census x=50 k=1 matches the hand enumeration") {
    const auto counts = run_single(50, 1, Anchor::largest_le_x);
    REQUIRE(counts.size() == 4);
    CHECK(counts.at(GapPattern({1})) == 1);
    CHECK(counts.at(GapPattern({2})) == 6);
    CHECK(counts.at(GapPattern({4})) == 5);
    CHECK(counts.at(GapPattern({6})) == 2);
    // smallest-element anchoring picks up the straddling window (47, 53)
    const auto small = run_single(50, 1, Anchor::smallest_le_x);
    CHECK(small.at(GapPattern({6})) == 3);
    CHECK(small.at(GapPattern({2})) == 6);
}

TEST_CASE("census x=50 k=2 matches the 13-triple enumeration") {
    const auto counts = run_single(50, 2, Anchor::largest_le_x);
    std::uint64_t total = 0;
    for (const auto& [pat, c] : counts) total += c;
    CHECK(total == 13);
    CHECK(counts.at(GapPattern({2, 6})) == 4);
    CHECK(counts.at(GapPattern({4, 6})) == 3);

    const auto champs = champions_of(run_census({50}, 2, Anchor::largest_le_x).front());
    REQUIRE(champs.champions.size() == 1);
    CHECK(champs.champions[0] == GapPattern({2, 6}));
    CHECK(champs.max_count == 4);
    CHECK(champs.gcds.at(GapPattern({2, 6})) == 2);
}

TEST_CASE("census x=3 k=1 counts only the pair (2,3)") {
    const auto counts = run_single(3, 1, Anchor::largest_le_x);
    REQUIRE(counts.size() == 1);
    CHECK(counts.at(GapPattern({1})) == 1);
}

TEST_CASE("census equals the naive oracle for x = 1e4, k = 1..3, both anchors") {
    for (int k = 1; k <= 3; ++k) {
        for (Anchor anchor : {Anchor::largest_le_x, Anchor::smallest_le_x}) {
            CAPTURE(k);
            const auto expected = oracle_census(10000, k, anchor);
            CHECK(run_single(10000, k, anchor) == expected);
        }
    }
}

TEST_CASE("census handles the maximal window length k = 8") {
    const auto expected = oracle_census(5000, 8, Anchor::largest_le_x);
    CHECK(run_single(5000, 8, Anchor::largest_le_x) == expected);
    std::uint64_t total = 0;
    for (const auto& [pat, c] : expected) total += c;
    CHECK(total == oracle_primes(5000).size() - 8);
}

TEST_CASE("census is deterministic across thread counts") {
    const auto a = run_single(200000, 2, Anchor::largest_le_x, 1);
    const auto b = run_single(200000, 2, Anchor::largest_le_x, 4);
    CHECK(a == b);
}

TEST_CASE("snapshots are cumulative and consistent with single runs") {
    const auto snaps = run_census({100, 1000, 10000}, 1, Anchor::largest_le_x);
    REQUIRE(snaps.size() == 3);
    for (const auto& snap : snaps)
        CHECK(snap.counts == run_single(snap.x, 1, Anchor::largest_le_x));
    // monotone counts
    for (const auto& [pat, c] : snaps[0].counts) {
        CHECK(snaps[1].counts.at(pat) >= c);
        CHECK(snaps[2].counts.at(pat) >= snaps[1].counts.at(pat));
    }
}

TEST_CASE("total window count equals pi(x) - k under largest anchoring") {
    const auto primes = oracle_primes(100000);
    for (int k = 1; k <= 3; ++k) {
        const auto counts = run_single(100000, k, Anchor::largest_le_x);
        std::uint64_t total = 0;
        for (const auto& [pat, c] : counts) total += c;
        CHECK(total == primes.size() - static_cast<std::size_t>(k));
    }
}

TEST_CASE("anchor conventions differ only by windows straddling the boundary") {
    for (std::uint64_t x : {10ull, 50ull, 101ull, 500ull, 997ull, 2000ull}) {
        for (int k = 1; k <= 2; ++k) {
            const auto largest = oracle_census(x, k, Anchor::largest_le_x);
            const auto smallest = oracle_census(x, k, Anchor::smallest_le_x);
            CHECK(run_single(x, k, Anchor::largest_le_x) == largest);
            CHECK(run_single(x, k, Anchor::smallest_le_x) == smallest);
            std::vector<GapPattern> keys;
            for (const auto& [pat, c] : largest) keys.push_back(pat);
            for (const auto& [pat, c] : smallest)
                if (largest.find(pat) == largest.end()) keys.push_back(pat);
            for (const auto& pat : keys) {
                const std::uint64_t nl = largest.count(pat) ? largest.at(pat) : 0;
                const std::uint64_t ns = smallest.count(pat) ? smallest.at(pat) : 0;
                // occurrences anchored (smallest) inside (x - d_k, x]
                const auto lo_census =
                    x > pat.last() ? oracle_census(x - pat.last(), k, Anchor::smallest_le_x)
                                   : std::map<GapPattern, std::uint64_t>{};
                const std::uint64_t ns_lo = lo_census.count(pat) ? lo_census.at(pat) : 0;
                const std::uint64_t straddle = ns - ns_lo;
                CHECK(ns >= nl);
                CHECK(ns - nl <= straddle);
            }
        }
    }
}

TEST_CASE("champions_of rejects an empty snapshot and preserves ties") {
    CensusSnapshot empty;
    empty.k = 1;
    CHECK_THROWS_AS(champions_of(empty), std::domain_error);

    CensusSnapshot tie;
    tie.x = 100;
    tie.k = 1;
    tie.counts.emplace(GapPattern({2}), 7);
    tie.counts.emplace(GapPattern({4}), 7);
    tie.counts.emplace(GapPattern({6}), 3);
    const auto rec = champions_of(tie);
    REQUIRE(rec.champions.size() == 2);
    CHECK(rec.champions[0] == GapPattern({2}));
    CHECK(rec.champions[1] == GapPattern({4}));
    CHECK(rec.max_count == 7);
}

TEST_CASE("single-pattern snapshot yields that pattern") {
    CensusSnapshot snap;
    snap.x = 10;
    snap.k = 1;
    snap.counts.emplace(GapPattern({2}), 1);
    const auto rec = champions_of(snap);
    REQUIRE(rec.champions.size() == 1);
    CHECK(rec.champions[0] == GapPattern({2}));
}

TEST_CASE("run_census validates inputs") {
    CHECK_THROWS_AS(run_census({100}, 0, Anchor::largest_le_x), std::domain_error);
    CHECK_THROWS_AS(run_census({100}, 9, Anchor::largest_le_x), std::domain_error);
    CHECK_THROWS_AS(run_census({}, 1, Anchor::largest_le_x), std::domain_error);
    CHECK_THROWS_AS(run_census({100, 100}, 1, Anchor::largest_le_x), std::domain_error);
    CHECK_THROWS_AS(run_census({1}, 1, Anchor::largest_le_x), std::domain_error);
}

TEST_CASE("scanner journal round trip continues a run exactly") {
    for (Anchor anchor : {Anchor::largest_le_x, Anchor::smallest_le_x}) {
        CensusScanner scanner(2, anchor);
        run_census(scanner, {10000}, {});
        const std::string journal = scanner.serialize();
        CensusScanner restored = CensusScanner::deserialize(journal);
        CHECK(restored.k() == scanner.k());
        CHECK(restored.last_prime() == scanner.last_prime());
        CHECK(restored.window() == scanner.window());

        auto resumed = run_census(restored, {30000}, {});
        auto direct = run_census({30000}, 2, anchor);
        CHECK(resumed.front().counts == direct.front().counts);
    }
}

TEST_CASE("pi_tuple_empirical worked examples") {
    CHECK(pi_tuple_empirical(100, {0, 2}) == 8);
    CHECK(pi_tuple_empirical(100, {0}) == 25);
    CHECK(pi_tuple_empirical(10, {0, 2, 4}) == 1); // only m = 3
    CHECK_THROWS_AS(pi_tuple_empirical(100, {2, 4}), std::domain_error);  // no 0
    CHECK_THROWS_AS(pi_tuple_empirical(100, {0, 2, 2}), std::domain_error);
    CHECK_THROWS_AS(pi_tuple_empirical(0, {0}), std::domain_error);
}

TEST_CASE("pi_tuple_empirical agrees with direct counting") {
    for (std::uint64_t x : {50ull, 997ull, 5000ull}) {
        for (const auto& offsets : std::vector<std::vector<std::uint64_t>>{
                 {0}, {0, 2}, {0, 6}, {0, 4, 6}, {0, 2, 6, 8}}) {
            std::uint64_t expected = 0;
            for (std::uint64_t m = 1; m <= x; ++m) {
                bool all = true;
                for (std::uint64_t d : offsets)
                    if (!oracle_is_prime(m + d)) { all = false; break; }
                if (all) ++expected;
            }
            CHECK(pi_tuple_empirical(x, offsets) == expected);
        }
    }
}

namespace {

// Oracle for the truncated inclusion-exclusion sums: enumerate subsets
// explicitly and count each offset set by trial division.
std::int64_t oracle_truncated_sum(std::uint64_t x, const GapPattern& D, int levels,
                                  std::uint32_t position_cap) {
    std::vector<std::uint32_t> interior;
    for (std::uint32_t m = 1; m < position_cap; ++m) {
        if (std::find(D.diffs().begin(), D.diffs().end(), m) == D.diffs().end())
            interior.push_back(m);
    }
    std::int64_t total = 0;
    std::vector<std::uint32_t> chosen;
    auto count_tuple = [&]() {
        std::vector<std::uint64_t> offsets = D.offsets_with_zero();
        for (auto m : chosen) offsets.push_back(m);
        std::sort(offsets.begin(), offsets.end());
        std::int64_t c = 0;
        for (std::uint64_t m = 1; m <= x; ++m) {
            bool all = true;
            for (std::uint64_t d : offsets)
                if (!oracle_is_prime(m + d)) { all = false; break; }
            if (all) ++c;
        }
        return c;
    };
    auto rec = [&](auto&& self, std::size_t start) -> void {
        const int sign = chosen.size() % 2 == 0 ? 1 : -1;
        total += sign * count_tuple();
        if (static_cast<int>(chosen.size()) == levels) return;
        for (std::size_t i = start; i < interior.size(); ++i) {
            chosen.push_back(interior[i]);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    if (levels >= 0) rec(rec, 0);
    return total;
}

} // namespace

TEST_CASE("bonferroni sums match the subset-enumeration oracle at x = 2000") {
    for (const auto& diffs : std::vector<std::vector<std::uint32_t>>{{6}, {4}, {2, 6}}) {
        const GapPattern D(diffs);
        for (int I : {0, 1}) {
            const auto rep = bonferroni_check(2000, D, I, D.last());
            CHECK(rep.lower == oracle_truncated_sum(2000, D, 2 * I + 1, D.last()));
            CHECK(rep.upper == oracle_truncated_sum(2000, D, 2 * I, D.last()));
            CHECK(rep.holds());
        }
    }
}

TEST_CASE("bonferroni sandwich and tightening at x = 1e4") {
    for (const auto& diffs : std::vector<std::vector<std::uint32_t>>{{6}, {4}, {2, 6}}) {
        const GapPattern D(diffs);
        std::int64_t prev_lower = INT64_MIN, prev_upper = INT64_MAX;
        for (int I : {0, 1}) {
            const auto rep = bonferroni_check(10000, D, I, D.last());
            CHECK(rep.holds());
            CHECK(rep.lower >= prev_lower);
            CHECK(rep.upper <= prev_upper);
            prev_lower = rep.lower;
            prev_upper = rep.upper;
        }
    }
}

TEST_CASE("bonferroni I=0 upper bound is the bare tuple count") {
    const auto rep = bonferroni_check(10000, GapPattern({6}), 0, 6);
    CHECK(rep.upper == static_cast<std::int64_t>(pi_tuple_empirical(10000, {0, 6})));
    CHECK(rep.lower <= static_cast<std::int64_t>(rep.census_count));
}

TEST_CASE("gap 2 pairs are always consecutive: N equals pi_2 exactly") {
    for (std::uint64_t x : {100ull, 1000ull, 10000ull}) {
        const auto rep = bonferroni_check(x, GapPattern({2}), 0, 2);
        CHECK(rep.census_count == pi_tuple_empirical(x, {0, 2}));
        CHECK(rep.upper == static_cast<std::int64_t>(rep.census_count));
        CHECK(rep.lower == static_cast<std::int64_t>(rep.census_count));
    }
}

TEST_CASE("bonferroni census side matches run_census under smallest anchoring") {
    for (const auto& diffs : std::vector<std::vector<std::uint32_t>>{{6}, {2, 6}}) {
        const GapPattern D(diffs);
        const auto rep = bonferroni_check(5000, D, 0, D.last());
        const auto counts = run_single(5000, D.k(), Anchor::smallest_le_x);
        const std::uint64_t from_census = counts.count(D) ? counts.at(D) : 0;
        CHECK(rep.census_count == from_census);
    }
}

TEST_CASE("bonferroni input validation") {
    CHECK_THROWS_AS(bonferroni_check(10000, GapPattern({6}), 1, 7), std::domain_error);
    CHECK_THROWS_AS(bonferroni_check(10000, GapPattern({6}), 1, 0), std::domain_error);
    CHECK_THROWS_AS(bonferroni_check(1, GapPattern({6}), 0, 6), std::domain_error);
    CHECK_THROWS_AS(bonferroni_check(1000000000, GapPattern({30}), 3, 30), BudgetError);
    try {
        bonferroni_check(1000000000, GapPattern({30}), 3, 30);
    } catch (const BudgetError& e) {
        CHECK(std::string(e.what()).find("budget") != std::string::npos);
    }
}
