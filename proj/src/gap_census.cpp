#include "champs/gap_census.hpp"

#include "champs/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace champs {

std::string to_string(Anchor a) {
    return a == Anchor::largest_le_x ? "largest_le_x" : "smallest_le_x";
}

Anchor anchor_from_string(const std::string& s) {
    if (s == "largest_le_x" || s == "largest") return Anchor::largest_le_x;
    if (s == "smallest_le_x" || s == "smallest") return Anchor::smallest_le_x;
    throw std::domain_error("unknown anchor convention '" + s + "'");
}

std::uint64_t CensusSnapshot::total() const {
    std::uint64_t t = 0;
    for (const auto& [pat, c] : counts) {
        (void)pat;
        t += c;
    }
    return t;
}

CensusScanner::CensusScanner(int k, Anchor anchor) : k_(k), anchor_(anchor) {
    if (k < 1 || k > 8) throw std::domain_error("census: k must be in [1, 8]");
    window_.reserve(static_cast<std::size_t>(k) + 1);
}

std::optional<std::uint64_t> CensusScanner::pending_anchor(std::uint64_t p) const {
    if (window_.size() < static_cast<std::size_t>(k_)) return std::nullopt;
    if (anchor_ == Anchor::largest_le_x) return p;
    // Window about to complete is the trailing k primes plus p.
    return window_.size() == static_cast<std::size_t>(k_) ? window_[0] : window_[1];
}

void CensusScanner::feed(std::uint64_t p) {
    if (p <= last_prime_) throw std::domain_error("census: primes must be fed in increasing order");
    last_prime_ = p;
    if (window_.size() == static_cast<std::size_t>(k_) + 1)
        window_.erase(window_.begin());
    window_.push_back(p);
    if (window_.size() == static_cast<std::size_t>(k_) + 1) {
        count_current_window();
        ++windows_;
    }
}

void CensusScanner::count_current_window() {
    if (k_ == 1) {
        const std::uint64_t gap = window_[1] - window_[0];
        if (gap >= gap_counts_.size()) gap_counts_.resize(gap + 1, 0);
        ++gap_counts_[gap];
        return;
    }
    std::vector<std::uint32_t> diffs(static_cast<std::size_t>(k_));
    for (int i = 1; i <= k_; ++i)
        diffs[static_cast<std::size_t>(i) - 1] =
            static_cast<std::uint32_t>(window_[static_cast<std::size_t>(i)] - window_[0]);
    ++counts_[GapPattern(std::move(diffs))];
}

CensusSnapshot CensusScanner::snapshot(std::uint64_t x) const {
    CensusSnapshot snap;
    snap.x = x;
    snap.k = k_;
    snap.anchor = anchor_;
    if (k_ == 1) {
        for (std::uint64_t g = 1; g < gap_counts_.size(); ++g)
            if (gap_counts_[g])
                snap.counts.emplace(GapPattern({static_cast<std::uint32_t>(g)}), gap_counts_[g]);
    } else {
        for (const auto& [pat, c] : counts_) snap.counts.emplace(pat, c);
    }
    return snap;
}

std::string CensusScanner::serialize() const {
    nlohmann::json j;
    j["k"] = k_;
    j["anchor"] = to_string(anchor_);
    j["last_prime"] = last_prime_;
    j["window"] = window_;
    j["windows_counted"] = windows_;
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& [pat, c] : snapshot(last_prime_).counts)
        counts.push_back({{"pattern", pat.to_string()}, {"count", c}});
    j["counts"] = counts;
    return j.dump(2);
}

CensusScanner CensusScanner::deserialize(const std::string& json) {
    const auto j = nlohmann::json::parse(json);
    CensusScanner s(j.at("k").get<int>(), anchor_from_string(j.at("anchor").get<std::string>()));
    s.last_prime_ = j.at("last_prime").get<std::uint64_t>();
    s.window_ = j.at("window").get<std::vector<std::uint64_t>>();
    s.windows_ = j.at("windows_counted").get<std::uint64_t>();
    if (s.window_.size() > static_cast<std::size_t>(s.k_) + 1 ||
        (!s.window_.empty() && s.window_.back() != s.last_prime_))
        throw std::domain_error("census journal is inconsistent");
    for (const auto& entry : j.at("counts")) {
        GapPattern pat = GapPattern::parse(entry.at("pattern").get<std::string>());
        const auto c = entry.at("count").get<std::uint64_t>();
        if (s.k_ == 1) {
            const std::uint64_t gap = pat.last();
            if (gap >= s.gap_counts_.size()) s.gap_counts_.resize(gap + 1, 0);
            s.gap_counts_[gap] = c;
        } else {
            s.counts_[pat] = c;
        }
    }
    return s;
}

namespace {

void validate_checkpoints(const std::vector<std::uint64_t>& checkpoints) {
    if (checkpoints.empty()) throw std::domain_error("census: need at least one checkpoint");
    std::uint64_t prev = 1;
    for (std::uint64_t c : checkpoints) {
        if (c < 2) throw std::domain_error("census: checkpoints must be >= 2");
        if (c <= prev && prev != 1)
            throw std::domain_error("census: checkpoints must be strictly increasing");
        prev = c;
    }
}

// Stream slack past the last checkpoint so windows anchored at their smallest
// element can complete; covers any prime gap at reachable scales.
std::uint64_t census_slack(int k) { return 4000ull * static_cast<std::uint64_t>(k) + 4000; }

} // namespace

std::vector<CensusSnapshot> run_census(CensusScanner& scanner,
                                       const std::vector<std::uint64_t>& checkpoints,
                                       const SieveConfig& cfg) {
    validate_checkpoints(checkpoints);
    for (std::uint64_t c : checkpoints)
        if (c < scanner.last_prime())
            throw std::domain_error("census: checkpoint below the scanner's resume position");

    const std::uint64_t last_cp = checkpoints.back();
    std::uint64_t limit = last_cp;
    if (scanner.anchor() == Anchor::smallest_le_x) {
        const std::uint64_t slack = census_slack(scanner.k());
        if (limit > kMaxSieveLimit - slack)
            throw CapacityError("census: checkpoint too close to the supported sieve limit");
        limit += slack;
    }

    std::vector<CensusSnapshot> snapshots;
    std::size_t next_cp = 0;
    const std::uint64_t start = scanner.last_prime() + 1;

    SegmentStream stream(limit, cfg.segment_size, cfg.threads, start);
    bool done = false;
    while (!done) {
        auto seg = stream.next();
        if (!seg) break;
        for (std::uint64_t p : seg->primes) {
            if (auto a = scanner.pending_anchor(p)) {
                while (next_cp < checkpoints.size() && *a > checkpoints[next_cp]) {
                    snapshots.push_back(scanner.snapshot(checkpoints[next_cp]));
                    ++next_cp;
                }
                if (next_cp == checkpoints.size()) { done = true; break; }
            }
            scanner.feed(p);
        }
    }
    while (next_cp < checkpoints.size()) {
        snapshots.push_back(scanner.snapshot(checkpoints[next_cp]));
        ++next_cp;
    }
    return snapshots;
}

std::vector<CensusSnapshot> run_census(const std::vector<std::uint64_t>& checkpoints, int k,
                                       Anchor anchor, const SieveConfig& cfg) {
    CensusScanner scanner(k, anchor);
    return run_census(scanner, checkpoints, cfg);
}

ChampionRecord champions_of(const CensusSnapshot& snapshot) {
    if (snapshot.counts.empty())
        throw std::domain_error("champions_of: snapshot has no counted windows");
    ChampionRecord rec;
    rec.x = snapshot.x;
    rec.k = snapshot.k;
    for (const auto& [pat, c] : snapshot.counts)
        if (c > rec.max_count) rec.max_count = c;
    for (const auto& [pat, c] : snapshot.counts) {
        if (c == rec.max_count) {
            rec.champions.push_back(pat);
            rec.gcds.emplace(pat, pat.gcd());
        }
    }
    return rec;
}

std::uint64_t pi_tuple_empirical(std::uint64_t x, std::vector<std::uint64_t> offsets) {
    if (x < 1) throw std::domain_error("pi_tuple: x must be >= 1");
    if (offsets.empty()) throw std::domain_error("pi_tuple: offsets must be nonempty");
    std::sort(offsets.begin(), offsets.end());
    if (std::adjacent_find(offsets.begin(), offsets.end()) != offsets.end())
        throw std::domain_error("pi_tuple: offsets must be distinct");
    if (offsets.front() != 0) throw std::domain_error("pi_tuple: offsets must include 0");
    const std::uint64_t dmax = offsets.back();
    if (x > kMaxSieveLimit - dmax - 2) throw CapacityError("pi_tuple: x exceeds supported range");

    constexpr std::uint64_t kChunk = 1ull << 24;
    std::uint64_t count = 0;
    for (std::uint64_t lo = 1; lo <= x; lo += kChunk) {
        const std::uint64_t hi = std::min(x + 1, lo + kChunk); // anchors in [lo, hi)
        const auto bits = primality_range(lo, hi + dmax);
        for (std::uint64_t m = lo; m < hi; ++m) {
            if (!bits[m - lo]) continue; // offset 0 requires m prime
            bool all = true;
            for (std::size_t i = 1; i < offsets.size(); ++i) {
                if (!bits[m + offsets[i] - lo]) { all = false; break; }
            }
            if (all) ++count;
        }
    }
    return count;
}

namespace {

// Count of anchors m <= x (m prime) matching D exactly as consecutive primes:
// every m + d_i prime, every interior position composite.
std::uint64_t census_count_smallest_anchor(std::uint64_t x, const GapPattern& D) {
    const std::uint64_t dk = D.last();
    std::vector<bool> is_offset(dk + 1, false);
    for (std::uint32_t d : D.diffs()) is_offset[d] = true;

    constexpr std::uint64_t kChunk = 1ull << 24;
    std::uint64_t count = 0;
    for (std::uint64_t lo = 1; lo <= x; lo += kChunk) {
        const std::uint64_t hi = std::min(x + 1, lo + kChunk);
        const auto bits = primality_range(lo, hi + dk);
        for (std::uint64_t m = lo; m < hi; ++m) {
            if (!bits[m - lo]) continue;
            bool ok = true;
            for (std::uint64_t j = 1; j <= dk && ok; ++j) {
                const bool prime = bits[m + j - lo];
                if (prime != is_offset[j]) ok = false;
            }
            if (ok) ++count;
        }
    }
    return count;
}

void subset_sums(std::uint64_t x, const std::vector<std::uint64_t>& base_offsets,
                 const std::vector<std::uint32_t>& positions, int max_size,
                 std::vector<std::int64_t>& level_sums) {
    level_sums.assign(static_cast<std::size_t>(max_size) + 1, 0);
    level_sums[0] = static_cast<std::int64_t>(pi_tuple_empirical(x, base_offsets));
    std::vector<std::uint32_t> chosen;
    // Depth-first over subsets of interior positions up to max_size.
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (!chosen.empty()) {
            auto offsets = base_offsets;
            for (std::uint32_t m : chosen) offsets.push_back(m);
            level_sums[chosen.size()] +=
                static_cast<std::int64_t>(pi_tuple_empirical(x, std::move(offsets)));
        }
        if (chosen.size() == static_cast<std::size_t>(max_size)) return;
        for (std::size_t i = start; i < positions.size(); ++i) {
            chosen.push_back(positions[i]);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
}

} // namespace

BonferroniReport bonferroni_check(std::uint64_t x, const GapPattern& D, int I, std::uint32_t H,
                                  std::uint64_t budget) {
    if (x < 2) throw std::domain_error("bonferroni: x must be >= 2");
    if (I < 0) throw std::domain_error("bonferroni: I must be >= 0");
    const std::uint64_t dk = D.last();
    if (H < 1 || H > dk) throw std::domain_error("bonferroni: need 1 <= H <= d_k");

    // Work guard: the subset enumeration touches up to d_k^(2I+1) offset sets,
    // each scanned over [1, x].
    long double work = std::pow(static_cast<long double>(dk), 2.0L * I + 1.0L) *
                       static_cast<long double>(x);
    if (work > static_cast<long double>(budget))
        throw BudgetError("bonferroni: d_k^(2I+1) * x = " + std::to_string(static_cast<double>(work)) +
                          " exceeds budget " + std::to_string(budget) +
                          "; rerun with a budget of at least that");

    BonferroniReport rep;
    rep.x = x;
    rep.pattern = D;
    rep.depth = I;
    rep.h = H;
    rep.census_count = census_count_smallest_anchor(x, D);

    std::vector<bool> in_D(dk + 1, false);
    for (std::uint32_t d : D.diffs()) in_D[d] = true;
    std::vector<std::uint32_t> interior_lower, interior_upper;
    for (std::uint32_t m = 1; m < dk; ++m)
        if (!in_D[m]) interior_lower.push_back(m);
    for (std::uint32_t m = 1; m < H; ++m)
        if (!in_D[m]) interior_upper.push_back(m);

    const auto base = D.offsets_with_zero();
    subset_sums(x, base, interior_lower, 2 * I + 1, rep.lower_levels);
    subset_sums(x, base, interior_upper, 2 * I, rep.upper_levels);

    for (std::size_t i = 0; i < rep.lower_levels.size(); ++i)
        rep.lower += (i % 2 == 0 ? 1 : -1) * rep.lower_levels[i];
    for (std::size_t i = 0; i < rep.upper_levels.size(); ++i)
        rep.upper += (i % 2 == 0 ? 1 : -1) * rep.upper_levels[i];
    return rep;
}

} // namespace champs
