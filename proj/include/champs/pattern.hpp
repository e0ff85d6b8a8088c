#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace champs {

// Difference pattern of k+1 consecutive primes: strictly increasing positive
// offsets d_1 < ... < d_k measured from the first prime of the run.
class GapPattern {
public:
    GapPattern() = default; // empty placeholder; real patterns have k >= 1
    explicit GapPattern(std::vector<std::uint32_t> diffs);
    static GapPattern parse(const std::string& text); // dash-joined, e.g. "2-6"

    const std::vector<std::uint32_t>& diffs() const { return diffs_; }
    int k() const { return static_cast<int>(diffs_.size()); }
    std::uint32_t last() const { return diffs_.back(); }

    std::uint64_t gcd() const;
    std::vector<std::uint64_t> offsets_with_zero() const; // {0, d_1, ..., d_k}

    std::string to_string() const; // dash-joined

    auto operator<=>(const GapPattern& o) const = default;

private:
    std::vector<std::uint32_t> diffs_;
};

struct GapPatternHash {
    std::size_t operator()(const GapPattern& p) const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (std::uint32_t d : p.diffs()) {
            h ^= d;
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

} // namespace champs
