#include "champs/pattern.hpp"

#include <numeric>
#include <stdexcept>

namespace champs {

GapPattern::GapPattern(std::vector<std::uint32_t> diffs) : diffs_(std::move(diffs)) {
    if (diffs_.empty()) throw std::domain_error("GapPattern: needs at least one difference");
    std::uint32_t prev = 0;
    for (std::uint32_t d : diffs_) {
        if (d <= prev) throw std::domain_error("GapPattern: differences must be strictly increasing and >= 1");
        prev = d;
    }
}

GapPattern GapPattern::parse(const std::string& text) {
    std::vector<std::uint32_t> diffs;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t dash = text.find('-', pos);
        if (dash == std::string::npos) dash = text.size();
        const std::string part = text.substr(pos, dash - pos);
        if (part.empty()) throw std::domain_error("GapPattern: malformed pattern '" + text + "'");
        std::size_t consumed = 0;
        unsigned long v = std::stoul(part, &consumed);
        if (consumed != part.size() || v == 0 || v > UINT32_MAX)
            throw std::domain_error("GapPattern: malformed pattern '" + text + "'");
        diffs.push_back(static_cast<std::uint32_t>(v));
        pos = dash + 1;
    }
    return GapPattern(std::move(diffs));
}

std::uint64_t GapPattern::gcd() const {
    std::uint64_t g = 0;
    for (std::uint32_t d : diffs_) g = std::gcd(g, static_cast<std::uint64_t>(d));
    return g;
}

std::vector<std::uint64_t> GapPattern::offsets_with_zero() const {
    std::vector<std::uint64_t> out;
    out.reserve(diffs_.size() + 1);
    out.push_back(0);
    for (std::uint32_t d : diffs_) out.push_back(d);
    return out;
}

std::string GapPattern::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < diffs_.size(); ++i) {
        if (i) out.push_back('-');
        out += std::to_string(diffs_[i]);
    }
    return out;
}

} // namespace champs
