#include "champs/reports.hpp"

#include "champs/prime_engine.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <ostream>

namespace champs {

std::string tool_version() { return "0.1.0"; }

std::string metadata_header(const std::string& command) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return "# champs " + tool_version() + ", command: " + command + ", timestamp: " + stamp;
}

void write_snapshot_csv(const CensusSnapshot& snap, std::ostream& os, const std::string& command) {
    os << metadata_header(command) << "\n";
    os << "x,k,pattern,count\n";
    for (const auto& [pat, count] : snap.counts)
        os << snap.x << "," << snap.k << "," << pat.to_string() << "," << count << "\n";
}

void write_snapshot_json(const CensusSnapshot& snap, std::ostream& os, const std::string& command) {
    nlohmann::json j;
    j["tool"] = "champs " + tool_version();
    j["command"] = command;
    j["x"] = snap.x;
    j["k"] = snap.k;
    j["anchor"] = to_string(snap.anchor);
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& [pat, count] : snap.counts)
        counts.push_back({{"pattern", pat.to_string()}, {"count", count}});
    j["counts"] = std::move(counts);
    os << j.dump(2) << "\n";
}

void write_champions_csv(const std::vector<ChampionRecord>& records, std::ostream& os,
                         const std::string& command) {
    os << metadata_header(command) << "\n";
    os << "x,k,pattern,count,gcd,gcd_squarefree\n";
    for (const auto& rec : records) {
        for (const auto& pat : rec.champions) {
            const std::uint64_t g = rec.gcds.at(pat);
            os << rec.x << "," << rec.k << "," << pat.to_string() << "," << rec.max_count << ","
               << g << "," << (is_squarefree(g) ? "true" : "false") << "\n";
        }
    }
}

} // namespace champs
