#pragma once

#include "champs/gap_census.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace champs {

std::string tool_version();

// "# champs <version>, command: <command>, timestamp: <iso8601>"
std::string metadata_header(const std::string& command);

// CSV rows x,k,pattern,count with a metadata header line.
void write_snapshot_csv(const CensusSnapshot& snap, std::ostream& os, const std::string& command);

// JSON mirror of the same fields.
void write_snapshot_json(const CensusSnapshot& snap, std::ostream& os, const std::string& command);

// CSV rows x,k,pattern,count,gcd,gcd_squarefree; one row per champion.
void write_champions_csv(const std::vector<ChampionRecord>& records, std::ostream& os,
                         const std::string& command);

} // namespace champs
