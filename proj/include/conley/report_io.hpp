#pragma once

// Serialization of pipeline results: report.json, Morse graph DOT, binary
// PGM matrix renders and the per-cell CSV.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "conley/config.hpp"
#include "conley/pipeline.hpp"
#include "conley/relation.hpp"

namespace conley::io {

using Json = nlohmann::ordered_json;

// {"cardinality": k, "rows": [[row, [[start, length], ...]], ...]}; rows with
// no members are omitted.
Json relation_to_json(const Relation& r);
Relation relation_from_json(const Json& j, const CarrierPtr& carrier);

Json cells_to_json(const CellSet& s);
CellSet cells_from_json(const Json& j, const CarrierPtr& carrier);

struct EnclosureCheck {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t violations = 0;
};

// Random points per cell whose image cell must be in the relation's row.
EnclosureCheck sample_enclosure(const SystemSpec& sys, const Relation& f, std::uint64_t seed,
                                std::size_t samples_per_cell);

Json report_to_json(const RunConfig& config, const PreparedRun& run, const ConleyReport& report,
                    const std::optional<EnclosureCheck>& enclosure);

// Rebuilds the carrier described by a report (grid or abstract).
CarrierPtr carrier_from_report(const Json& report);

// P5, maxval 255: 0 = related, 255 = unrelated.
std::string to_pgm(const Relation& r);
// Nodes c0..cK labelled "n=<members>".
std::string to_dot(const MorseGraph& g);
std::string morse_json_to_dot(const Json& report);
// index,center,chain_recurrent
std::string to_csv(const Carrier& carrier, const CellSet& chain_recurrent);

std::string dump(const Json& j);

// Writes to a temporary sibling and renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace conley::io
