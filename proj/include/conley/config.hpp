#pragma once

// Run configuration: a flat key = value file, one key per line, dotted
// section names, '#' comments. See README.md for the full grammar.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "conley/discretization.hpp"
#include "conley/limit.hpp"
#include "conley/relation.hpp"

namespace conley {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputKind { json, dot, pgm, csv };

std::string_view output_name(OutputKind kind);

// A relation given pair by pair on an abstract carrier, for synthetic runs.
struct SyntheticRelation {
  std::size_t size = 1;
  std::vector<std::pair<CellIndex, CellIndex>> pairs;
};

struct RunConfig {
  std::variant<SystemSpec, SyntheticRelation> source;
  GridSpec grid;
  EpsilonLadder ladder;
  std::set<OutputKind> outputs{OutputKind::json};
  std::filesystem::path out_dir = "out";
  std::optional<std::uint64_t> seed;
  ClosureDilation dilation = ClosureDilation::none;
};

RunConfig parse_config(std::string_view text, const std::string& source_name = "config");
RunConfig load_config(const std::filesystem::path& path);

struct PreparedRun {
  CarrierPtr carrier;
  Relation f;
  std::vector<Rung> rungs;
};

// Builds the carrier, the relation f and the bound ladder.
PreparedRun prepare(const RunConfig& config);

}  // namespace conley
