#include "conley/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace conley {

std::string_view output_name(OutputKind kind) {
  switch (kind) {
    case OutputKind::json: return "json";
    case OutputKind::dot: return "dot";
    case OutputKind::pgm: return "pgm";
    case OutputKind::csv: return "csv";
  }
  return "unknown";
}

namespace {

struct Entry {
  std::string value;
  std::size_t line;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(value);
  while (std::getline(in, token, ',')) {
    std::istringstream words(token);
    std::string word;
    while (words >> word) out.push_back(word);
  }
  return out;
}

class Reader {
 public:
  Reader(std::map<std::string, Entry> entries, std::string source)
      : entries_(std::move(entries)), source_(std::move(source)) {}

  [[noreturn]] void fail(const Entry& e, const std::string& message) const {
    throw ConfigError(source_ + ":" + std::to_string(e.line) + ": " + message);
  }
  [[noreturn]] void missing(const std::string& key) const {
    throw ConfigError(source_ + ": missing required key '" + key + "'");
  }

  bool has(const std::string& key) const { return entries_.contains(key); }
  const Entry* find(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }
  const Entry& require(const std::string& key) {
    const Entry* e = find(key);
    if (!e) missing(key);
    return *e;
  }

  double number(const Entry& e, const std::string& key) const {
    double v = 0.0;
    const auto& s = e.value;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail(e, "'" + key + "' expects a number, got '" + s + "'");
    return v;
  }
  std::uint64_t integer(const Entry& e, const std::string& key) const {
    std::uint64_t v = 0;
    const auto& s = e.value;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      fail(e, "'" + key + "' expects a non-negative integer, got '" + s + "'");
    return v;
  }
  bool boolean(const Entry& e, const std::string& key) const {
    if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
    if (e.value == "false" || e.value == "no" || e.value == "0") return false;
    fail(e, "'" + key + "' expects true or false, got '" + e.value + "'");
  }

  // Keys with the given prefix that were not consumed.
  std::vector<std::pair<std::string, const Entry*>> with_prefix(const std::string& prefix) {
    std::vector<std::pair<std::string, const Entry*>> out;
    for (auto& [k, e] : entries_)
      if (k.rfind(prefix, 0) == 0 && !used_.contains(k)) out.emplace_back(k, &e);
    return out;
  }

  void reject_unused() const {
    for (const auto& [k, e] : entries_)
      if (!used_.contains(k)) fail(e, "unknown key '" + k + "'");
  }

  void mark_used(const std::string& key) { used_.insert(key); }

 private:
  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
  std::string source_;
};

std::map<std::string, Entry> tokenize(std::string_view text, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(line_no) + ": empty key");
    if (entries.contains(key))
      throw ConfigError(source + ":" + std::to_string(line_no) + ": duplicate key '" + key + "' (first on line " +
                        std::to_string(entries[key].line) + ")");
    entries.emplace(key, Entry{value, line_no});
    if (end == text.size()) break;
  }
  return entries;
}

std::pair<CellIndex, CellIndex> parse_pair(Reader& r, const Entry& e, const std::string& token) {
  const auto dash = token.find('-');
  if (dash == std::string::npos) r.fail(e, "relation pair '" + token + "' must look like a-b");
  CellIndex a = 0;
  CellIndex b = 0;
  const auto* s = token.data();
  auto [p1, e1] = std::from_chars(s, s + dash, a);
  auto [p2, e2] = std::from_chars(s + dash + 1, s + token.size(), b);
  if (e1 != std::errc{} || e2 != std::errc{} || p1 != s + dash || p2 != s + token.size())
    r.fail(e, "relation pair '" + token + "' must look like a-b");
  return {a, b};
}

}  // namespace

RunConfig parse_config(std::string_view text, const std::string& source_name) {
  Reader r(tokenize(text, source_name), source_name);
  RunConfig config;

  if (const Entry* name = r.find("system.name")) {
    SystemKind kind{};
    try {
      kind = parse_system_kind(name->value);
    } catch (const SystemError& err) {
      r.fail(*name, err.what());
    }
    std::map<std::string, double> params;
    const Entry* lipschitz = r.find("system.lipschitz_bound");
    for (const auto& [key, entry] : r.with_prefix("system.")) {
      params[key.substr(7)] = r.number(*entry, key);
      r.mark_used(key);
    }
    try {
      SystemSpec sys = SystemSpec::make(kind, params);
      if (lipschitz) sys.lipschitz_bound = r.number(*lipschitz, "system.lipschitz_bound");
      sys.validate();
      config.source = sys;
    } catch (const SystemError& err) {
      r.fail(*name, err.what());
    }

    const Entry& domain = r.require("grid.domain");
    if (domain.value == "unit_interval") {
      config.grid.domain = Domain::unit_interval;
    } else if (domain.value == "unit_circle") {
      config.grid.domain = Domain::unit_circle;
    } else {
      r.fail(domain, "grid.domain must be unit_interval or unit_circle");
    }
    const Entry& cells = r.require("grid.cells");
    config.grid.cells_per_axis = r.integer(cells, "grid.cells");
    if (config.grid.cells_per_axis < 2) r.fail(cells, "grid.cells must be at least 2");
    if (std::get<SystemSpec>(config.source).domain() != config.grid.domain)
      r.fail(domain, std::string("system ") + std::string(system_name(kind)) + " lives on " +
                         std::string(domain_name(std::get<SystemSpec>(config.source).domain())));
  } else if (const Entry* size = r.find("relation.size")) {
    SyntheticRelation rel;
    rel.size = r.integer(*size, "relation.size");
    if (rel.size == 0) r.fail(*size, "relation.size must be positive");
    if (const Entry* pairs = r.find("relation.pairs")) {
      for (const auto& token : split_list(pairs->value)) {
        auto p = parse_pair(r, *pairs, token);
        if (p.first >= rel.size || p.second >= rel.size) r.fail(*pairs, "relation pair '" + token + "' out of range");
        rel.pairs.push_back(p);
      }
    }
    config.grid = {Domain::unit_interval, rel.size};
    config.source = rel;
  } else {
    r.missing("system.name");
  }

  const std::size_t cells = config.grid.cells_per_axis;
  const Entry* in_cells = r.find("ladder.cells");
  const Entry* values = r.find("ladder.values");
  if (in_cells && values) r.fail(*values, "give either ladder.cells or ladder.values, not both");
  if (!in_cells && !values) r.missing("ladder.cells");
  const Entry& ladder_entry = in_cells ? *in_cells : *values;
  std::vector<double> numbers;
  for (const auto& token : split_list(ladder_entry.value)) {
    Entry tmp{token, ladder_entry.line};
    numbers.push_back(r.number(tmp, in_cells ? "ladder.cells" : "ladder.values"));
  }
  bool floor = false;
  if (const Entry* f = r.find("ladder.identity_floor")) floor = r.boolean(*f, "ladder.identity_floor");
  config.ladder = in_cells ? EpsilonLadder::in_cells(numbers, cells, floor) : EpsilonLadder{numbers, floor};
  try {
    config.ladder.validate();
  } catch (const std::invalid_argument& err) {
    r.fail(ladder_entry, err.what());
  }

  if (const Entry* outputs = r.find("outputs")) {
    config.outputs.clear();
    for (const auto& token : split_list(outputs->value)) {
      bool known = false;
      for (auto kind : {OutputKind::json, OutputKind::dot, OutputKind::pgm, OutputKind::csv})
        if (output_name(kind) == token) {
          config.outputs.insert(kind);
          known = true;
        }
      if (!known) r.fail(*outputs, "unknown output '" + token + "' (expected json, dot, pgm, csv)");
    }
    if (config.outputs.empty()) r.fail(*outputs, "outputs must not be empty");
  }
  if (const Entry* dir = r.find("out_dir")) config.out_dir = dir->value;
  if (const Entry* seed = r.find("seed")) config.seed = r.integer(*seed, "seed");
  if (const Entry* dil = r.find("closure.dilation")) {
    if (dil->value == "none") {
      config.dilation = ClosureDilation::none;
    } else if (dil->value == "one-cell" || dil->value == "one_cell") {
      config.dilation = ClosureDilation::one_cell;
    } else {
      r.fail(*dil, "closure.dilation must be none or one-cell");
    }
  }

  r.reject_unused();
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

PreparedRun prepare(const RunConfig& config) {
  if (const auto* rel = std::get_if<SyntheticRelation>(&config.source)) {
    auto carrier = Carrier::abstract(rel->size);
    Relation f = Relation::from_pairs(carrier, rel->pairs);
    auto rungs = bind_ladder(config.ladder, carrier);
    return {carrier, std::move(f), std::move(rungs)};
  }
  const auto& sys = std::get<SystemSpec>(config.source);
  auto carrier = build_grid(config.grid);
  Relation f = outer_approx(sys, carrier);
  auto rungs = bind_ladder(config.ladder, carrier);
  return {carrier, std::move(f), std::move(rungs)};
}

}  // namespace conley
