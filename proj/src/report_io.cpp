#include "conley/report_io.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

namespace conley::io {

Json relation_to_json(const Relation& r) {
  Json rows = Json::array();
  for (CellIndex a = 0; a < r.size(); ++a) {
    Json runs = Json::array();
    std::size_t start = 0;
    std::size_t length = 0;
    for_each_bit(r.row(a), [&](std::size_t b) {
      if (length && b == start + length) {
        ++length;
        return;
      }
      if (length) runs.push_back({start, length});
      start = b;
      length = 1;
    });
    if (length) runs.push_back({start, length});
    if (!runs.empty()) rows.push_back({a, std::move(runs)});
  }
  Json out;
  out["cardinality"] = r.cardinality();
  out["rows"] = std::move(rows);
  return out;
}

Relation relation_from_json(const Json& j, const CarrierPtr& carrier) {
  RelationBuilder b(carrier);
  for (const auto& row : j.at("rows")) {
    const auto a = row.at(0).get<std::size_t>();
    for (const auto& run : row.at(1)) {
      const auto start = run.at(0).get<std::size_t>();
      const auto length = run.at(1).get<std::size_t>();
      for (std::size_t k = 0; k < length; ++k) b.set(a, start + k);
    }
  }
  Relation r = std::move(b).build();
  if (r.cardinality() != j.at("cardinality").get<std::size_t>())
    throw std::runtime_error("relation cardinality does not match its rows");
  return r;
}

Json cells_to_json(const CellSet& s) { return s.indices(); }

CellSet cells_from_json(const Json& j, const CarrierPtr& carrier) {
  return CellSet::from_indices(carrier, j.get<std::vector<CellIndex>>());
}

EnclosureCheck sample_enclosure(const SystemSpec& sys, const Relation& f, std::uint64_t seed,
                                std::size_t samples_per_cell) {
  EnclosureCheck check{seed, 0, 0};
  const std::size_t n = f.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (CellIndex a = 0; a < n; ++a) {
    for (std::size_t k = 0; k < samples_per_cell; ++k) {
      const double x = (static_cast<double>(a) + unit(rng)) / static_cast<double>(n);
      const double y = sys(x);
      auto b = static_cast<long long>(std::floor(y * static_cast<double>(n)));
      b = std::clamp(b, 0LL, static_cast<long long>(n) - 1);
      ++check.samples;
      if (!f.contains(a, static_cast<CellIndex>(b))) ++check.violations;
    }
  }
  return check;
}

namespace {

const char* metric_name(Metric m) {
  return m == Metric::circle_wraparound ? "circle-wraparound" : "interval-euclidean";
}

Json identity_json(const IdentityResult& r) {
  Json j;
  j["name"] = r.name;
  j["holds"] = r.holds;
  if (r.counterexample) {
    j["counterexample"] = {r.counterexample->first, r.counterexample->second};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

}  // namespace

Json report_to_json(const RunConfig& config, const PreparedRun& run, const ConleyReport& report,
                    const std::optional<EnclosureCheck>& enclosure) {
  Json j;
  j["format"] = "conley-report";
  j["version"] = 1;

  if (const auto* sys = std::get_if<SystemSpec>(&config.source)) {
    Json s;
    s["name"] = std::string(system_name(sys->kind));
    Json params = Json::object();
    for (const auto& [k, v] : sys->params) params[k] = v;
    s["params"] = std::move(params);
    s["lipschitz_bound"] = sys->lipschitz_bound;
    j["system"] = std::move(s);
  } else {
    j["system"] = {{"name", "synthetic"}};
  }

  const Carrier& carrier = *run.carrier;
  j["grid"] = {{"domain", std::string(domain_name(config.grid.domain))}, {"cells", config.grid.cells_per_axis}};
  j["carrier"] = {{"size", carrier.size()}, {"cell_radius", carrier.cell_radius()}, {"metric", metric_name(carrier.metric())}};
  j["ladder"] = {{"values", config.ladder.values}, {"identity_floor", config.ladder.include_identity_floor}};
  j["closure_dilation"] = config.dilation == ClosureDilation::none ? "none" : "one-cell";
  if (config.seed) {
    j["seed"] = *config.seed;
  } else {
    j["seed"] = nullptr;
  }

  j["relations"] = {{"f", relation_to_json(run.f)},
                    {"omega", relation_to_json(report.omega)},
                    {"conley_def", relation_to_json(report.conley_def)},
                    {"conley_alt", relation_to_json(report.conley_alt)}};

  Json rungs = Json::array();
  for (const auto& r : report.per_rung) {
    Json rj;
    rj["eps"] = r.eps;
    rj["identity_floor"] = r.identity_floor;
    rj["phi"] = relation_to_json(r.phi);
    rj["lhs"] = relation_to_json(r.lhs);
    rj["rhs"] = relation_to_json(r.rhs);
    rungs.push_back(std::move(rj));
  }
  j["rungs"] = std::move(rungs);
  j["routes_equal"] = report.routes_equal;

  Json centers = Json::array();
  for (CellIndex c : report.chain_recurrent.indices()) centers.push_back(carrier.center(c)[0]);
  j["chain_recurrent"] = {{"cells", cells_to_json(report.chain_recurrent)}, {"centers", std::move(centers)}};
  j["chain_recurrent_def"] = {{"cells", cells_to_json(report.chain_recurrent_def)}};

  Json nodes = Json::array();
  for (std::size_t i = 0; i < report.morse.nodes.size(); ++i)
    nodes.push_back({{"id", "c" + std::to_string(i)},
                     {"members", report.morse.nodes[i].count()},
                     {"cells", cells_to_json(report.morse.nodes[i])}});
  Json edges = Json::array();
  for (const auto& [a, b] : report.morse.edges) edges.push_back({a, b});
  j["morse_graph"] = {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};

  Json must = Json::array();
  Json diag = Json::array();
  for (const auto& r : report.identities) (r.must_hold ? must : diag).push_back(identity_json(r));
  j["identities"] = {{"all_must_hold_pass", must_hold_identities_pass(report.identities)},
                     {"must_hold", std::move(must)},
                     {"diagnostics", std::move(diag)}};

  if (enclosure) {
    j["enclosure_check"] = {
        {"seed", enclosure->seed}, {"samples", enclosure->samples}, {"violations", enclosure->violations}};
  }
  return j;
}

CarrierPtr carrier_from_report(const Json& report) {
  const auto& grid = report.at("grid");
  const auto cells = grid.at("cells").get<std::size_t>();
  if (report.at("system").at("name") == "synthetic") return Carrier::abstract(cells);
  const auto domain = grid.at("domain").get<std::string>() == "unit_circle" ? Domain::unit_circle : Domain::unit_interval;
  return build_grid({domain, cells});
}

std::string to_pgm(const Relation& r) {
  const std::size_t n = r.size();
  std::string out = "P5\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  out.reserve(out.size() + n * n);
  for (CellIndex a = 0; a < n; ++a)
    for (CellIndex b = 0; b < n; ++b) out.push_back(r.contains(a, b) ? '\0' : static_cast<char>(255));
  return out;
}

std::string to_dot(const MorseGraph& g) {
  std::ostringstream out;
  out << "digraph morse {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    out << "  c" << i << " [label=\"n=" << g.nodes[i].count() << "\"];\n";
  for (const auto& [a, b] : g.edges) out << "  c" << a << " -> c" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string morse_json_to_dot(const Json& report) {
  const auto& graph = report.at("morse_graph");
  std::ostringstream out;
  out << "digraph morse {\n";
  for (const auto& node : graph.at("nodes"))
    out << "  " << node.at("id").get<std::string>() << " [label=\"n=" << node.at("members").get<std::size_t>()
        << "\"];\n";
  for (const auto& e : graph.at("edges")) out << "  c" << e.at(0).get<std::size_t>() << " -> c" << e.at(1).get<std::size_t>() << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_csv(const Carrier& carrier, const CellSet& chain_recurrent) {
  std::ostringstream out;
  out.precision(17);
  out << "index,center,chain_recurrent\n";
  for (CellIndex c = 0; c < carrier.size(); ++c)
    out << c << "," << carrier.center(c)[0] << "," << (chain_recurrent.contains(c) ? 1 : 0) << "\n";
  return out.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

}  // namespace conley::io
