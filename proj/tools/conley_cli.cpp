// conley: limit, omega-limit and Conley relations of discretized maps.
//
//   conley analyze <config>
//   conley identities <config> [--corrupt-limit]
//   conley oracle-check --sizes 2,3,8 --trials 10000 --seed 42
//   conley render <report.json> --format pgm|dot [--relation conley_alt] [--out path]
//
// Exit codes: 0 success, 1 property/identity failure, 2 usage/config error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "conley/config.hpp"
#include "conley/oracles.hpp"
#include "conley/pipeline.hpp"
#include "conley/report_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsage = 2;

using namespace conley;

struct Loaded {
  RunConfig config;
  PreparedRun run;
};

Loaded load(const std::string& path) {
  RunConfig config = load_config(path);
  if (const char* dir = std::getenv("CONLEY_OUT_DIR"); dir && *dir) config.out_dir = dir;
  PreparedRun run = prepare(config);
  return {std::move(config), std::move(run)};
}

void print_identities(const std::vector<IdentityResult>& results) {
  auto line = [](const IdentityResult& r) {
    std::cout << "  [" << (r.holds ? "ok  " : "FAIL") << "] " << r.name;
    if (!r.holds && r.counterexample)
      std::cout << "  (counterexample " << r.counterexample->first << "," << r.counterexample->second << ")";
    std::cout << "\n";
  };
  std::cout << "must hold:\n";
  for (const auto& r : results)
    if (r.must_hold) line(r);
  std::cout << "diagnostics:\n";
  for (const auto& r : results)
    if (!r.must_hold) line(r);
}

int run_analyze(const std::string& path) {
  auto [config, run] = load(path);
  const ConleyReport report = run_pipeline(run.f, run.rungs, {.dilation = config.dilation});

  std::optional<io::EnclosureCheck> enclosure;
  if (const auto* sys = std::get_if<SystemSpec>(&config.source))
    enclosure = io::sample_enclosure(*sys, run.f, config.seed.value_or(0), 16);

  const auto& dir = config.out_dir;
  if (config.outputs.contains(OutputKind::json))
    io::write_atomic(dir / "report.json", io::dump(io::report_to_json(config, run, report, enclosure)));
  if (config.outputs.contains(OutputKind::dot)) io::write_atomic(dir / "morse.dot", io::to_dot(report.morse));
  if (config.outputs.contains(OutputKind::pgm)) {
    io::write_atomic(dir / "f.pgm", io::to_pgm(run.f));
    io::write_atomic(dir / "omega.pgm", io::to_pgm(report.omega));
    io::write_atomic(dir / "conley_def.pgm", io::to_pgm(report.conley_def));
    io::write_atomic(dir / "conley_alt.pgm", io::to_pgm(report.conley_alt));
  }
  if (config.outputs.contains(OutputKind::csv))
    io::write_atomic(dir / "cells.csv", io::to_csv(*run.carrier, report.chain_recurrent));

  std::cout << "cells: " << run.carrier->size() << ", rungs: " << run.rungs.size() << "\n"
            << "routes equal: " << (report.routes_equal ? "yes" : "no") << "\n"
            << "chain recurrent cells: " << report.chain_recurrent.count() << " in " << report.components.size()
            << " component(s), " << report.morse.edges.size() << " Morse edge(s)\n"
            << "outputs written to " << dir.string() << "\n";
  if (enclosure && enclosure->violations)
    std::cerr << "warning: " << enclosure->violations << " enclosure violations in " << enclosure->samples
              << " samples\n";
  return must_hold_identities_pass(report.identities) ? kOk : kPropertyFailure;
}

int run_identities(const std::string& path, bool corrupt) {
  auto [config, run] = load(path);
  const ConleyReport report =
      run_pipeline(run.f, run.rungs, {.dilation = config.dilation, .corrupt_limit = corrupt});
  print_identities(report.identities);
  if (!must_hold_identities_pass(report.identities)) {
    for (const auto& r : report.identities)
      if (r.must_hold && !r.holds) {
        std::cerr << "identity failed: " << r.name << "\n";
        break;
      }
    return kPropertyFailure;
  }
  return kOk;
}

int run_oracle_check(const std::vector<std::size_t>& sizes, std::size_t trials, std::uint64_t seed) {
  for (std::size_t size : sizes) {
    if (size == 0 || size > oracles::kMaxBruteForceSize) {
      std::cerr << "size " << size << " exceeds the oracle guard (1.." << oracles::kMaxBruteForceSize << ")\n";
      return kUsage;
    }
  }
  for (std::size_t size : sizes) {
    const bool exhaustive = size <= 3;
    const auto report = oracles::exhaustive_harness(size, exhaustive, trials, seed);
    std::cout << "size " << size << (exhaustive ? " exhaustive" : " random") << ": " << report.agreements << "/"
              << report.checked << " agree\n";
    if (!report.ok()) {
      nlohmann::ordered_json cx;
      cx["size"] = size;
      cx["input"] = report.counterexample->input;
      cx["fast"] = report.counterexample->fast;
      cx["oracle"] = report.counterexample->oracle;
      std::cout << cx.dump() << "\n";
      return kPropertyFailure;
    }
  }
  return kOk;
}

int run_render(const std::string& report_path, const std::string& format, const std::string& relation,
               std::string out) {
  std::ifstream in(report_path);
  if (!in) throw ConfigError(report_path + ": cannot open report");
  const auto report = io::Json::parse(in);
  const std::filesystem::path base = std::filesystem::path(report_path).parent_path();
  if (format == "dot") {
    if (out.empty()) out = (base / "morse.dot").string();
    io::write_atomic(out, io::morse_json_to_dot(report));
  } else {
    const auto carrier = io::carrier_from_report(report);
    const auto& rels = report.at("relations");
    if (!rels.contains(relation)) throw ConfigError("report has no relation '" + relation + "'");
    if (out.empty()) out = (base / (relation + ".pgm")).string();
    io::write_atomic(out, io::to_pgm(io::relation_from_json(rels.at(relation), carrier)));
  }
  std::cout << "wrote " << out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit, omega-limit and Conley relations of discretized maps"};
  app.require_subcommand(1);

  std::string config_path;
  auto* analyze = app.add_subcommand("analyze", "run the full pipeline and write reports");
  analyze->add_option("config", config_path, "run configuration")->required();

  bool corrupt = false;
  auto* identities = app.add_subcommand("identities", "run the identity suite only");
  identities->add_option("config", config_path, "run configuration")->required();
  identities->add_flag("--corrupt-limit", corrupt, "complement one limit relation (fault injection)");

  std::vector<std::size_t> sizes{2, 3};
  std::size_t trials = 10000;
  std::uint64_t seed = 42;
  auto* oracle = app.add_subcommand("oracle-check", "compare limit_relation with the brute-force oracle");
  oracle->add_option("--sizes", sizes, "carrier sizes (<= 3 enumerated exhaustively)")->delimiter(',');
  oracle->add_option("--trials", trials, "random relations per size above 3");
  oracle->add_option("--seed", seed, "random seed");

  std::string report_path;
  std::string format;
  std::string relation = "conley_alt";
  std::string out;
  auto* render = app.add_subcommand("render", "re-render a report.json");
  render->add_option("report", report_path, "report.json")->required();
  render->add_option("--format", format, "pgm or dot")->required()->check(CLI::IsMember({"pgm", "dot"}));
  render->add_option("--relation", relation, "relation to render as PGM (f, omega, conley_def, conley_alt)");
  render->add_option("--out", out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*analyze) return run_analyze(config_path);
    if (*identities) return run_identities(config_path, corrupt);
    if (*oracle) return run_oracle_check(sizes, trials, seed);
    if (*render) return run_render(report_path, format, relation, out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SubResolutionRung& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
