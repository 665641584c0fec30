#include <doctest.h>

#include "conley/oracles.hpp"
#include "conley/pipeline.hpp"
#include "helpers.hpp"

using namespace conley;
using testing::cells;
using testing::rel;

TEST_CASE("brute-force limit relation examples") {
  const auto c = Carrier::abstract(2);
  CHECK(oracles::limit_relation_bruteforce(rel(c, {{0, 1}, {1, 0}})) == Relation::full(c));
  CHECK(oracles::limit_relation_bruteforce(rel(c, {{0, 1}})).is_empty());
  CHECK(oracles::limit_relation_bruteforce(identity(c)) == identity(c));

  // period 3 cycle fed by a tail
  const auto c5 = Carrier::abstract(5);
  const Relation f = rel(c5, {{0, 1}, {1, 2}, {2, 3}, {3, 1}, {4, 0}});
  const Relation lim = oracles::limit_relation_bruteforce(f);
  for (CellIndex a : {0u, 1u, 2u, 3u, 4u})
    for (CellIndex b : {1u, 2u, 3u}) CHECK(lim.contains(a, b));
  CHECK(lim.cardinality() == 15);
}

TEST_CASE("brute-force oracle enforces its size guard") {
  CHECK_THROWS_AS(oracles::limit_relation_bruteforce(identity(Carrier::abstract(13))), oracles::OracleGuard);
  CHECK_THROWS_AS(oracles::exhaustive_harness(20, false, 10, 1), oracles::OracleGuard);
  CHECK_THROWS_AS(oracles::exhaustive_harness(4, true, 0, 1), oracles::OracleGuard);
  CHECK_NOTHROW(oracles::limit_relation_bruteforce(identity(Carrier::abstract(12))));
}

TEST_CASE("pseudo-orbit reach examples") {
  const auto c4 = build_grid({Domain::unit_circle, 4});
  const Relation f = outer_approx(SystemSpec::make(SystemKind::rotation, {{"alpha", 0.25}}), c4);
  const CellSet start = cells(c4, {0});

  CHECK(oracles::pseudo_orbit_reach(f, std::nullopt, start, 0) == start);
  const auto graph = oracles::PseudoOrbitGraph::from_relation(f, std::nullopt);
  const auto level = oracles::pseudo_orbit_level(graph, {true, false, false, false}, 2);
  CHECK(level == std::vector<bool>{false, false, true, false});
  CHECK(oracles::pseudo_orbit_reach(f, 1.0, start, 1) == CellSet::full(c4));
  CHECK(oracles::pseudo_orbit_reach(f, std::nullopt, start, std::nullopt) == CellSet::full(c4));

  // eps = 0 keeps the cell-slack neighbourhood: one cell either side
  const auto sys_graph =
      oracles::PseudoOrbitGraph::from_system(SystemSpec::make(SystemKind::rotation, {{"alpha", 0.25}}), c4, 0.0);
  CHECK(sys_graph.successors[0] == std::vector<CellIndex>{0, 1, 2});
}

TEST_CASE("pseudo-orbit reach agrees with the reach closure of the sloppy map") {
  const std::vector<SystemSpec> systems{
      SystemSpec::make(SystemKind::north_south, {{"delta", 0.05}}),
      SystemSpec::make(SystemKind::logistic, {{"r", 3.5}}),
      SystemSpec::make(SystemKind::tent, {{"mu", 1.2}}),
  };
  for (const auto& sys : systems) {
    const auto c = build_grid({sys.domain(), 48});
    const Relation f = outer_approx(sys, c);
    for (const auto& rung : bind_ladder(EpsilonLadder::in_cells({3, 1}, 48), c)) {
      const Relation star = reach_closure(compose(f, rung.iota));
      for (CellIndex x = 0; x < 48; x += 5) {
        const CellSet from = cells(c, {x});
        CHECK(oracles::pseudo_orbit_reach(f, rung.eps, from, std::nullopt) == image(star, from));
      }
    }
  }
}

TEST_CASE("pseudo-orbit recurrence reproduces both chain recurrent sets") {
  const auto sys = SystemSpec::make(SystemKind::north_south, {{"delta", 0.05}});
  const auto c = build_grid({Domain::unit_circle, 64});
  const Relation f = outer_approx(sys, c);
  const auto rungs = bind_ladder(EpsilonLadder::in_cells({2}, 64), c);
  const auto report = run_pipeline(f, rungs);

  const auto exact = oracles::PseudoOrbitGraph::from_relation(f, std::nullopt);
  const auto sloppy = oracles::PseudoOrbitGraph::from_relation(f, rungs[0].eps);
  const auto def = oracles::pseudo_orbit_recurrent(sloppy);
  const auto alt = oracles::omega_pseudo_orbit_recurrent(exact, sloppy);
  for (CellIndex x = 0; x < 64; ++x) {
    CHECK(def[x] == report.chain_recurrent_def.contains(x));
    CHECK(alt[x] == report.chain_recurrent.contains(x));
  }
}

TEST_CASE("harness runs") {
  const auto two = oracles::exhaustive_harness(2, true, 0, 0);
  CHECK(two.checked == 16);
  CHECK(two.ok());
  const auto three = oracles::exhaustive_harness(3, true, 0, 0);
  CHECK(three.checked == 512);
  CHECK(three.ok());
  const auto eight = oracles::exhaustive_harness(8, false, 10000, 42);
  CHECK(eight.checked == 10000);
  CHECK(eight.ok());
}
