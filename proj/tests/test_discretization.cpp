#include <doctest.h>

#include <cmath>
#include <random>

#include "conley/discretization.hpp"
#include "helpers.hpp"

using namespace conley;
using testing::rel;

namespace {

std::vector<SystemSpec> builtins() {
  return {
      SystemSpec::make(SystemKind::logistic, {{"r", 3.2}}),
      SystemSpec::make(SystemKind::logistic, {{"r", 4.0}}),
      SystemSpec::make(SystemKind::rotation, {{"alpha", (std::sqrt(5.0) - 1.0) / 2.0}}),
      SystemSpec::make(SystemKind::rotation, {{"alpha", 0.25}}),
      SystemSpec::make(SystemKind::doubling),
      SystemSpec::make(SystemKind::tent, {{"mu", 2.0}}),
      SystemSpec::make(SystemKind::tent, {{"mu", 1.5}}),
      SystemSpec::make(SystemKind::north_south, {{"delta", 0.05}}),
      SystemSpec::make(SystemKind::north_south, {{"delta", 0.3}}),
  };
}

CarrierPtr grid_for(const SystemSpec& sys, std::size_t n) { return build_grid({sys.domain(), n}); }

}  // namespace

TEST_CASE("grid construction") {
  const auto interval = build_grid({Domain::unit_interval, 4});
  REQUIRE(interval->size() == 4);
  CHECK(interval->cell_radius() == doctest::Approx(0.125));
  const double expected[] = {0.125, 0.375, 0.625, 0.875};
  for (CellIndex i = 0; i < 4; ++i) CHECK(interval->center(i)[0] == doctest::Approx(expected[i]));
  CHECK(interval->distance(0, 3) == doctest::Approx(0.75));

  const auto circle = build_grid({Domain::unit_circle, 4});
  CHECK(circle->metric() == Metric::circle_wraparound);
  CHECK(circle->distance(3, 0) == doctest::Approx(0.25));

  const auto two = build_grid({Domain::unit_interval, 2});
  CHECK(two->size() == 2);
  CHECK(two->cell_radius() == doctest::Approx(0.25));
  CHECK_THROWS(build_grid({Domain::unit_interval, 1}));

  // cells tile the axis
  for (std::size_t n : {2u, 7u, 256u}) {
    const auto g = build_grid({Domain::unit_interval, n});
    CHECK(2.0 * g->cell_radius() * static_cast<double>(n) == doctest::Approx(1.0));
  }
}

TEST_CASE("system specs") {
  CHECK_THROWS_AS(SystemSpec::make(SystemKind::logistic), SystemError);
  CHECK_THROWS_AS(SystemSpec::make(SystemKind::logistic, {{"r", 5.0}}), SystemError);
  CHECK_THROWS_AS(SystemSpec::make(SystemKind::tent, {{"mu", 2.5}}), SystemError);
  CHECK_THROWS_AS(parse_system_kind("henon"), SystemError);
  CHECK(SystemSpec::make(SystemKind::north_south, {{"delta", 0.05}}).lipschitz_bound ==
        doctest::Approx(1.0 + 0.1 * 3.141592653589793));
  const auto ns = SystemSpec::make(SystemKind::north_south, {{"delta", 0.05}});
  CHECK(ns(0.0) == doctest::Approx(0.0));
  CHECK(ns(0.5) == doctest::Approx(0.5));
  CHECK(ns(0.25) == doctest::Approx(0.3));
}

TEST_CASE("outer approximation examples") {
  const auto c4 = build_grid({Domain::unit_circle, 4});
  const auto quarter = SystemSpec::make(SystemKind::rotation, {{"alpha", 0.25}});
  CHECK(outer_approx(quarter, c4) == rel(c4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));

  const auto still = SystemSpec::make(SystemKind::rotation, {{"alpha", 0.0}});
  for (std::size_t n : {4u, 10u, 33u}) {
    const auto c = build_grid({Domain::unit_circle, n});
    CHECK(outer_approx(still, c) == identity(c));
  }

  const auto doubling = SystemSpec::make(SystemKind::doubling);
  const Relation d = outer_approx(doubling, c4);
  CHECK(d.row_set(0) == testing::cells(c4, {0, 1}));
  CHECK(d.row_set(1) == testing::cells(c4, {2, 3}));
  CHECK(d.row_set(2) == testing::cells(c4, {0, 1}));

  // logistic r = 4 covers [0,1] from the two middle cells
  const auto c4i = build_grid({Domain::unit_interval, 4});
  const Relation lg = outer_approx(SystemSpec::make(SystemKind::logistic, {{"r", 4.0}}), c4i);
  CHECK(lg.row_set(1) == testing::cells(c4i, {3}));
  CHECK(lg.row_set(0) == testing::cells(c4i, {0, 1, 2}));
}

TEST_CASE("outer approximation rejects a mismatched domain") {
  const auto circle = build_grid({Domain::unit_circle, 8});
  CHECK_THROWS_AS(outer_approx(SystemSpec::make(SystemKind::logistic, {{"r", 3.0}}), circle), SystemError);
  CHECK_THROWS_AS(outer_approx(SystemSpec::make(SystemKind::rotation, {{"alpha", 0.1}}), Carrier::create(
                      1, {0.1, 0.7}, 0.05, Metric::circle_wraparound)),
                  std::invalid_argument);
}

TEST_CASE("outer approximation encloses sampled points of every built-in system") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& sys : builtins()) {
    CAPTURE(system_name(sys.kind));
    const std::size_t n = 64;
    const auto c = grid_for(sys, n);
    const Relation f = outer_approx(sys, c);
    std::size_t misses = 0;
    for (CellIndex a = 0; a < n; ++a) {
      for (int k = 0; k < 10000; ++k) {
        const double x = (static_cast<double>(a) + unit(rng)) / static_cast<double>(n);
        auto b = static_cast<long long>(std::floor(sys(x) * static_cast<double>(n)));
        b = std::clamp(b, 0LL, static_cast<long long>(n) - 1);
        if (!f.contains(a, static_cast<CellIndex>(b))) ++misses;
      }
    }
    CHECK(misses == 0);
  }
}

TEST_CASE("refining the grid refines the relation") {
  for (const auto& sys : builtins()) {
    CAPTURE(system_name(sys.kind));
    for (std::size_t n : {16u, 50u}) {
      const Relation coarse = outer_approx(sys, grid_for(sys, n));
      const Relation fine = outer_approx(sys, grid_for(sys, 2 * n));
      for (const auto& [a, b] : fine.pairs()) CHECK(coarse.contains(a / 2, b / 2));
    }
  }
}

TEST_CASE("sampled fallback contains the exact enclosure") {
  for (const auto& sys : builtins()) {
    CAPTURE(system_name(sys.kind));
    const auto c = grid_for(sys, 40);
    const Relation exact = outer_approx(sys, c);
    const Relation sampled = outer_approx_sampled(c, [&](double x) { return sys(x); }, sys.lipschitz_bound, 32);
    CHECK(is_subset(exact, sampled));
  }
}

TEST_CASE("tabulated maps") {
  const double alpha = 0.3;
  TabulatedMap rot{Domain::unit_circle, {}};
  for (int i = 0; i < 50; ++i) rot.values.push_back(std::fmod(i / 50.0 + alpha, 1.0));
  CHECK(rot(0.01) == doctest::Approx(0.31));
  CHECK(rot(0.75) == doctest::Approx(0.05));
  CHECK(rot.lipschitz() == doctest::Approx(1.0));

  const auto c = build_grid({Domain::unit_circle, 20});
  const Relation exact = outer_approx(SystemSpec::make(SystemKind::rotation, {{"alpha", alpha}}), c);
  const Relation sampled = outer_approx_sampled(c, rot, rot.lipschitz(), 16);
  CHECK(is_subset(exact, sampled));

  TabulatedMap tent{Domain::unit_interval, {0.0, 1.0, 0.0}};
  CHECK(tent(0.25) == doctest::Approx(0.5));
  CHECK(tent.lipschitz() == doctest::Approx(2.0));
}

TEST_CASE("fattening") {
  const auto c4 = build_grid({Domain::unit_interval, 4});
  CHECK(is_subset(identity(c4), fatten(c4, 0.0)));
  CHECK(fatten(c4, 0.25).row_set(0) == testing::cells(c4, {0, 1, 2}));
  CHECK(fatten(c4, 1.0) == Relation::full(c4));
  CHECK_THROWS(fatten(c4, -0.1));

  const auto circle = build_grid({Domain::unit_circle, 8});
  CHECK(fatten(circle, 0.0).row_set(0) == testing::cells(circle, {7, 0, 1}));

  for (const auto& c : {build_grid({Domain::unit_interval, 37}), build_grid({Domain::unit_circle, 37})}) {
    Relation previous = fatten(c, 0.0);
    for (double eps = 0.01; eps < 0.7; eps += 0.037) {
      const Relation current = fatten(c, eps);
      CHECK(is_subset(previous, current));
      CHECK(transpose(current) == current);
      CHECK(is_subset(identity(c), current));
      previous = current;
    }
  }
}

TEST_CASE("binding a ladder") {
  const auto c4 = build_grid({Domain::unit_interval, 4});
  const auto rungs = bind_ladder({{0.5, 0.25}, false}, c4);
  REQUIRE(rungs.size() == 2);
  CHECK(is_subset(rungs[1].iota, rungs[0].iota));

  const auto floored = bind_ladder({{0.5}, true}, c4);
  REQUIRE(floored.size() == 2);
  CHECK(floored.back().identity_floor);
  CHECK(floored.back().iota == identity(c4));
  CHECK(floored.back().eps == 0.0);

  CHECK_THROWS_AS(bind_ladder({{}, false}, c4), std::invalid_argument);
  CHECK_THROWS_AS(bind_ladder({{0.25, 0.5}, false}, c4), std::invalid_argument);
  CHECK_THROWS_AS(bind_ladder({{0.5, 0.1}, false}, c4), SubResolutionRung);
  try {
    bind_ladder({{0.5, 0.1}, false}, c4);
  } catch (const SubResolutionRung& e) {
    CHECK(e.index == 1);
  }
  CHECK_NOTHROW(bind_ladder({{0.5, 0.1}, true}, c4));

  const auto ladder = EpsilonLadder::in_cells({4, 2, 1}, 128);
  CHECK(ladder.values[2] == doctest::Approx(1.0 / 128));
}
