#pragma once

// Brute-force reference implementations. Nothing here calls the fast
// relation algebra or the graph routines: relations are copied into plain
// dense boolean matrices and every operation is spelled out directly.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conley/discretization.hpp"
#include "conley/relation.hpp"

namespace conley::oracles {

inline constexpr std::size_t kMaxBruteForceSize = 12;

class OracleGuard : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Limit relation taken literally: iterate f, f^2, ... until a matrix
// repeats. The sequence is eventually periodic, so every tail union equals
// the union over the detected cycle, and so does their intersection.
Relation limit_relation_bruteforce(const Relation& f);

// Neighbourhood rule for pseudo-orbit steps. A step from x may land in y iff
// some cell z met by the image of x has dist(center_z, center_y) <= eps +
// 2 * cell_radius. Without eps the step follows the relation exactly.
struct PseudoOrbitGraph {
  // successors[x] lists the cells reachable in one eps-sloppy step.
  std::vector<std::vector<CellIndex>> successors;

  static PseudoOrbitGraph from_relation(const Relation& f, std::optional<double> eps);
  // Images recomputed from the point map: the cell range met by f(cell x) is
  // found by dense sampling plus the cell endpoints, independent of the
  // outer approximation's bracketing.
  static PseudoOrbitGraph from_system(const SystemSpec& sys, const CarrierPtr& carrier, std::optional<double> eps,
                                      std::size_t samples_per_cell = 256);
};

// Cells reachable from `from` by pseudo-orbits of at most `steps` steps
// (nullopt: to fixpoint). steps = 0 returns `from`.
std::vector<bool> pseudo_orbit_reach(const PseudoOrbitGraph& graph, const std::vector<bool>& from,
                                     std::optional<std::size_t> steps);

// Cells reachable by pseudo-orbits of exactly n steps.
std::vector<bool> pseudo_orbit_level(const PseudoOrbitGraph& graph, const std::vector<bool>& from, std::size_t n);

CellSet pseudo_orbit_reach(const Relation& f, std::optional<double> eps, const CellSet& from,
                           std::optional<std::size_t> steps);

// x is eps-chain recurrent iff some pseudo-orbit of positive length returns
// to x.
std::vector<bool> pseudo_orbit_recurrent(const PseudoOrbitGraph& graph);

struct HarnessReport {
  std::size_t carrier_size = 0;
  bool exhaustive = false;
  std::size_t checked = 0;
  std::size_t agreements = 0;
  // First disagreement: the input relation and both answers, as pair lists.
  struct Counterexample {
    std::vector<std::pair<CellIndex, CellIndex>> input;
    std::vector<std::pair<CellIndex, CellIndex>> fast;
    std::vector<std::pair<CellIndex, CellIndex>> oracle;
  };
  std::optional<Counterexample> counterexample;

  bool ok() const { return !counterexample && checked == agreements; }
};

// Compares limit_relation against the brute-force oracle: every relation on
// the carrier when exhaustive, otherwise `trials` relations drawn with the
// given seed (each pair present with probability density).
HarnessReport exhaustive_harness(std::size_t carrier_size, bool exhaustive, std::size_t trials,
                                 std::uint64_t seed, double density = -1.0);

}  // namespace conley::oracles

namespace conley::oracles {

// omega(x) by walking the exact graph: cells y with x ->* c ->+ c ->* y.
std::vector<bool> omega_image(const PseudoOrbitGraph& exact, CellIndex x);

// Cells x that some eps-pseudo-orbit leads back to from omega(x): the
// recurrent cells of the omega-then-pseudo-orbit relation, one ladder rung.
std::vector<bool> omega_pseudo_orbit_recurrent(const PseudoOrbitGraph& exact, const PseudoOrbitGraph& sloppy);

}  // namespace conley::oracles
