#pragma once

// Grid carriers over [0,1] and the unit circle, outer approximations of
// concrete maps, and the epsilon-fattening relations iota_eps.

#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "conley/relation.hpp"

namespace conley {

enum class Domain { unit_interval, unit_circle };

std::string_view domain_name(Domain d);

struct GridSpec {
  Domain domain = Domain::unit_interval;
  std::size_t cells_per_axis = 2;
};

// Uniform cells [i h, (i+1) h) with h = 1 / cells_per_axis. Interval grids
// close the last cell at 1; circle grids use the wraparound metric.
CarrierPtr build_grid(const GridSpec& spec);

// Recovers the grid layout of a carrier produced by build_grid.
GridSpec grid_of(const Carrier& carrier);

enum class SystemKind { logistic, rotation, doubling, tent, north_south };

std::string_view system_name(SystemKind kind);
SystemKind parse_system_kind(std::string_view name);

// Parameters per system:
//   logistic     r      f(x) = r x (1 - x) on [0,1], 0 < r <= 4, Lipschitz r
//   rotation     alpha  f(x) = x + alpha mod 1, Lipschitz 1
//   doubling     -      f(x) = 2x mod 1, Lipschitz 2
//   tent         mu     f(x) = mu min(x, 1 - x) on [0,1], 0 < mu <= 2, Lipschitz mu
//   north_south  delta  f(x) = x + delta sin(2 pi x) mod 1, Lipschitz 1 + 2 pi |delta|
struct SystemSpec {
  SystemKind kind = SystemKind::rotation;
  std::map<std::string, double> params;
  double lipschitz_bound = 1.0;

  // Fills lipschitz_bound from the documented bound and validates params.
  static SystemSpec make(SystemKind kind, std::map<std::string, double> params = {});

  Domain domain() const;
  double param(const std::string& name) const;
  void validate() const;

  // Point map; circle systems are reduced into [0, 1).
  double operator()(double x) const;
};

class SystemError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Outer approximation by exact piecewise-monotone bracketing: (a, b) is in
// the result iff the image of cell a meets cell b.
Relation outer_approx(const SystemSpec& sys, const CarrierPtr& carrier);

// Generic fallback for maps known only through evaluation: `samples_per_cell`
// evenly spaced samples per cell, padded by lipschitz * spacing.
Relation outer_approx_sampled(const CarrierPtr& carrier, const std::function<double(double)>& map,
                              double lipschitz, std::size_t samples_per_cell = 16);

// A map given by values at uniformly spaced nodes, linearly interpolated.
// On the circle the nodes are x_i = i / m and values wrap; on the interval
// they are x_i = i / (m - 1).
struct TabulatedMap {
  Domain domain = Domain::unit_interval;
  std::vector<double> values;

  double operator()(double x) const;
  // Largest slope between adjacent nodes.
  double lipschitz() const;
};

// iota_eps: (a, b) iff dist(center_a, center_b) <= eps + 2 * cell_radius.
Relation fatten(const CarrierPtr& carrier, double eps);

struct EpsilonLadder {
  std::vector<double> values;
  bool include_identity_floor = false;

  // Ladder {m_1 h, m_2 h, ...} for cell diameter h of the given grid size.
  static EpsilonLadder in_cells(std::vector<double> multiples, std::size_t cells_per_axis,
                                bool identity_floor = false);
  void validate() const;
};

struct Rung {
  double eps = 0.0;
  Relation iota;
  bool identity_floor = false;
};

class SubResolutionRung : public std::invalid_argument {
 public:
  SubResolutionRung(std::size_t index, double eps, double diameter);
  std::size_t index;
  double eps;
};

// Fattening relation per rung; the identity floor, when requested, is
// appended as a final rung (0, I). Without the floor every value must be at
// least the cell diameter.
std::vector<Rung> bind_ladder(const EpsilonLadder& ladder, const CarrierPtr& carrier);

}  // namespace conley
