#include "conley/oracles.hpp"

#include "conley/limit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace conley::oracles {
namespace {

using Dense = std::vector<std::vector<bool>>;

Dense to_dense(const Relation& f) {
  const std::size_t n = f.size();
  Dense m(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m[a][b] = f.contains(a, b);
  return m;
}

Relation from_dense(const CarrierPtr& carrier, const Dense& m) {
  std::vector<std::pair<CellIndex, CellIndex>> pairs;
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b)
      if (m[a][b]) pairs.emplace_back(a, b);
  return Relation::from_pairs(carrier, pairs);
}

// (x, y) in g o f iff exists z: f[x][z] && g[z][y]
Dense multiply(const Dense& f, const Dense& g) {
  const std::size_t n = f.size();
  Dense out(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n && !out[x][y]; ++z) out[x][y] = f[x][z] && g[z][y];
  return out;
}

std::size_t hash_dense(const Dense& m) {
  std::size_t h = 1469598103934665603ULL;
  for (const auto& row : m)
    for (bool b : row) h = (h ^ static_cast<std::size_t>(b)) * 1099511628211ULL;
  return h;
}

std::vector<std::pair<CellIndex, CellIndex>> pair_list(const Relation& r) { return r.pairs(); }

}  // namespace

Relation limit_relation_bruteforce(const Relation& f) {
  const std::size_t n = f.size();
  if (n > kMaxBruteForceSize)
    throw OracleGuard("brute-force limit relation is limited to " + std::to_string(kMaxBruteForceSize) +
                      " cells, got " + std::to_string(n));
  const Dense base = to_dense(f);
  std::vector<Dense> powers{base};
  std::multimap<std::size_t, std::size_t> seen{{hash_dense(base), 0}};

  while (true) {
    Dense next = multiply(powers.back(), base);
    const std::size_t h = hash_dense(next);
    auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      if (powers[it->second] != next) continue;
      // powers[start..end) is the eventual cycle
      Dense acc(n, std::vector<bool>(n, false));
      for (std::size_t k = it->second; k < powers.size(); ++k)
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            if (powers[k][a][b]) acc[a][b] = true;
      return from_dense(f.carrier(), acc);
    }
    seen.emplace(h, powers.size());
    powers.push_back(std::move(next));
  }
}

// ---------------------------------------------------------------- pseudo-orbits

namespace {

std::vector<std::vector<CellIndex>> sloppy_steps(const CarrierPtr& carrier, const std::vector<std::set<CellIndex>>& hits,
                                                 std::optional<double> eps) {
  const std::size_t n = carrier->size();
  std::vector<std::vector<CellIndex>> succ(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (!eps) {
      succ[x].assign(hits[x].begin(), hits[x].end());
      continue;
    }
    const double bound = (*eps + 2.0 * carrier->cell_radius()) * (1.0 + 1e-12);
    for (std::size_t y = 0; y < n; ++y) {
      const bool near = std::any_of(hits[x].begin(), hits[x].end(),
                                    [&](CellIndex z) { return carrier->distance(z, y) <= bound; });
      if (near) succ[x].push_back(y);
    }
  }
  return succ;
}

}  // namespace

PseudoOrbitGraph PseudoOrbitGraph::from_relation(const Relation& f, std::optional<double> eps) {
  std::vector<std::set<CellIndex>> hits(f.size());
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t z = 0; z < f.size(); ++z)
      if (f.contains(x, z)) hits[x].insert(z);
  return {sloppy_steps(f.carrier(), hits, eps)};
}

PseudoOrbitGraph PseudoOrbitGraph::from_system(const SystemSpec& sys, const CarrierPtr& carrier,
                                               std::optional<double> eps, std::size_t samples_per_cell) {
  const std::size_t n = carrier->size();
  const double h = 1.0 / static_cast<double>(n);
  auto cell_of = [&](double y) {
    auto j = static_cast<long long>(std::floor(y * static_cast<double>(n)));
    return static_cast<CellIndex>(std::clamp(j, 0LL, static_cast<long long>(n) - 1));
  };
  std::vector<std::set<CellIndex>> hits(n);
  for (std::size_t x = 0; x < n; ++x) {
    const double left = static_cast<double>(x) * h;
    for (std::size_t k = 0; k < samples_per_cell; ++k) {
      const double p = left + h * static_cast<double>(k) / static_cast<double>(samples_per_cell);
      hits[x].insert(cell_of(sys(p)));
    }
  }
  return {sloppy_steps(carrier, hits, eps)};
}

std::vector<bool> pseudo_orbit_reach(const PseudoOrbitGraph& graph, const std::vector<bool>& from,
                                     std::optional<std::size_t> steps) {
  std::vector<bool> seen = from;
  std::vector<CellIndex> frontier;
  for (std::size_t i = 0; i < from.size(); ++i)
    if (from[i]) frontier.push_back(i);
  std::size_t taken = 0;
  while (!frontier.empty() && (!steps || taken < *steps)) {
    std::vector<CellIndex> next;
    for (CellIndex x : frontier)
      for (CellIndex y : graph.successors[x])
        if (!seen[y]) {
          seen[y] = true;
          next.push_back(y);
        }
    frontier = std::move(next);
    ++taken;
  }
  return seen;
}

std::vector<bool> pseudo_orbit_level(const PseudoOrbitGraph& graph, const std::vector<bool>& from, std::size_t n) {
  std::vector<bool> level = from;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<bool> next(level.size(), false);
    for (std::size_t x = 0; x < level.size(); ++x)
      if (level[x])
        for (CellIndex y : graph.successors[x]) next[y] = true;
    level = std::move(next);
  }
  return level;
}

CellSet pseudo_orbit_reach(const Relation& f, std::optional<double> eps, const CellSet& from,
                           std::optional<std::size_t> steps) {
  const auto graph = PseudoOrbitGraph::from_relation(f, eps);
  std::vector<bool> start(f.size(), false);
  for (std::size_t i = 0; i < f.size(); ++i) start[i] = from.contains(i);
  const auto reached = pseudo_orbit_reach(graph, start, steps);
  std::vector<CellIndex> cells;
  for (std::size_t i = 0; i < reached.size(); ++i)
    if (reached[i]) cells.push_back(i);
  return CellSet::from_indices(f.carrier(), cells);
}

std::vector<bool> pseudo_orbit_recurrent(const PseudoOrbitGraph& graph) {
  const std::size_t n = graph.successors.size();
  std::vector<bool> out(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<bool> start(n, false);
    for (CellIndex y : graph.successors[x]) start[y] = true;
    out[x] = pseudo_orbit_reach(graph, start, std::nullopt)[x];
  }
  return out;
}

std::vector<bool> omega_image(const PseudoOrbitGraph& exact, CellIndex x) {
  const std::size_t n = exact.successors.size();
  std::vector<bool> start(n, false);
  start[x] = true;
  const auto ahead = pseudo_orbit_reach(exact, start, std::nullopt);
  std::vector<bool> cycling(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    if (!ahead[c]) continue;
    std::vector<bool> one(n, false);
    for (CellIndex y : exact.successors[c]) one[y] = true;
    cycling[c] = pseudo_orbit_reach(exact, one, std::nullopt)[c];
  }
  return pseudo_orbit_reach(exact, cycling, std::nullopt);
}

std::vector<bool> omega_pseudo_orbit_recurrent(const PseudoOrbitGraph& exact, const PseudoOrbitGraph& sloppy) {
  const std::size_t n = exact.successors.size();
  std::vector<bool> out(n, false);
  for (std::size_t x = 0; x < n; ++x) out[x] = pseudo_orbit_reach(sloppy, omega_image(exact, x), std::nullopt)[x];
  return out;
}

// ---------------------------------------------------------------- harness

HarnessReport exhaustive_harness(std::size_t carrier_size, bool exhaustive, std::size_t trials, std::uint64_t seed,
                                 double density) {
  if (carrier_size == 0 || carrier_size > kMaxBruteForceSize)
    throw OracleGuard("carrier size " + std::to_string(carrier_size) + " outside the oracle guard [1, " +
                      std::to_string(kMaxBruteForceSize) + "]");
  if (exhaustive && carrier_size > 3)
    throw OracleGuard("exhaustive enumeration is limited to carriers of at most 3 cells");

  const auto carrier = Carrier::abstract(carrier_size);
  const std::size_t pair_count = carrier_size * carrier_size;
  HarnessReport report{carrier_size, exhaustive, 0, 0, std::nullopt};

  auto check = [&](const Relation& f) {
    ++report.checked;
    const Relation fast = limit_relation(f);
    const Relation slow = limit_relation_bruteforce(f);
    if (fast == slow) {
      ++report.agreements;
    } else if (!report.counterexample) {
      report.counterexample = HarnessReport::Counterexample{pair_list(f), pair_list(fast), pair_list(slow)};
    }
  };

  if (exhaustive) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pair_count); ++mask) {
      RelationBuilder b(carrier);
      for (std::size_t p = 0; p < pair_count; ++p)
        if ((mask >> p) & 1U) b.set(p / carrier_size, p % carrier_size);
      check(std::move(b).build());
    }
    return report;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t t = 0; t < trials; ++t) {
    // sparse relations exercise acyclic and long-preperiod cases
    const double p = density >= 0.0 ? density : 0.05 + 0.45 * unit(rng);
    RelationBuilder b(carrier);
    for (std::size_t a = 0; a < carrier_size; ++a)
      for (std::size_t c = 0; c < carrier_size; ++c)
        if (unit(rng) < p) b.set(a, c);
    check(std::move(b).build());
  }
  return report;
}

}  // namespace conley::oracles
