#include "conley/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace conley {

std::string_view domain_name(Domain d) {
  return d == Domain::unit_interval ? "unit_interval" : "unit_circle";
}

CarrierPtr build_grid(const GridSpec& spec) {
  if (spec.cells_per_axis < 2) throw std::invalid_argument("grid needs at least 2 cells per axis");
  const std::size_t n = spec.cells_per_axis;
  const double radius = 0.5 / static_cast<double>(n);
  std::vector<double> centers(n);
  for (std::size_t i = 0; i < n; ++i) centers[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return Carrier::create(1, std::move(centers), radius,
                         spec.domain == Domain::unit_circle ? Metric::circle_wraparound : Metric::interval_euclidean);
}

GridSpec grid_of(const Carrier& carrier) {
  const std::size_t n = carrier.size();
  const double expected_radius = 0.5 / static_cast<double>(n);
  const bool uniform = carrier.dimension() == 1 && std::abs(carrier.cell_radius() - expected_radius) < 1e-12 &&
                       std::abs(carrier.center(0)[0] - expected_radius) < 1e-12 &&
                       std::abs(carrier.center(n - 1)[0] - (1.0 - expected_radius)) < 1e-12;
  if (!uniform) throw std::invalid_argument("carrier is not a uniform unit grid");
  return {carrier.metric() == Metric::circle_wraparound ? Domain::unit_circle : Domain::unit_interval, n};
}

// ---------------------------------------------------------------- systems

std::string_view system_name(SystemKind kind) {
  switch (kind) {
    case SystemKind::logistic: return "logistic";
    case SystemKind::rotation: return "rotation";
    case SystemKind::doubling: return "doubling";
    case SystemKind::tent: return "tent";
    case SystemKind::north_south: return "north_south";
  }
  return "unknown";
}

SystemKind parse_system_kind(std::string_view name) {
  for (auto kind : {SystemKind::logistic, SystemKind::rotation, SystemKind::doubling, SystemKind::tent,
                    SystemKind::north_south})
    if (system_name(kind) == name) return kind;
  throw SystemError("unknown system '" + std::string(name) + "'");
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::string> required_params(SystemKind kind) {
  switch (kind) {
    case SystemKind::logistic: return {"r"};
    case SystemKind::rotation: return {"alpha"};
    case SystemKind::doubling: return {};
    case SystemKind::tent: return {"mu"};
    case SystemKind::north_south: return {"delta"};
  }
  return {};
}

double documented_lipschitz(const SystemSpec& s) {
  switch (s.kind) {
    case SystemKind::logistic: return s.param("r");
    case SystemKind::rotation: return 1.0;
    case SystemKind::doubling: return 2.0;
    case SystemKind::tent: return s.param("mu");
    case SystemKind::north_south: return 1.0 + kTwoPi * std::abs(s.param("delta"));
  }
  return 1.0;
}

// Continuous lift of the map: circle maps are returned unreduced.
double lift(const SystemSpec& s, double x) {
  switch (s.kind) {
    case SystemKind::logistic: return s.param("r") * x * (1.0 - x);
    case SystemKind::rotation: return x + s.param("alpha");
    case SystemKind::doubling: return 2.0 * x;
    case SystemKind::tent: return s.param("mu") * std::min(x, 1.0 - x);
    case SystemKind::north_south: return x + s.param("delta") * std::sin(kTwoPi * x);
  }
  return x;
}

// Points of [0,1] where the lift changes monotonicity.
std::vector<double> turning_points(const SystemSpec& s) {
  switch (s.kind) {
    case SystemKind::logistic:
    case SystemKind::tent: return {0.5};
    case SystemKind::north_south: {
      // 1 + 2 pi delta cos(2 pi x) = 0
      const double c = -1.0 / (kTwoPi * s.param("delta"));
      if (std::abs(c) > 1.0) return {};
      const double t = std::acos(c) / kTwoPi;
      return {t, 1.0 - t};
    }
    default: return {};
  }
}

}  // namespace

SystemSpec SystemSpec::make(SystemKind kind, std::map<std::string, double> params) {
  SystemSpec s{kind, std::move(params), 1.0};
  for (const auto& name : required_params(kind))
    if (!s.params.contains(name))
      throw SystemError(std::string(system_name(kind)) + " requires parameter '" + name + "'");
  s.lipschitz_bound = documented_lipschitz(s);
  s.validate();
  return s;
}

Domain SystemSpec::domain() const {
  switch (kind) {
    case SystemKind::logistic:
    case SystemKind::tent: return Domain::unit_interval;
    default: return Domain::unit_circle;
  }
}

double SystemSpec::param(const std::string& name) const {
  const auto it = params.find(name);
  if (it == params.end()) throw SystemError(std::string(system_name(kind)) + " requires parameter '" + name + "'");
  return it->second;
}

void SystemSpec::validate() const {
  for (const auto& name : required_params(kind)) {
    const double v = param(name);
    if (!std::isfinite(v)) throw SystemError("parameter '" + name + "' must be finite");
  }
  if (kind == SystemKind::logistic && !(param("r") > 0.0 && param("r") <= 4.0))
    throw SystemError("logistic r must lie in (0, 4] to keep [0,1] invariant");
  if (kind == SystemKind::tent && !(param("mu") > 0.0 && param("mu") <= 2.0))
    throw SystemError("tent mu must lie in (0, 2] to keep [0,1] invariant");
  if (!(lipschitz_bound > 0.0) || !std::isfinite(lipschitz_bound))
    throw SystemError("lipschitz_bound must be positive");
}

double SystemSpec::operator()(double x) const {
  const double y = lift(*this, x);
  if (domain() == Domain::unit_interval) return std::clamp(y, 0.0, 1.0);
  const double r = y - std::floor(y);
  return r >= 1.0 ? 0.0 : r;
}

// ---------------------------------------------------------------- outer approximation

namespace {

void check_domain(Domain expected, const CarrierPtr& carrier) {
  const GridSpec grid = grid_of(*carrier);
  if (grid.domain != expected)
    throw SystemError("system lives on " + std::string(domain_name(expected)) + " but carrier is a " +
                      std::string(domain_name(grid.domain)) + " grid");
}

// Marks cells meeting the value range [lo, hi]; `hi_open` excludes hi itself.
// Values are in units of cells (already multiplied by n).
void mark_cells(RelationBuilder& out, CellIndex row, std::size_t n, Domain domain, double lo, double hi,
                bool hi_open) {
  const double jl = std::floor(lo);
  double jh = hi_open ? std::ceil(hi) - 1.0 : std::floor(hi);
  jh = std::max(jh, jl);
  if (domain == Domain::unit_interval) {
    const double last = static_cast<double>(n - 1);
    const auto a = static_cast<std::size_t>(std::clamp(jl, 0.0, last));
    const auto b = static_cast<std::size_t>(std::clamp(jh, 0.0, last));
    for (std::size_t j = a; j <= b; ++j) out.set(row, j);
    return;
  }
  if (jh - jl + 1.0 >= static_cast<double>(n)) {
    for (std::size_t j = 0; j < n; ++j) out.set(row, j);
    return;
  }
  const auto sn = static_cast<long long>(n);
  for (auto j = static_cast<long long>(jl); j <= static_cast<long long>(jh); ++j)
    out.set(row, static_cast<std::size_t>(((j % sn) + sn) % sn));
}

}  // namespace

Relation outer_approx(const SystemSpec& sys, const CarrierPtr& carrier) {
  sys.validate();
  check_domain(sys.domain(), carrier);
  const std::size_t n = carrier->size();
  const double scale = static_cast<double>(n);
  const auto turns = turning_points(sys);

  RelationBuilder out(carrier);
  for (CellIndex a = 0; a < n; ++a) {
    const double left = static_cast<double>(a) / scale;
    const double right = static_cast<double>(a + 1) / scale;
    const bool closed_right = sys.domain() == Domain::unit_interval && a + 1 == n;

    struct Candidate {
      double value;
      bool attained;
    };
    std::vector<Candidate> candidates{{lift(sys, left), true}, {lift(sys, right), closed_right}};
    for (double t : turns)
      if (t > left && t < right) candidates.push_back({lift(sys, t), true});

    double lo = candidates.front().value;
    double hi = lo;
    for (const auto& c : candidates) {
      lo = std::min(lo, c.value);
      hi = std::max(hi, c.value);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw SystemError(std::string(system_name(sys.kind)) + " produced an empty image for cell " + std::to_string(a));
    const bool hi_attained =
        std::any_of(candidates.begin(), candidates.end(), [&](const Candidate& c) { return c.attained && c.value == hi; });
    mark_cells(out, a, n, sys.domain(), lo * scale, hi * scale, !hi_attained);
  }
  return std::move(out).build();
}

Relation outer_approx_sampled(const CarrierPtr& carrier, const std::function<double(double)>& map, double lipschitz,
                              std::size_t samples_per_cell) {
  if (samples_per_cell == 0) throw std::invalid_argument("samples_per_cell must be positive");
  if (!(lipschitz > 0.0)) throw std::invalid_argument("lipschitz bound must be positive");
  const GridSpec grid = grid_of(*carrier);
  const std::size_t n = carrier->size();
  const double scale = static_cast<double>(n);
  const double spacing = 1.0 / (scale * static_cast<double>(samples_per_cell));
  const double pad = lipschitz * spacing;

  RelationBuilder out(carrier);
  for (CellIndex a = 0; a < n; ++a) {
    const double left = static_cast<double>(a) / scale;
    bool any = false;
    for (std::size_t k = 0; k < samples_per_cell; ++k) {
      const double x = left + (static_cast<double>(k) + 0.5) * spacing;
      const double y = map(x);
      if (!std::isfinite(y)) continue;
      any = true;
      mark_cells(out, a, n, grid.domain, (y - pad) * scale, (y + pad) * scale, false);
    }
    if (!any) throw SystemError("map produced no finite samples for cell " + std::to_string(a));
  }
  return std::move(out).build();
}

namespace {

double wrapped_step(double from, double to) {
  double d = to - from;
  d -= std::round(d);
  return d;
}

}  // namespace

double TabulatedMap::operator()(double x) const {
  if (values.size() < 2) throw std::invalid_argument("tabulated map needs at least two values");
  const std::size_t m = values.size();
  if (domain == Domain::unit_interval) {
    const double pos = std::clamp(x, 0.0, 1.0) * static_cast<double>(m - 1);
    const auto i = std::min(static_cast<std::size_t>(pos), m - 2);
    const double t = pos - static_cast<double>(i);
    return values[i] + t * (values[i + 1] - values[i]);
  }
  const double pos = (x - std::floor(x)) * static_cast<double>(m);
  const auto i = std::min(static_cast<std::size_t>(pos), m - 1);
  const double t = pos - static_cast<double>(i);
  const double y = values[i] + t * wrapped_step(values[i], values[(i + 1) % m]);
  return y - std::floor(y);
}

double TabulatedMap::lipschitz() const {
  const std::size_t m = values.size();
  double slope = 0.0;
  if (domain == Domain::unit_interval) {
    for (std::size_t i = 0; i + 1 < m; ++i)
      slope = std::max(slope, std::abs(values[i + 1] - values[i]) * static_cast<double>(m - 1));
  } else {
    for (std::size_t i = 0; i < m; ++i)
      slope = std::max(slope, std::abs(wrapped_step(values[i], values[(i + 1) % m])) * static_cast<double>(m));
  }
  return std::max(slope, 1e-12);
}

// ---------------------------------------------------------------- fattening

Relation fatten(const CarrierPtr& carrier, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("fattening radius must be non-negative");
  const double bound = (eps + 2.0 * carrier->cell_radius()) * (1.0 + 1e-12);
  RelationBuilder out(carrier);
  for (CellIndex a = 0; a < carrier->size(); ++a)
    for (CellIndex b = a; b < carrier->size(); ++b)
      if (carrier->distance(a, b) <= bound) {
        out.set(a, b);
        out.set(b, a);
      }
  return std::move(out).build();
}

EpsilonLadder EpsilonLadder::in_cells(std::vector<double> multiples, std::size_t cells_per_axis, bool identity_floor) {
  EpsilonLadder ladder;
  const double h = 1.0 / static_cast<double>(cells_per_axis);
  for (double m : multiples) ladder.values.push_back(m * h);
  ladder.include_identity_floor = identity_floor;
  return ladder;
}

void EpsilonLadder::validate() const {
  if (values.empty()) throw std::invalid_argument("epsilon ladder must not be empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw std::invalid_argument("epsilon ladder values must be positive");
    if (i > 0 && !(values[i] < values[i - 1]))
      throw std::invalid_argument("epsilon ladder must be strictly decreasing");
  }
}

SubResolutionRung::SubResolutionRung(std::size_t index_, double eps_, double diameter)
    : std::invalid_argument("ladder rung " + std::to_string(index_) + " (eps = " + std::to_string(eps_) +
                            ") is below the cell diameter " + std::to_string(diameter)),
      index(index_),
      eps(eps_) {}

std::vector<Rung> bind_ladder(const EpsilonLadder& ladder, const CarrierPtr& carrier) {
  ladder.validate();
  const double diameter = 2.0 * carrier->cell_radius();
  std::vector<Rung> rungs;
  for (std::size_t i = 0; i < ladder.values.size(); ++i) {
    const double eps = ladder.values[i];
    if (!ladder.include_identity_floor && eps < diameter * (1.0 - 1e-9)) throw SubResolutionRung(i, eps, diameter);
    rungs.push_back({eps, fatten(carrier, eps), false});
  }
  if (ladder.include_identity_floor) rungs.push_back({0.0, identity(carrier), true});
  return rungs;
}

}  // namespace conley
