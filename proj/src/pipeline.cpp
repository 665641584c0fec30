#include "conley/pipeline.hpp"

#include <algorithm>
#include <future>

namespace conley {
namespace {

template <typename Fn>
auto per_rung(std::size_t count, Execution exec, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Value = decltype(fn(std::size_t{}));
  std::vector<Value> out;
  out.reserve(count);
  if (exec == Execution::sequential || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
    return out;
  }
  std::vector<std::future<Value>> pending;
  pending.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pending.push_back(std::async(std::launch::async, fn, i));
  for (auto& p : pending) out.push_back(p.get());
  return out;
}

Relation intersect_all(const std::vector<Relation>& values) {
  Relation acc = values.front();
  for (std::size_t i = 1; i < values.size(); ++i) acc = relation_intersection(acc, values[i]);
  return acc;
}

void check_rungs(const Relation& f, std::span<const Rung> rungs) {
  if (rungs.empty()) throw std::invalid_argument("at least one ladder rung is required");
  for (const auto& r : rungs) require_same_carrier(f.carrier(), r.iota.carrier(), "ladder rung");
}

Relation complement(const Relation& r) { return relation_difference(Relation::full(r.carrier()), r); }

std::optional<std::pair<CellIndex, CellIndex>> first_difference(const Relation& a, const Relation& b) {
  auto ab = first_excess(a, b);
  auto ba = first_excess(b, a);
  if (ab && ba) return std::min(*ab, *ba);
  return ab ? ab : ba;
}

}  // namespace

std::vector<Relation> sloppy_maps(const Relation& f, std::span<const Rung> rungs, Execution exec) {
  check_rungs(f, rungs);
  return per_rung(rungs.size(), exec, [&](std::size_t i) { return compose(f, rungs[i].iota); });
}

RouteResult conley_by_definition(const Relation& f, std::span<const Rung> rungs, Execution exec) {
  check_rungs(f, rungs);
  auto lhs = per_rung(rungs.size(), exec, [&](std::size_t i) { return limit_relation(compose(f, rungs[i].iota)); });
  Relation meet = intersect_all(lhs);
  return {std::move(lhs), std::move(meet)};
}

RouteResult conley_by_alternative(const Relation& f, std::span<const Rung> rungs, const Relation& omega,
                                  Execution exec) {
  check_rungs(f, rungs);
  require_same_carrier(f.carrier(), omega.carrier(), "conley_by_alternative");
  auto rhs = per_rung(rungs.size(), exec, [&](std::size_t i) {
    return compose(omega, reach_closure(compose(f, rungs[i].iota)));
  });
  Relation meet = intersect_all(rhs);
  return {std::move(rhs), std::move(meet)};
}

RouteResult conley_by_alternative(const Relation& f, std::span<const Rung> rungs, Execution exec) {
  return conley_by_alternative(f, rungs, omega_limit(f), exec);
}

std::vector<CellSet> chain_components(const Relation& conley, const CellSet& recurrent) {
  require_same_carrier(conley.carrier(), recurrent.carrier(), "chain_components");
  // mutual relatedness on the recurrent cells, then its strong components
  RelationBuilder mutual(conley.carrier());
  for_each_bit(recurrent.words(), [&](std::size_t x) {
    for_each_bit(conley.row(x), [&](std::size_t y) {
      if (recurrent.contains(y) && conley.contains(y, x)) mutual.set(x, y);
    });
  });
  const Relation m = std::move(mutual).build();
  const auto scc = strongly_connected_components(m);

  std::vector<std::vector<CellIndex>> groups(scc.count());
  for_each_bit(recurrent.words(), [&](std::size_t x) { groups[scc.component_of[x]].push_back(x); });
  std::vector<CellSet> out;
  for (const auto& g : groups)
    if (!g.empty()) out.push_back(CellSet::from_indices(conley.carrier(), g));
  std::sort(out.begin(), out.end(),
            [](const CellSet& a, const CellSet& b) { return a.indices().front() < b.indices().front(); });
  return out;
}

MorseGraph morse_graph(const Relation& conley, std::vector<CellSet> components) {
  MorseGraph graph{std::move(components), {}};
  const std::size_t k = graph.nodes.size();
  std::vector<CellSet> reached;
  reached.reserve(k);
  for (const auto& node : graph.nodes) reached.push_back(image(conley, node));

  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (a != b && !set_intersection(reached[a], graph.nodes[b]).is_empty()) graph.edges.emplace_back(a, b);

  // Kahn's algorithm; leftover nodes mean a cycle.
  std::vector<std::size_t> indegree(k, 0);
  for (const auto& e : graph.edges) ++indegree[e.second];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < k; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    ++removed;
    for (const auto& e : graph.edges)
      if (e.first == v && --indegree[e.second] == 0) ready.push_back(e.second);
  }
  if (removed != k) throw MorseGraphCycle("Morse graph has a cycle between distinct chain components");
  return graph;
}

std::vector<IdentityResult> identity_suite(const Relation& f, const Relation& omega, std::span<const RungResult> rungs,
                                           const Relation& conley_def, const Relation& conley_alt) {
  std::vector<IdentityResult> out;
  auto equal = [&](std::string name, bool must, const Relation& lhs, const Relation& rhs) {
    out.push_back({std::move(name), must, lhs == rhs, first_difference(lhs, rhs)});
  };
  auto subset = [&](std::string name, bool must, const Relation& small, const Relation& big) {
    auto excess = first_excess(small, big);
    out.push_back({std::move(name), must, !excess.has_value(), excess});
  };

  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const auto& r = rungs[i];
    const std::string tag = "rung " + std::to_string(i) + ": ";
    equal(tag + "phi o phi^inf = phi^inf", true, compose(r.lhs, r.phi), r.lhs);
    equal(tag + "phi^inf o phi = phi^inf", true, compose(r.phi, r.lhs), r.lhs);
    equal(tag + "phi^inf o phi^inf = phi^inf", true, compose(r.lhs, r.lhs), r.lhs);
    subset(tag + "rhs subset lhs", true, r.rhs, r.lhs);
  }

  subset("f^omega subset conley_def", true, omega, conley_def);
  subset("f^omega subset conley_alt", true, omega, conley_alt);
  subset("f o f^omega contains f^omega", true, omega, compose(omega, f));
  subset("f^omega o f contains f^omega", true, omega, compose(f, omega));
  subset("f^omega o f^omega contains f^omega", true, omega, compose(omega, omega));
  subset("conley_alt subset conley_def", true, conley_alt, conley_def);

  // Exact for the true Conley relation; a truncated ladder need not obey them.
  equal("conley_alt o f^omega = conley_alt", false, compose(omega, conley_alt), conley_alt);
  equal("conley_def o f^omega = conley_def", false, compose(omega, conley_def), conley_def);
  equal("f o conley_alt = conley_alt", false, compose(conley_alt, f), conley_alt);
  equal("conley_alt o f = conley_alt", false, compose(f, conley_alt), conley_alt);
  equal("conley_alt o conley_alt = conley_alt", false, compose(conley_alt, conley_alt), conley_alt);
  equal("conley_def = conley_alt", false, conley_def, conley_alt);
  return out;
}

bool must_hold_identities_pass(std::span<const IdentityResult> results) {
  return std::all_of(results.begin(), results.end(), [](const IdentityResult& r) { return !r.must_hold || r.holds; });
}

ConleyReport run_pipeline(const Relation& f, std::span<const Rung> rungs, const PipelineOptions& options) {
  check_rungs(f, rungs);
  const Relation omega = omega_limit(f, options.dilation);
  auto phis = sloppy_maps(f, rungs, options.execution);

  struct Pair {
    Relation lhs;
    Relation rhs;
  };
  auto computed = per_rung(rungs.size(), options.execution, [&](std::size_t i) {
    return Pair{limit_relation(phis[i]), compose(omega, reach_closure(phis[i]))};
  });

  ConleyReport report{.per_rung = {},
                      .omega = omega,
                      .conley_def = omega,
                      .conley_alt = omega,
                      .routes_equal = false,
                      .chain_recurrent = CellSet::empty(f.carrier()),
                      .chain_recurrent_def = CellSet::empty(f.carrier()),
                      .components = {},
                      .morse = {},
                      .identities = {}};
  std::vector<Relation> lhs;
  std::vector<Relation> rhs;
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    Relation l = computed[i].lhs;
    if (options.corrupt_limit && i == 0) l = complement(l);
    lhs.push_back(l);
    rhs.push_back(computed[i].rhs);
    report.per_rung.push_back({rungs[i].eps, rungs[i].identity_floor, phis[i], std::move(l), computed[i].rhs});
  }
  report.conley_def = intersect_all(lhs);
  report.conley_alt = intersect_all(rhs);
  report.routes_equal = report.conley_def == report.conley_alt;
  report.chain_recurrent = fixed_points(report.conley_alt);
  report.chain_recurrent_def = fixed_points(report.conley_def);
  report.components = chain_components(report.conley_alt, report.chain_recurrent);
  report.morse = morse_graph(report.conley_alt, report.components);
  report.identities = identity_suite(f, omega, report.per_rung, report.conley_def, report.conley_alt);
  return report;
}

}  // namespace conley
