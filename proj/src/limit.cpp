#include "conley/limit.hpp"

#include <algorithm>
#include <limits>

namespace conley {

// Iterative Tarjan. Components are emitted sinks-first, which yields the
// reverse topological numbering documented on SccDecomposition.
SccDecomposition strongly_connected_components(const Relation& f) {
  const std::size_t n = f.size();
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();

  SccDecomposition scc;
  scc.carrier = f.carrier();
  scc.component_of.assign(n, kUnvisited);
  scc.has_self_loop.assign(n, false);
  for (CellIndex v = 0; v < n; ++v) scc.has_self_loop[v] = f.contains(v, v);

  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<CellIndex> stack;
  std::size_t next_index = 0;

  // Call frame: vertex and the next successor position to examine.
  struct Frame {
    CellIndex vertex;
    std::size_t next_bit;
  };
  std::vector<Frame> frames;

  auto next_successor = [&](CellIndex v, std::size_t from) -> std::size_t {
    const auto row = f.row(v);
    std::size_t w = from / kWordBits;
    if (w >= row.size()) return n;
    Word bits = row[w] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (bits) return w * kWordBits + static_cast<std::size_t>(__builtin_ctzll(bits));
      if (++w >= row.size()) return n;
      bits = row[w];
    }
  };

  for (CellIndex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      Frame& frame = frames.back();
      const CellIndex v = frame.vertex;
      const std::size_t w = next_successor(v, frame.next_bit);
      if (w < n) {
        frame.next_bit = w + 1;
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }

      if (lowlink[v] == index[v]) {
        const std::size_t id = scc.component_sizes.size();
        std::size_t members = 0;
        CellIndex u;
        do {
          u = stack.back();
          stack.pop_back();
          on_stack[u] = false;
          scc.component_of[u] = id;
          ++members;
        } while (u != v);
        scc.component_sizes.push_back(members);
      }
      frames.pop_back();
      if (!frames.empty()) {
        const CellIndex parent = frames.back().vertex;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }
  return scc;
}

CellSet cyclic_cells(const Relation& f) {
  const auto scc = strongly_connected_components(f);
  std::vector<CellIndex> cells;
  for (CellIndex c = 0; c < f.size(); ++c)
    if (scc.is_cyclic_cell(c)) cells.push_back(c);
  return CellSet::from_indices(f.carrier(), cells);
}

namespace {

// Per-component reachability over the condensation. Because components are
// numbered sinks-first, every successor component is finished before its
// predecessors are visited. `seed` decides whether a component contributes
// its own reach set (reach closure: always; limit relation: only cyclic
// components); non-seeding components inherit the union of their successors.
struct Condensation {
  SccDecomposition scc;
  std::vector<std::vector<CellIndex>> members;
};

Condensation condense(const Relation& f) {
  Condensation c{strongly_connected_components(f), {}};
  c.members.resize(c.scc.count());
  for (CellIndex v = 0; v < f.size(); ++v) c.members[c.scc.component_of[v]].push_back(v);
  return c;
}

std::vector<std::vector<Word>> component_reach(const Relation& f, const Condensation& cond) {
  const auto& k = kernels::active();
  const std::size_t wpr = f.words_per_row();
  std::vector<std::vector<Word>> reach(cond.scc.count());
  std::vector<std::size_t> seen_by(cond.scc.count(), std::numeric_limits<std::size_t>::max());

  for (std::size_t id = 0; id < cond.scc.count(); ++id) {
    std::vector<Word> acc(wpr, 0);
    for (CellIndex v : cond.members[id]) acc[v / kWordBits] |= Word{1} << (v % kWordBits);
    seen_by[id] = id;
    for (CellIndex v : cond.members[id]) {
      for_each_bit(f.row(v), [&](std::size_t w) {
        const std::size_t succ = cond.scc.component_of[w];
        if (seen_by[succ] == id) return;
        seen_by[succ] = id;
        k.or_into(acc.data(), reach[succ].data(), wpr);
      });
    }
    reach[id] = std::move(acc);
  }
  return reach;
}

Relation expand(const Relation& f, const Condensation& cond, const std::vector<std::vector<Word>>& per_component) {
  RelationBuilder out(f.carrier());
  for (CellIndex v = 0; v < f.size(); ++v) {
    const auto& src = per_component[cond.scc.component_of[v]];
    std::copy(src.begin(), src.end(), out.row(v).begin());
  }
  return std::move(out).build();
}

}  // namespace

Relation reach_closure(const Relation& f) {
  const auto cond = condense(f);
  return expand(f, cond, component_reach(f, cond));
}

Relation limit_relation(const Relation& f) {
  const auto cond = condense(f);
  const auto reach = component_reach(f, cond);
  const auto& k = kernels::active();
  const std::size_t wpr = f.words_per_row();

  std::vector<std::vector<Word>> limit(cond.scc.count());
  std::vector<std::size_t> seen_by(cond.scc.count(), std::numeric_limits<std::size_t>::max());
  for (std::size_t id = 0; id < cond.scc.count(); ++id) {
    const CellIndex rep = cond.members[id].front();
    if (cond.scc.is_cyclic_cell(rep)) {
      // everything reachable from a cycle is reachable by unbounded walks
      limit[id] = reach[id];
      continue;
    }
    std::vector<Word> acc(wpr, 0);
    seen_by[id] = id;
    for_each_bit(f.row(rep), [&](std::size_t w) {
      const std::size_t succ = cond.scc.component_of[w];
      if (seen_by[succ] == id) return;
      seen_by[succ] = id;
      k.or_into(acc.data(), limit[succ].data(), wpr);
    });
    limit[id] = std::move(acc);
  }
  return expand(f, cond, limit);
}

Relation omega_limit(const Relation& f, ClosureDilation dilation) {
  Relation lim = limit_relation(f);
  if (dilation == ClosureDilation::none) return lim;

  // N: cells whose centers are within one cell diameter.
  const auto& carrier = f.carrier();
  const double reach = 2.0 * carrier->cell_radius() * (1.0 + 1e-9);
  RelationBuilder neighbours(carrier);
  for (CellIndex a = 0; a < carrier->size(); ++a)
    for (CellIndex b = 0; b < carrier->size(); ++b)
      if (carrier->distance(a, b) <= reach) neighbours.set(a, b);
  const Relation n = std::move(neighbours).build();
  return compose(compose(n, lim), n);
}

}  // namespace conley
