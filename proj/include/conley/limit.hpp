#pragma once

// Limit relations of a finite relation viewed as a directed graph.
//
// On a finite carrier the limit relation f^inf (the lim-sup of the power
// sequence f, f^2, ...) is the set of pairs joined by walks of unbounded
// length. Such walks must revisit a cell, so they pass through a cell lying
// on a directed cycle; conversely a walk through a cyclic cell can be pumped
// by whole cycle lengths. Hence
//
//   f^inf = {(x, y) : some cyclic c has x ->* c ->* y}
//
// which is computed from one strongly connected component pass.

#include <cstddef>
#include <vector>

#include "conley/relation.hpp"

namespace conley {

struct SccDecomposition {
  CarrierPtr carrier;
  // Component ids are 0..count-1 in reverse topological order: every edge
  // leaving component c lands in a component with a smaller id.
  std::vector<std::size_t> component_of;
  std::vector<std::size_t> component_sizes;
  std::vector<bool> has_self_loop;

  std::size_t count() const { return component_sizes.size(); }
  bool is_cyclic_cell(CellIndex c) const {
    return component_sizes[component_of[c]] >= 2 || has_self_loop[c];
  }
};

SccDecomposition strongly_connected_components(const Relation& f);

// Cells on some directed cycle: members of SCCs of size >= 2 or self-looped.
CellSet cyclic_cells(const Relation& f);

// Reflexive-transitive closure f* = union over n >= 0 of f^n.
Relation reach_closure(const Relation& f);

// f^inf.
Relation limit_relation(const Relation& f);

enum class ClosureDilation { none, one_cell };

// f^omega. On a discrete finite carrier the topological closure is the
// identity, so this equals limit_relation(f). With one_cell dilation the
// result is N o f^inf o N, N relating each cell to those within one cell.
Relation omega_limit(const Relation& f, ClosureDilation dilation = ClosureDilation::none);

}  // namespace conley
