#pragma once

// The Conley relation by two routes, chain recurrence, and Morse graphs.
//
// For a rung with fattening iota (iota contains I) the pipeline forms the
// eps-sloppy map phi = iota o f, fattening after each step of f. Then
//
//   definitional route:  LHS = phi^inf,       f^Omega ~ intersection of LHS
//   alternative route:   RHS = phi* o f^omega, f^Omega ~ intersection of RHS
//
// where phi* is the reflexive-transitive closure, equal to the union of all
// phi^n. RHS is contained in LHS at every rung, and both collapse to f^inf
// on the identity floor iota = I.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conley/discretization.hpp"
#include "conley/limit.hpp"
#include "conley/relation.hpp"

namespace conley {

enum class Execution { sequential, parallel };

struct RouteResult {
  std::vector<Relation> per_rung;
  Relation intersection;
};

// phi = iota o f for every rung.
std::vector<Relation> sloppy_maps(const Relation& f, std::span<const Rung> rungs, Execution exec = Execution::parallel);

RouteResult conley_by_definition(const Relation& f, std::span<const Rung> rungs,
                                 Execution exec = Execution::parallel);

RouteResult conley_by_alternative(const Relation& f, std::span<const Rung> rungs, const Relation& omega,
                                  Execution exec = Execution::parallel);
RouteResult conley_by_alternative(const Relation& f, std::span<const Rung> rungs,
                                  Execution exec = Execution::parallel);

// Mutual-relatedness classes of `conley` restricted to `recurrent`, ordered
// by smallest member.
std::vector<CellSet> chain_components(const Relation& conley, const CellSet& recurrent);

struct MorseGraph {
  std::vector<CellSet> nodes;
  // (from, to) node indices, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

class MorseGraphCycle : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Edge A -> B iff A != B and some a in A, b in B have (a, b) in conley.
// Throws MorseGraphCycle if the edges are not acyclic.
MorseGraph morse_graph(const Relation& conley, std::vector<CellSet> components);

struct IdentityResult {
  std::string name;
  bool must_hold = true;
  bool holds = true;
  std::optional<std::pair<CellIndex, CellIndex>> counterexample;
};

struct RungResult {
  double eps = 0.0;
  bool identity_floor = false;
  Relation phi;
  Relation lhs;
  Relation rhs;
};

std::vector<IdentityResult> identity_suite(const Relation& f, const Relation& omega, std::span<const RungResult> rungs,
                                           const Relation& conley_def, const Relation& conley_alt);

bool must_hold_identities_pass(std::span<const IdentityResult> results);

struct PipelineOptions {
  ClosureDilation dilation = ClosureDilation::none;
  Execution execution = Execution::parallel;
  // Testing aid: complements the first rung's limit relation so the
  // identity suite has something to catch.
  bool corrupt_limit = false;
};

struct ConleyReport {
  std::vector<RungResult> per_rung;
  Relation omega;
  Relation conley_def;
  Relation conley_alt;
  bool routes_equal = false;
  // Fixed points of conley_alt (the reported f^Omega) and of conley_def.
  CellSet chain_recurrent;
  CellSet chain_recurrent_def;
  std::vector<CellSet> components;
  MorseGraph morse;
  std::vector<IdentityResult> identities;
};

ConleyReport run_pipeline(const Relation& f, std::span<const Rung> rungs, const PipelineOptions& options = {});

}  // namespace conley
