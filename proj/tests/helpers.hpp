#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "conley/relation.hpp"

namespace conley::testing {

inline Relation rel(const CarrierPtr& c, std::initializer_list<std::pair<CellIndex, CellIndex>> pairs) {
  std::vector<std::pair<CellIndex, CellIndex>> v(pairs);
  return Relation::from_pairs(c, v);
}

inline CellSet cells(const CarrierPtr& c, std::initializer_list<CellIndex> idx) {
  std::vector<CellIndex> v(idx);
  return CellSet::from_indices(c, v);
}

inline Relation random_relation(const CarrierPtr& c, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution coin(density);
  RelationBuilder b(c);
  for (CellIndex a = 0; a < c->size(); ++a)
    for (CellIndex x = 0; x < c->size(); ++x)
      if (coin(rng)) b.set(a, x);
  return std::move(b).build();
}

// Random relation with density itself drawn from [0.05, 0.5].
inline Relation random_relation(const CarrierPtr& c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.05, 0.5);
  return random_relation(c, rng, d(rng));
}

inline Relation random_superset(const Relation& f, std::mt19937_64& rng, double extra) {
  std::bernoulli_distribution coin(extra);
  RelationBuilder b(f);
  for (CellIndex a = 0; a < f.size(); ++a)
    for (CellIndex x = 0; x < f.size(); ++x)
      if (coin(rng)) b.set(a, x);
  return std::move(b).build();
}

// Naive triple-loop composition: (x, y) iff exists z with f(x,z), g(z,y).
inline Relation naive_compose(const Relation& f, const Relation& g) {
  RelationBuilder b(f.carrier());
  const std::size_t n = f.size();
  for (CellIndex x = 0; x < n; ++x)
    for (CellIndex y = 0; y < n; ++y)
      for (CellIndex z = 0; z < n; ++z)
        if (f.contains(x, z) && g.contains(z, y)) {
          b.set(x, y);
          break;
        }
  return std::move(b).build();
}

}  // namespace conley::testing
