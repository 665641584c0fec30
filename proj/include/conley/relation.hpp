#pragma once

// Finite relations on an indexed cell carrier, stored as bit-packed boolean
// matrices. Row a holds the targets of source cell a: entry (a, b) is set
// iff b is in f(a).
//
// Composition follows the "g after f" convention: compose(f, g) is g o f,
// the set of (x, y) with some z such that (x, z) in f and (z, y) in g.
// With row = source this is the boolean matrix product F * G.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conley/kernels.hpp"

namespace conley {

using Word = kernels::Word;
using CellIndex = std::size_t;

inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

enum class Metric { interval_euclidean, circle_wraparound };

/// Raised when two values that must share a carrier do not.
class IncompatibleCarriers : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The discretized phase space: `size` cells with centers, a common cell
/// radius and a metric. Carriers are shared by pointer and compared by
/// identity.
class Carrier {
 public:
  static std::shared_ptr<const Carrier> create(std::size_t dimension, std::vector<double> center_coords,
                                               double cell_radius, Metric metric);

  // Unit-interval grid of n cells; convenient for abstract relations.
  static std::shared_ptr<const Carrier> abstract(std::size_t n);

  std::size_t size() const { return size_; }
  std::size_t dimension() const { return dimension_; }
  double cell_radius() const { return cell_radius_; }
  Metric metric() const { return metric_; }
  std::span<const double> center(CellIndex i) const {
    return {coords_.data() + i * dimension_, dimension_};
  }
  double distance(CellIndex a, CellIndex b) const;

 private:
  Carrier() = default;

  std::size_t size_ = 0;
  std::size_t dimension_ = 1;
  std::vector<double> coords_;
  double cell_radius_ = 0.0;
  Metric metric_ = Metric::interval_euclidean;
};

using CarrierPtr = std::shared_ptr<const Carrier>;

void require_same_carrier(const CarrierPtr& a, const CarrierPtr& b, const char* what);

// Calls fn(index) for every set bit, in increasing order.
template <typename Fn>
void for_each_bit(std::span<const Word> words, Fn&& fn) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    Word bits = words[w];
    while (bits) {
      const auto tz = static_cast<std::size_t>(__builtin_ctzll(bits));
      fn(w * kWordBits + tz);
      bits &= bits - 1;
    }
  }
}

/// A subset of a carrier's cells.
class CellSet {
 public:
  static CellSet empty(CarrierPtr carrier);
  static CellSet full(CarrierPtr carrier);
  static CellSet from_indices(CarrierPtr carrier, std::span<const CellIndex> indices);
  static CellSet from_words(CarrierPtr carrier, std::vector<Word> words);

  const CarrierPtr& carrier() const { return carrier_; }
  std::size_t universe_size() const { return carrier_->size(); }
  bool contains(CellIndex i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  std::size_t count() const;
  bool is_empty() const { return count() == 0; }
  std::vector<CellIndex> indices() const;
  std::span<const Word> words() const { return words_; }

  CellSet with(CellIndex i) const;

  friend bool operator==(const CellSet& a, const CellSet& b);

 private:
  CellSet(CarrierPtr carrier, std::vector<Word> words) : carrier_(std::move(carrier)), words_(std::move(words)) {}

  CarrierPtr carrier_;
  std::vector<Word> words_;
};

CellSet set_union(const CellSet& a, const CellSet& b);
CellSet set_intersection(const CellSet& a, const CellSet& b);
CellSet set_difference(const CellSet& a, const CellSet& b);
bool is_subset(const CellSet& a, const CellSet& b);

class RelationBuilder;

/// An immutable relation on a carrier.
class Relation {
 public:
  static Relation empty(CarrierPtr carrier);
  static Relation full(CarrierPtr carrier);
  static Relation from_pairs(CarrierPtr carrier, std::span<const std::pair<CellIndex, CellIndex>> pairs);

  const CarrierPtr& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_->size(); }
  std::size_t words_per_row() const { return words_per_row_; }

  bool contains(CellIndex a, CellIndex b) const {
    return (bits_[a * words_per_row_ + b / kWordBits] >> (b % kWordBits)) & 1U;
  }
  std::span<const Word> row(CellIndex a) const {
    return {bits_.data() + a * words_per_row_, words_per_row_};
  }
  std::span<const Word> words() const { return bits_; }

  CellSet row_set(CellIndex a) const;
  std::size_t cardinality() const;
  bool is_empty() const;
  std::vector<std::pair<CellIndex, CellIndex>> pairs() const;

  friend bool operator==(const Relation& a, const Relation& b);

 private:
  friend class RelationBuilder;
  Relation(CarrierPtr carrier, std::vector<Word> bits);

  CarrierPtr carrier_;
  std::size_t words_per_row_ = 0;
  std::vector<Word> bits_;
};

/// Mutable staging area for constructing a Relation.
class RelationBuilder {
 public:
  explicit RelationBuilder(CarrierPtr carrier);
  explicit RelationBuilder(const Relation& start);

  RelationBuilder& set(CellIndex a, CellIndex b);
  RelationBuilder& reset(CellIndex a, CellIndex b);
  RelationBuilder& flip(CellIndex a, CellIndex b);
  bool test(CellIndex a, CellIndex b) const {
    return (bits_[a * words_per_row_ + b / kWordBits] >> (b % kWordBits)) & 1U;
  }
  std::span<Word> row(CellIndex a) { return {bits_.data() + a * words_per_row_, words_per_row_}; }
  std::size_t words_per_row() const { return words_per_row_; }

  Relation build() &&;

 private:
  CarrierPtr carrier_;
  std::size_t words_per_row_;
  std::vector<Word> bits_;
};

// The diagonal I = {(x, x)}.
Relation identity(const CarrierPtr& carrier);

// The diagonal restricted to a cell set, {(x, x) : x in s}.
Relation diagonal(const CellSet& s);

// g o f: first f, then g.
Relation compose(const Relation& f, const Relation& g);

// f^n with f^0 = I, by repeated squaring.
Relation power(const Relation& f, std::size_t n);

Relation relation_union(const Relation& f, const Relation& g);
Relation relation_intersection(const Relation& f, const Relation& g);
Relation relation_difference(const Relation& f, const Relation& g);
Relation transpose(const Relation& f);
bool is_subset(const Relation& f, const Relation& g);

// First pair in f but not in g, if any.
std::optional<std::pair<CellIndex, CellIndex>> first_excess(const Relation& f, const Relation& g);

// f(s) = {y : exists x in s, (x, y) in f}.
CellSet image(const Relation& f, const CellSet& s);

// {x : (x, x) in f}.
CellSet fixed_points(const Relation& f);

}  // namespace conley
