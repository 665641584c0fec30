#include "conley/relation.hpp"

#include <algorithm>
#include <cmath>

namespace conley {

// ---------------------------------------------------------------- Carrier

std::shared_ptr<const Carrier> Carrier::create(std::size_t dimension, std::vector<double> center_coords,
                                               double cell_radius, Metric metric) {
  if (dimension != 1 && dimension != 2) throw std::invalid_argument("carrier dimension must be 1 or 2");
  if (center_coords.empty() || center_coords.size() % dimension != 0)
    throw std::invalid_argument("carrier needs at least one center with " + std::to_string(dimension) +
                                " coordinates");
  if (!(cell_radius > 0.0)) throw std::invalid_argument("carrier cell radius must be positive");

  const std::size_t n = center_coords.size() / dimension;
  std::vector<std::vector<double>> sorted(n);
  for (std::size_t i = 0; i < n; ++i)
    sorted[i].assign(center_coords.begin() + static_cast<std::ptrdiff_t>(i * dimension),
                     center_coords.begin() + static_cast<std::ptrdiff_t>((i + 1) * dimension));
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("carrier centers must be distinct");

  auto carrier = std::shared_ptr<Carrier>(new Carrier());
  carrier->size_ = n;
  carrier->dimension_ = dimension;
  carrier->coords_ = std::move(center_coords);
  carrier->cell_radius_ = cell_radius;
  carrier->metric_ = metric;
  return carrier;
}

std::shared_ptr<const Carrier> Carrier::abstract(std::size_t n) {
  if (n == 0) throw std::invalid_argument("carrier size must be at least 1");
  const double radius = 0.5 / static_cast<double>(n);
  std::vector<double> centers(n);
  for (std::size_t i = 0; i < n; ++i) centers[i] = (2.0 * static_cast<double>(i) + 1.0) * radius;
  return create(1, std::move(centers), radius, Metric::interval_euclidean);
}

double Carrier::distance(CellIndex a, CellIndex b) const {
  const auto ca = center(a);
  const auto cb = center(b);
  double sum = 0.0;
  for (std::size_t k = 0; k < dimension_; ++k) {
    double d = std::abs(ca[k] - cb[k]);
    if (metric_ == Metric::circle_wraparound) d = std::min(d, 1.0 - d);
    sum += d * d;
  }
  return std::sqrt(sum);
}

void require_same_carrier(const CarrierPtr& a, const CarrierPtr& b, const char* what) {
  if (a.get() != b.get()) throw IncompatibleCarriers(std::string(what) + ": operands live on different carriers");
}

// ---------------------------------------------------------------- CellSet

CellSet CellSet::empty(CarrierPtr carrier) {
  const std::size_t n = words_for(carrier->size());
  return CellSet(std::move(carrier), std::vector<Word>(n, 0));
}

CellSet CellSet::full(CarrierPtr carrier) {
  const std::size_t size = carrier->size();
  std::vector<Word> words(words_for(size), ~Word{0});
  if (size % kWordBits) words.back() = (Word{1} << (size % kWordBits)) - 1;
  return CellSet(std::move(carrier), std::move(words));
}

CellSet CellSet::from_indices(CarrierPtr carrier, std::span<const CellIndex> indices) {
  std::vector<Word> words(words_for(carrier->size()), 0);
  for (CellIndex i : indices) {
    if (i >= carrier->size()) throw std::out_of_range("cell index " + std::to_string(i) + " outside carrier");
    words[i / kWordBits] |= Word{1} << (i % kWordBits);
  }
  return CellSet(std::move(carrier), std::move(words));
}

CellSet CellSet::from_words(CarrierPtr carrier, std::vector<Word> words) {
  if (words.size() != words_for(carrier->size())) throw std::invalid_argument("cell set word count mismatch");
  if (carrier->size() % kWordBits && (words.back() >> (carrier->size() % kWordBits)))
    throw std::out_of_range("cell set has members outside the carrier");
  return CellSet(std::move(carrier), std::move(words));
}

std::size_t CellSet::count() const { return kernels::active().popcount(words_.data(), words_.size()); }

std::vector<CellIndex> CellSet::indices() const {
  std::vector<CellIndex> out;
  for_each_bit(words(), [&](std::size_t i) { out.push_back(i); });
  return out;
}

CellSet CellSet::with(CellIndex i) const {
  if (i >= carrier_->size()) throw std::out_of_range("cell index outside carrier");
  auto words = words_;
  words[i / kWordBits] |= Word{1} << (i % kWordBits);
  return CellSet(carrier_, std::move(words));
}

bool operator==(const CellSet& a, const CellSet& b) {
  return a.carrier_.get() == b.carrier_.get() && a.words_ == b.words_;
}

namespace {

template <typename Op>
CellSet combine(const CellSet& a, const CellSet& b, Op op, const char* what) {
  require_same_carrier(a.carrier(), b.carrier(), what);
  std::vector<Word> words(a.words().begin(), a.words().end());
  op(words.data(), b.words().data(), words.size());
  return CellSet::from_words(a.carrier(), std::move(words));
}

}  // namespace

CellSet set_union(const CellSet& a, const CellSet& b) {
  return combine(a, b, kernels::active().or_into, "set_union");
}
CellSet set_intersection(const CellSet& a, const CellSet& b) {
  return combine(a, b, kernels::active().and_into, "set_intersection");
}
CellSet set_difference(const CellSet& a, const CellSet& b) {
  return combine(a, b, kernels::active().andnot_into, "set_difference");
}
bool is_subset(const CellSet& a, const CellSet& b) {
  require_same_carrier(a.carrier(), b.carrier(), "is_subset");
  return kernels::active().is_subset(a.words().data(), b.words().data(), a.words().size());
}

// ---------------------------------------------------------------- Relation

Relation::Relation(CarrierPtr carrier, std::vector<Word> bits)
    : carrier_(std::move(carrier)), words_per_row_(words_for(carrier_->size())), bits_(std::move(bits)) {}

Relation Relation::empty(CarrierPtr carrier) { return RelationBuilder(std::move(carrier)).build(); }

Relation Relation::full(CarrierPtr carrier) {
  RelationBuilder builder(carrier);
  const auto ones = CellSet::full(carrier);
  for (CellIndex a = 0; a < carrier->size(); ++a) std::ranges::copy(ones.words(), builder.row(a).begin());
  return std::move(builder).build();
}

Relation Relation::from_pairs(CarrierPtr carrier, std::span<const std::pair<CellIndex, CellIndex>> pairs) {
  RelationBuilder builder(std::move(carrier));
  for (const auto& [a, b] : pairs) builder.set(a, b);
  return std::move(builder).build();
}

CellSet Relation::row_set(CellIndex a) const {
  auto r = row(a);
  return CellSet::from_words(carrier_, std::vector<Word>(r.begin(), r.end()));
}

std::size_t Relation::cardinality() const { return kernels::active().popcount(bits_.data(), bits_.size()); }

bool Relation::is_empty() const {
  return std::all_of(bits_.begin(), bits_.end(), [](Word w) { return w == 0; });
}

std::vector<std::pair<CellIndex, CellIndex>> Relation::pairs() const {
  std::vector<std::pair<CellIndex, CellIndex>> out;
  for (CellIndex a = 0; a < size(); ++a) for_each_bit(row(a), [&](std::size_t b) { out.emplace_back(a, b); });
  return out;
}

bool operator==(const Relation& a, const Relation& b) {
  return a.carrier_.get() == b.carrier_.get() && a.bits_ == b.bits_;
}

RelationBuilder::RelationBuilder(CarrierPtr carrier)
    : carrier_(std::move(carrier)),
      words_per_row_(words_for(carrier_->size())),
      bits_(carrier_->size() * words_per_row_, 0) {}

RelationBuilder::RelationBuilder(const Relation& start)
    : carrier_(start.carrier()),
      words_per_row_(start.words_per_row()),
      bits_(start.words().begin(), start.words().end()) {}

namespace {

void check_cell(const CarrierPtr& carrier, CellIndex a, CellIndex b) {
  if (a >= carrier->size() || b >= carrier->size())
    throw std::out_of_range("pair (" + std::to_string(a) + "," + std::to_string(b) + ") outside carrier of size " +
                            std::to_string(carrier->size()));
}

}  // namespace

RelationBuilder& RelationBuilder::set(CellIndex a, CellIndex b) {
  check_cell(carrier_, a, b);
  bits_[a * words_per_row_ + b / kWordBits] |= Word{1} << (b % kWordBits);
  return *this;
}

RelationBuilder& RelationBuilder::reset(CellIndex a, CellIndex b) {
  check_cell(carrier_, a, b);
  bits_[a * words_per_row_ + b / kWordBits] &= ~(Word{1} << (b % kWordBits));
  return *this;
}

RelationBuilder& RelationBuilder::flip(CellIndex a, CellIndex b) {
  check_cell(carrier_, a, b);
  bits_[a * words_per_row_ + b / kWordBits] ^= Word{1} << (b % kWordBits);
  return *this;
}

Relation RelationBuilder::build() && {
  const std::size_t size = carrier_->size();
  if (size % kWordBits) {
    const Word mask = (Word{1} << (size % kWordBits)) - 1;
    for (CellIndex a = 0; a < size; ++a) bits_[a * words_per_row_ + words_per_row_ - 1] &= mask;
  }
  return Relation(std::move(carrier_), std::move(bits_));
}

// ---------------------------------------------------------------- algebra

Relation identity(const CarrierPtr& carrier) { return diagonal(CellSet::full(carrier)); }

Relation diagonal(const CellSet& s) {
  RelationBuilder builder(s.carrier());
  for_each_bit(s.words(), [&](std::size_t x) { builder.set(x, x); });
  return std::move(builder).build();
}

Relation compose(const Relation& f, const Relation& g) {
  require_same_carrier(f.carrier(), g.carrier(), "compose");
  const auto& k = kernels::active();
  RelationBuilder out(f.carrier());
  const std::size_t wpr = f.words_per_row();
  for (CellIndex x = 0; x < f.size(); ++x) {
    Word* dst = out.row(x).data();
    for_each_bit(f.row(x), [&](std::size_t z) { k.or_into(dst, g.row(z).data(), wpr); });
  }
  return std::move(out).build();
}

Relation power(const Relation& f, std::size_t n) {
  Relation result = identity(f.carrier());
  Relation base = f;
  while (n) {
    if (n & 1U) result = compose(result, base);
    n >>= 1U;
    if (n) base = compose(base, base);
  }
  return result;
}

namespace {

template <typename Op>
Relation elementwise(const Relation& f, const Relation& g, Op op, const char* what) {
  require_same_carrier(f.carrier(), g.carrier(), what);
  RelationBuilder out(f);
  for (CellIndex a = 0; a < f.size(); ++a) op(out.row(a).data(), g.row(a).data(), f.words_per_row());
  return std::move(out).build();
}

}  // namespace

Relation relation_union(const Relation& f, const Relation& g) {
  return elementwise(f, g, kernels::active().or_into, "union");
}
Relation relation_intersection(const Relation& f, const Relation& g) {
  return elementwise(f, g, kernels::active().and_into, "intersection");
}
Relation relation_difference(const Relation& f, const Relation& g) {
  return elementwise(f, g, kernels::active().andnot_into, "difference");
}

Relation transpose(const Relation& f) {
  RelationBuilder out(f.carrier());
  for (CellIndex a = 0; a < f.size(); ++a) for_each_bit(f.row(a), [&](std::size_t b) { out.set(b, a); });
  return std::move(out).build();
}

bool is_subset(const Relation& f, const Relation& g) {
  require_same_carrier(f.carrier(), g.carrier(), "is_subset");
  return kernels::active().is_subset(f.words().data(), g.words().data(), f.words().size());
}

std::optional<std::pair<CellIndex, CellIndex>> first_excess(const Relation& f, const Relation& g) {
  require_same_carrier(f.carrier(), g.carrier(), "first_excess");
  for (CellIndex a = 0; a < f.size(); ++a) {
    auto fr = f.row(a);
    auto gr = g.row(a);
    for (std::size_t w = 0; w < fr.size(); ++w) {
      if (const Word extra = fr[w] & ~gr[w]) {
        return std::pair{a, w * kWordBits + static_cast<std::size_t>(__builtin_ctzll(extra))};
      }
    }
  }
  return std::nullopt;
}

CellSet image(const Relation& f, const CellSet& s) {
  require_same_carrier(f.carrier(), s.carrier(), "image");
  const auto& k = kernels::active();
  std::vector<Word> acc(f.words_per_row(), 0);
  for_each_bit(s.words(), [&](std::size_t x) { k.or_into(acc.data(), f.row(x).data(), acc.size()); });
  return CellSet::from_words(f.carrier(), std::move(acc));
}

CellSet fixed_points(const Relation& f) {
  std::vector<Word> words(f.words_per_row(), 0);
  for (CellIndex x = 0; x < f.size(); ++x)
    if (f.contains(x, x)) words[x / kWordBits] |= Word{1} << (x % kWordBits);
  return CellSet::from_words(f.carrier(), std::move(words));
}

}  // namespace conley
