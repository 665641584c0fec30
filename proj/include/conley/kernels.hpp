#pragma once

// Word-parallel bitset kernels used by the relation algebra.
//
// Every routine operates on `n` 64-bit words. A scalar reference
// implementation is always available; vectorised variants (AVX2 on x86-64,
// NEON on AArch64) are compiled in separate translation units and chosen at
// runtime from the host's capabilities. All variants are required to be
// bit-for-bit equivalent to the scalar reference.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace conley::kernels {

using Word = std::uint64_t;

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  // dst |= src
  void (*or_into)(Word* dst, const Word* src, std::size_t n);
  // dst &= src
  void (*and_into)(Word* dst, const Word* src, std::size_t n);
  // dst &= ~src
  void (*andnot_into)(Word* dst, const Word* src, std::size_t n);
  std::size_t (*popcount)(const Word* a, std::size_t n);
  // (a & b) != 0
  bool (*intersects)(const Word* a, const Word* b, std::size_t n);
  // (a & ~b) == 0
  bool (*is_subset)(const Word* a, const Word* b, std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_table();
const KernelTable* neon_table();

// All tables usable on this host, scalar first.
std::vector<const KernelTable*> available_tables();

// The table in effect. Chosen once from CPU features; the environment
// variable CONLEY_SIMD=scalar|avx2|neon forces a variant when available.
const KernelTable& active();

// Overrides the active table (tests and benchmarks). Not thread-safe with
// respect to concurrent relation operations.
void set_active(const KernelTable& table);

}  // namespace conley::kernels
