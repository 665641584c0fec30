#include <atomic>
#include <cstdlib>
#include <string>

#include "conley/kernels.hpp"

namespace conley::kernels {
namespace {

const KernelTable& best_available() {
  if (const char* forced = std::getenv("CONLEY_SIMD")) {
    const std::string name{forced};
    for (const KernelTable* table : available_tables())
      if (isa_name(table->isa) == name) return *table;
  }
  if (const KernelTable* t = avx2_table()) return *t;
  if (const KernelTable* t = neon_table()) return *t;
  return scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{&best_available()};
  return current;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> tables{&scalar_table()};
  if (const KernelTable* t = avx2_table()) tables.push_back(t);
  if (const KernelTable* t = neon_table()) tables.push_back(t);
  return tables;
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void set_active(const KernelTable& table) { slot().store(&table, std::memory_order_release); }

}  // namespace conley::kernels
