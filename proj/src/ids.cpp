#include "lhg/ids.hpp"

#include <atomic>

namespace lhg {

namespace {
std::atomic<std::uint64_t> next_atom{std::uint64_t{1} << 32};
}

std::uint64_t fresh_atom() { return next_atom.fetch_add(1, std::memory_order_relaxed); }

void reserve_atoms_through(std::uint64_t value) {
  std::uint64_t current = next_atom.load(std::memory_order_relaxed);
  while (current <= value &&
         !next_atom.compare_exchange_weak(current, value + 1, std::memory_order_relaxed)) {
  }
}

}  // namespace lhg
