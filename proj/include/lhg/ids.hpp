#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace lhg {

template <class Tag>
struct Id {
  std::uint64_t value = 0;
  friend auto operator<=>(const Id&, const Id&) = default;
};

using VertexId = Id<struct VertexTag>;
using EdgeId = Id<struct EdgeTag>;

// Process-wide supply of atoms. Vertices and edges draw from the same counter
// so that a fresh id never clashes with any atom of a live graph.
std::uint64_t fresh_atom();
inline VertexId fresh_vertex() { return VertexId{fresh_atom()}; }
inline EdgeId fresh_edge() { return EdgeId{fresh_atom()}; }

// Guarantees that later fresh atoms are strictly greater than `value`.
void reserve_atoms_through(std::uint64_t value);

}  // namespace lhg

template <class Tag>
struct std::hash<lhg::Id<Tag>> {
  std::size_t operator()(const lhg::Id<Tag>& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};
