#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lhg/hypergraph.hpp"
#include "lhg/signature.hpp"
#include "lhg/term.hpp"

namespace lhg {

using EdgeOrder = std::vector<EdgeId>;

// Reorders vertices so that inputs come first among targets, outputs last
// among sources, and each edge's ports form a block in edge order. The edge
// sequence becomes `ord`. Throws Error if ord is not a permutation of the
// edges.
LinearHypergraph untangle(const LinearHypergraph& h, const EdgeOrder& ord);

// Tensor of the edges' generators in order; identity edges become
// identities on their wire.
Term stack(const LinearHypergraph& h, const EdgeOrder& ord);

// Permutation term of an untangled graph, mapping the i-th target to the
// position of its connected source. Contains only identities and swaps.
Term shuffle(const LinearHypergraph& untangled);

// tr X (swap X A ; shuffle ; stack * id B), whose interpretation is
// isomorphic to h.
Term extract_term(const LinearHypergraph& h, const EdgeOrder& ord);
// Uses the edge order of the canonical renumbering.
Term extract_term(const LinearHypergraph& h);

// The signature read off the edges of h. Throws Error when two edges with
// the same label disagree on their ports.
Signature infer_signature(const LinearHypergraph& h);

// Extracts under several edge orders (all of them when |E|! <= max_orders,
// otherwise max_orders sampled ones) and checks that all interpretations
// are isomorphic.
bool check_coherence(const LinearHypergraph& h, std::size_t max_orders, std::uint64_t seed = 0);

}  // namespace lhg
