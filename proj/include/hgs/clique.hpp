#pragma once

#include "hgs/bits.hpp"

#include <vector>

namespace hgs {

/// A maximum clique of the graph given by adjacency rows (at most 64
/// vertices), restricted to `candidates`. Branch and bound with a greedy
/// colouring bound; among maximum cliques the first one found is returned,
/// which is deterministic for a given input.
bits::Word max_clique(const std::vector<bits::Word>& adj, bits::Word candidates);

/// Scans candidates in increasing index order, keeping each vertex adjacent to
/// all kept ones. The result is maximal, not necessarily maximum.
bits::Word greedy_clique(const std::vector<bits::Word>& adj, bits::Word candidates);

} // namespace hgs
