#pragma once

#include <cstdint>
#include <vector>

#include "kanon/graph.hpp"

namespace kanon {

/// Canonical form of a small graph: equal for two graphs iff they are
/// isomorphic. Layout: node count followed by the upper triangle of the
/// adjacency matrix under the canonical order, packed 64 bits per word.
struct CanonicalLabel {
  std::vector<std::uint64_t> words;

  friend bool operator==(const CanonicalLabel&, const CanonicalLabel&) = default;
  friend auto operator<=>(const CanonicalLabel&, const CanonicalLabel&) = default;
};

struct CanonicalOptions {
  /// Graphs larger than this are rejected with an Error. 0 disables the cap.
  std::size_t max_nodes = 4096;
};

struct CanonicalResult {
  CanonicalLabel label;
  /// canonical_order[i] is the local node placed at position i.
  std::vector<std::uint32_t> canonical_order;
  std::size_t leaves_visited = 0;
  std::size_t automorphisms_found = 0;
};

/// Individualization-refinement search with automorphism pruning.
/// `adjacency` holds sorted local neighbor lists.
CanonicalResult canonical_labeling(const std::vector<std::vector<std::uint32_t>>& adjacency,
                                   const CanonicalOptions& opts = {});

CanonicalLabel canonical_form(const Subgraph& h, const CanonicalOptions& opts = {});
CanonicalLabel canonical_form(const Graph& g, const CanonicalOptions& opts = {});

}  // namespace kanon
