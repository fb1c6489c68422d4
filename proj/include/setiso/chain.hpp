#pragma once

#include "setiso/pstring.hpp"

#include <optional>
#include <vector>

namespace setiso {

enum class LevelCert { None, FanOut, SemiRegular };

// Full partitions of {0..n-1} from {Omega} down to singletons, each strictly finer.
// Class ids are canonical: ordered by minimum element.
struct PartitionChain {
  std::vector<PPartition> levels;
  std::vector<LevelCert> certs; // optional; empty or one entry per level

  int n() const { return levels.empty() ? 0 : levels.front().n; }
  std::size_t size() const { return levels.size(); }

  void validate() const; // throws std::invalid_argument
  bool is_invariant(const PermGroup& g) const;

  // Index of the level that p lies on: each class of p is a block of that level and
  // the level's blocks meeting the support of p are exactly the classes of p.
  std::optional<std::size_t> level_of(const PPartition& p) const;
};

// Canonical full partition from arbitrary labels (labels may be any ints).
PPartition canonical_partition(const std::vector<int>& labels);

// Full partition from a list of disjoint blocks covering 0..n-1.
PPartition partition_from_blocks(int n, const std::vector<std::vector<int>>& blocks);

// True if every class of fine lies inside a class of coarse.
bool refines(const PPartition& fine, const PPartition& coarse);

} // namespace setiso
