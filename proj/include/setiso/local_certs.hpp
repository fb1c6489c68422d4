#pragma once

#include "setiso/chain.hpp"
#include "setiso/coset.hpp"
#include "setiso/perm.hpp"
#include "setiso/pstring.hpp"

#include <optional>
#include <vector>

namespace setiso {

// Homomorphism from a group onto a group containing Alt(k).
struct GiantRep {
  GroupHom hom;
  int k = 0;
  Giant flavor = Giant::None;
  std::vector<std::vector<int>> blocks; // block i is point i of [k]; empty if hom was given directly

  Perm apply(const Perm& g) const { return hom.apply(g); }
};

inline constexpr int kGiantThreshold = 5;

// Action on a minimal block system when that action is a giant on at least 5 blocks.
// Throws std::invalid_argument if g is not transitive.
std::optional<GiantRep> find_giant_rep(const PermGroup& g);

// Wraps an arbitrary homomorphism; throws std::invalid_argument if its image is no giant.
GiantRep make_giant_rep(GroupHom hom);

// Points a with (stabiliser of a in delta)^phi not containing Alt(k).
std::vector<int> affected_points(const PermGroup& delta, const GiantRep& phi);

struct Certificate {
  enum class Kind { Full, NonFull, Empty };
  Kind kind = Kind::Empty;
  std::vector<int> t1, t2;    // sorted test sets
  PermGroup delta;            // Full: automorphisms on Omega
  PermGroup lambda;           // NonFull: group on positions of t1
  std::vector<int> bijection; // NonFull: position in t1 -> point of t2
  std::size_t iterations = 0;
  std::vector<int> window_sizes; // |W| after each round
  bool widened = false;          // the window was extended to the whole domain

  // Whether the bijection b (position in t1 -> point of t2) lies in the certified set.
  bool admits(const std::vector<int>& b) const;
};

struct LocalCertConfig {
  int d = 0;                   // 0 = certified degree of the chain
  std::uint64_t budget = 0;
};

// X and Y over partition p, which must lie on chain (built from p when absent).
Certificate local_certificate_pair(const PermGroup& g, const PPartition& p, const PStringFamily& x,
                                   const PStringFamily& y, const GiantRep& phi, const std::vector<int>& t1,
                                   const std::vector<int>& t2, const std::optional<PartitionChain>& chain = {},
                                   const LocalCertConfig& cfg = {});

struct LocalCertificates {
  Certificate x_side;  // (X, t1) against itself
  Certificate y_side;  // (Y, t2) against itself
  Certificate compare; // (X, t1) against (Y, t2)
};

LocalCertificates local_certificates(const PermGroup& g, const PPartition& p, const PStringFamily& x,
                                     const PStringFamily& y, const GiantRep& phi, const std::vector<int>& t1,
                                     const std::vector<int>& t2, const std::optional<PartitionChain>& chain = {},
                                     const LocalCertConfig& cfg = {});

// Chain {Omega} > ... > p (filled with singletons) > ... > singletons from minimal blocks.
PartitionChain chain_through_partition(const PermGroup& g, const PPartition& p);

} // namespace setiso
