#pragma once

#include "setiso/chain.hpp"
#include "setiso/normal_forms.hpp"
#include "setiso/pstring.hpp"

#include <cstddef>
#include <vector>

namespace setiso {

// One class of the equivalence on input families after the window has been made simple.
struct SimplifiedClass {
  std::vector<std::size_t> members;    // indices into the input families
  int n = 0;                           // |Omega*|
  PermGroup group;                     // Gamma* on Omega*
  PPartition partition;                // P*
  std::vector<int> window;             // W*
  PartitionChain chain;
  std::vector<PStringFamily> families; // X_i*, parallel to members
  std::vector<Perm> lambda;            // lambda_i in Gamma, parallel to members
  std::vector<int> to_original;        // Omega* -> Omega
  std::vector<int> lift;               // Omega -> Omega*, one preimage per point
  int certified_d = 2;

  // Gamma* -> Gamma
  Perm phi(const Perm& g_star) const;
  // lambda_i^-1 * phi(c) * lambda_j for members at positions i and j
  IsoCoset pull_back(const IsoCoset& c, std::size_t i, std::size_t j) const;
};

struct SimplifyResult {
  bool identity = false; // the window was already simple and nothing changed
  std::vector<SimplifiedClass> classes;
};

// All families must share the partition, agree on the window and have it as automorphic
// window; the partition must lie on the chain, which must be almost d-ary for g.
SimplifyResult simplify_on_window(const PermGroup& g, const PPartition& p, const std::vector<PStringFamily>& families,
                                  const std::vector<int>& window, const PartitionChain& chain, int d);

} // namespace setiso
