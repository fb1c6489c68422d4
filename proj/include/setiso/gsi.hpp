#pragma once

#include "setiso/chain.hpp"
#include "setiso/coset.hpp"
#include "setiso/pstring.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace setiso {

// Group, invariant partial partition and two families over it.
struct GsiInstance {
  PermGroup group;
  PPartition partition;
  PStringFamily x;
  PStringFamily y;
  std::optional<PartitionChain> chain; // when present the partition must lie on it

  void validate() const; // throws std::invalid_argument
};

// Gamma[W] <= Aut(X[W]), checked on generators.
bool window_automorphic(const PermGroup& g, const PStringFamily& x, const std::vector<int>& w);

struct WindowState {
  std::vector<int> window;
  bool aut_on_window = false;   // Gamma[W] <= Aut(X[W])
  bool equal_on_window = false; // X[W] = Y[W]
  bool simple_on_window = false;

  static WindowState check(const PermGroup& g, const PStringFamily& x, const PStringFamily& y,
                           std::vector<int> window);
  // Recomputes every flag and reports whether they still match.
  bool recheck(const PermGroup& g, const PStringFamily& x, const PStringFamily& y) const;
};

struct GsiConfig {
  std::uint64_t budget = 0; // recursion nodes, 0 = unlimited
};

// Coset containing Iso over w in which X[A] is balanced for every orbit A of the group
// inside w. Empty when the occupancy strings show X and Y are not isomorphic.
IsoCoset balance_orbits(const Coset& c, const PStringFamily& x, const PStringFamily& y, const std::vector<int>& w,
                        Budget& budget);
IsoCoset balance_orbits(const GsiInstance& inst, Budget& budget);
IsoCoset balance_orbits(const GsiInstance& inst);

// {g in c : X[W1 u W2]^g = Y[W1 u W2]}, given that c's group acts as automorphisms of
// X[W1] and of X[W2]. Throws std::invalid_argument if that fails.
IsoCoset combine_windows(const Coset& c, const PStringFamily& x, const PStringFamily& y, const std::vector<int>& w1,
                         const std::vector<int>& w2, Budget& budget);
IsoCoset combine_windows(const Coset& c, const PStringFamily& x, const PStringFamily& y, const std::vector<int>& w1,
                         const std::vector<int>& w2);

// {g in c : X[W]^g = Y[W]} for a window invariant under c's group.
IsoCoset family_iso_on_window(const Coset& c, const PStringFamily& x, const PStringFamily& y,
                              const std::vector<int>& w, Budget& budget);

// Iso_Gamma(X, Y).
IsoCoset generalized_string_iso(const GsiInstance& inst, Budget& budget);
IsoCoset generalized_string_iso(const GsiInstance& inst, const GsiConfig& cfg = {});

// Convenience: families over a trivial partition built from hypergraph edge sets.
IsoCoset hypergraph_iso(const PermGroup& g, const Hypergraph& x, const Hypergraph& y, Budget& budget);

} // namespace setiso
