#pragma once

#include "setiso/coset.hpp"
#include "setiso/graph.hpp"

#include <stdexcept>
#include <vector>

namespace setiso {

// Dense color ids 0..count-1.
struct Coloring {
  std::vector<int> color;
  int count = 0;

  std::vector<std::vector<int>> classes() const; // indexed by color, vertices sorted
  bool discrete() const { return count == static_cast<int>(color.size()); }
  std::vector<int> class_sizes() const;          // sorted ascending
};

// Ranks of arbitrary labels, so equal labels share an id and the order is kept.
Coloring rank_labels(const std::vector<long long>& labels);

// One refinement round: new id = rank of (old id, sorted neighbour triples).
Coloring refine_round(const ColoredGraph& g, const Coloring& c);

// Stable refinement of the given coloring.
Coloring refine(const ColoredGraph& g, const Coloring& c);
Coloring color_refinement(const ColoredGraph& g); // starts from the vertex colors

bool is_equitable(const ColoredGraph& g, const Coloring& c);

struct TcrTrace {
  Coloring final;
  bool discrete = false;
  std::vector<std::vector<int>> trace; // class sizes after every step
};

// Individualise s, then alternate refinement and splitting of classes of size <= t.
TcrTrace tcr_sequence(const ColoredGraph& g, const std::vector<int>& s, int t);

class NotCrBounded : public std::runtime_error {
public:
  NotCrBounded() : std::runtime_error("coloring sequence stalls before becoming discrete") {}
};

// Isomorphisms g1 -> g2 whose restriction to s1 lies in gamma * theta, where gamma acts
// on positions of s1 and theta maps s1[i] to s2[i].
IsoCoset iso_tcr_pairs(const ColoredGraph& g1, const std::vector<int>& s1, const ColoredGraph& g2,
                       const std::vector<int>& s2, const PermGroup& gamma, int t, Budget& budget);
IsoCoset iso_tcr_pairs(const ColoredGraph& g1, const std::vector<int>& s1, const ColoredGraph& g2,
                       const std::vector<int>& s2, const PermGroup& gamma, int t);

} // namespace setiso
