#pragma once

#include "setiso/color_refine.hpp"
#include "setiso/hfs.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace setiso {

// Atoms are vertices 0..n-1 (color 0). Set nodes get color 1, tuple nodes color 2.
// Equal subterms share one vertex. The arc from a parent to a child is colored
// 1 + mask, where mask has bit i-1 set when the child sits at tuple position i
// (0 for set children); the reverse arc is colored 0.
struct HfsGraph {
  ColoredGraph graph;
  int universe = 0;
  int root = 0;
};

inline constexpr int kMaxTupleLength = 62;

HfsGraph hfs_to_graph(const HfsTerm& term, int universe);

// {g in gamma : x^g = y}
IsoCoset iso_hfs(const HfsTerm& x, const HfsTerm& y, const PermGroup& gamma, Budget& budget);
IsoCoset iso_hfs(const HfsTerm& x, const HfsTerm& y, const PermGroup& gamma);

int genus_to_h(int g);
int complete_bipartite_genus(int m, int n); // ceil((m-2)(n-2)/4) for m, n >= 2

bool is_3_connected(const ColoredGraph& g);

struct ExcludedMinorResult {
  IsoCoset coset;
  std::vector<int> triple;         // fixed triple of the first graph
  std::size_t candidates = 0;      // triples of the second graph with a matching trace
  bool fallback = false;           // answered by enumeration after a stall
  std::vector<std::string> diagnostics;
};

struct ExcludedMinorConfig {
  std::uint64_t budget = 0; // per candidate triple, 0 = unlimited
  int fallback_limit = 10;  // largest n answered by enumeration on a stall
};

// Isomorphisms between 3-connected graphs promised to exclude K_{3,h} as a minor.
ExcludedMinorResult iso_excluded_minor(const ColoredGraph& g1, const ColoredGraph& g2, int h,
                                       const ExcludedMinorConfig& cfg = {});

struct SmallClassReport {
  std::vector<std::string> violated; // failed hypotheses
  bool vacuous = false;               // v2 empty
  std::optional<std::vector<int>> small_class;
  bool promise_violated = false;      // hypotheses hold but no small class exists

  bool ok() const { return violated.empty() && (vacuous || small_class.has_value()); }
};

// Looks for a color class of size <= h-1 inside v2, given singleton classes on v1, a
// stable coloring, |v1| >= 3 and N(v2) = v1.
SmallClassReport small_class_diagnostic(const ColoredGraph& g, const Coloring& c, const std::vector<int>& v1,
                                        const std::vector<int>& v2, int h);

} // namespace setiso
