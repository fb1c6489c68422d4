#pragma once

#include "setiso/coset.hpp"
#include "setiso/graph.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace setiso {

using ColoredString = std::vector<int>;

struct StringQuery {
  PermGroup group;
  std::optional<Perm> shift; // query over the coset group * shift
  ColoredString x;
  ColoredString y;
  std::vector<int> window;   // must be invariant under `group`
};

inline constexpr unsigned kEnumerationCutover = 120;

// {g in group*shift : x(a) = y(a^g) for all a in window}
IsoCoset string_iso(const StringQuery& q, Budget& budget);
IsoCoset string_iso(const StringQuery& q);
IsoCoset string_iso(const PermGroup& g, const ColoredString& x, const ColoredString& y,
                    const std::vector<int>& window, Budget& budget);
IsoCoset string_iso(const Coset& c, const ColoredString& x, const ColoredString& y,
                    const std::vector<int>& window, Budget& budget);

// Necessary condition for an answer to map block `from` onto block `to`.
using BlockFilter = std::function<bool(const std::vector<int>& from, const std::vector<int>& to)>;

// Union over the cosets kernel*d of the kernel of a primitive block action on the
// transitive set w; solve(kernel, d) returns the part of the answer inside kernel*d.
// Branches of the block image rejected by `compatible` are skipped.
IsoCoset split_over_blocks(const PermGroup& g, const std::vector<int>& w,
                           const std::function<IsoCoset(const PermGroup&, const Perm&)>& solve,
                           const BlockFilter& compatible = {});

// y^{g^-1}, i.e. a -> y(a^g)
ColoredString pull_string(const ColoredString& y, const Perm& g);

// {g in group : g maps g1 onto g2} via a string over vertices plus ordered vertex pairs.
IsoCoset graph_iso_under_group(const ColoredGraph& g1, const ColoredGraph& g2, const PermGroup& group,
                               Budget& budget);
IsoCoset graph_iso_under_group(const ColoredGraph& g1, const ColoredGraph& g2, const PermGroup& group);

// Image of a graph under a vertex permutation.
ColoredGraph permute_graph(const ColoredGraph& g, const Perm& p);

} // namespace setiso
