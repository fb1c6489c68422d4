#pragma once

#include "setiso/chain.hpp"
#include "setiso/coset.hpp"
#include "setiso/gsi.hpp"
#include "setiso/pstring.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace setiso {

// Rooted acyclic digraph whose sinks are the points of Omega, with a vertex action for
// every group generator.
struct StructureGraph {
  int n = 0; // |Omega|
  int root = 0;
  std::vector<std::vector<int>> children; // sorted out-neighbours
  std::vector<int> leaf;                  // vertex -> point, -1 for inner vertices
  std::vector<Perm> group_gens;           // generators on Omega
  std::vector<Perm> action;               // per generator, a permutation of the vertices

  int vertex_count() const { return static_cast<int>(children.size()); }
  std::vector<int> depths() const; // distance from the root, -1 if unreachable
  void validate() const;           // throws std::invalid_argument
  BigInt branch_count() const;     // |Br|
  BigInt maximal_branch_count() const;
  std::vector<int> leaf_vertex() const; // point -> vertex
  PermGroup group() const { return PermGroup(n, group_gens); }

  // "id depth leaf" lines (leaf is the point or -), "u v" arc lines, then one
  // "gen i" header per generator followed by its vertex images.
  std::string dump() const;
};

class BranchCapExceeded : public std::runtime_error {
public:
  BranchCapExceeded() : std::runtime_error("branch count exceeds the cap") {}
};

inline constexpr std::size_t kBranchCap = 1000000;

struct Unfolding {
  int n = 0;                              // |Omega| of the source graph
  std::vector<int> parent;                // tree node -> parent, -1 at the root
  std::vector<int> vertex;                // tree node -> last vertex of its branch
  std::vector<std::vector<int>> children; // ordered by vertex id
  std::vector<int> depth;
  std::vector<int> leaves;                // Omega*: maximal branches in lexicographic order
  std::vector<int> leaf_index;            // tree node -> position in leaves or -1
  std::vector<int> f;                     // Omega* -> Omega
  std::vector<Perm> gens;                 // generators on Omega
  std::vector<Perm> images;               // psi(gens) on Omega*
  std::vector<Perm> node_images;          // psi(gens) on tree nodes

  int size() const { return static_cast<int>(leaves.size()); }
  std::vector<int> branch(int node) const; // vertex sequence from the root
  PermGroup group() const;                 // image of psi
  Perm psi(const Perm& g) const;           // any element of <gens>
  PartitionChain chain() const;            // one level per depth
  StructureGraph as_structure_graph() const;

private:
  mutable std::optional<GroupHom> hom_;
};

Unfolding unfold_and_act(const StructureGraph& g, std::size_t cap = kBranchCap);

// Nodes (level, block) of the chain; leaves are the singletons of the last level.
StructureGraph structure_tree_from_chain(const PermGroup& g, const PartitionChain& chain);

struct CombinedGraph {
  StructureGraph graph;
  std::vector<int> block_nodes; // node whose leaves are exactly block j
};

// Structure graph for g from one for its block action (leaves = block indices) and one
// for the setwise stabiliser of blocks[rep_block] acting on that block (leaves = positions).
CombinedGraph combine_along_blocks(const PermGroup& g, const std::vector<std::vector<int>>& blocks,
                                   const StructureGraph& top, const StructureGraph& inner, int rep_block);

// Invariant partitions strictly between coarse and fine, built from orbit splits and
// minimal block systems. The result starts with coarse and ends with fine.
std::vector<PPartition> invariant_refinement(const PermGroup& g, const PPartition& coarse, const PPartition& fine);

struct LevelReport {
  std::size_t level = 0; // children are blocks of this level
  std::vector<int> block; // representative parent block
  int fan_out = 0;
  bool semi_regular = false;
  bool ok = false;
};

struct AlmostDAryReport {
  bool ok = true;
  std::vector<LevelReport> levels; // one entry per (level, orbit of parent blocks)
};

AlmostDAryReport level_reports(const PartitionChain& chain, const PermGroup& g, int d);
bool is_almost_d_ary(const PartitionChain& chain, const PermGroup& g, int d);

// Smallest d' >= 2 for which the chain is almost d'-ary.
int certified_degree(const PartitionChain& chain, const PermGroup& g);

struct BuiltStructure {
  StructureGraph graph;
  PartitionChain chain;
  int certified_d = 2;
};

BuiltStructure build_structure_graph(const PermGroup& g, int d);

// Result of moving an instance to the leaves of an unfolded structure tree.
struct NormalForm {
  PermGroup group;                     // on Omega*
  PPartition partition;                // P*
  std::vector<PStringFamily> families; // translated families
  PartitionChain chain;
  std::size_t partition_level = 0;     // P* lies on this level
  std::vector<int> f;                  // Omega* -> Omega
  std::vector<int> f_class;            // class of P* -> class of P
  std::vector<Perm> source_gens;       // generators of the original group
  int certified_d = 2;

  Perm phi(const Perm& g) const;             // original group -> Omega*
  Perm pull_back(const Perm& g_star) const;  // Omega* -> original group
  IsoCoset pull_back(const IsoCoset& c) const;
  std::vector<int> preimage(const std::vector<int>& w) const; // f^-1(W), sorted
};

struct NormalizedInstance {
  GsiInstance instance;
  NormalForm form;
};

NormalizedInstance normalize_instance(const GsiInstance& inst, int d);

// Replaces the refinement chain.levels[j-1] > chain.levels[j] by invariant_refinement and
// translates the families. Every other level must pass the almost d-ary test.
NormalForm renormalize(const PermGroup& g, const PPartition& p, const std::vector<PStringFamily>& families,
                       const PartitionChain& chain, std::size_t j, int d);

// Checks the listed properties of a renormalization; returns the violated ones.
std::vector<std::string> check_renormalize_properties(const PermGroup& g, const PPartition& p,
                                                      const std::vector<PStringFamily>& families,
                                                      const PartitionChain& chain, std::size_t j, int d,
                                                      const NormalForm& out,
                                                      const std::vector<int>& window = {});

} // namespace setiso
