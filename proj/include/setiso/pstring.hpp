#pragma once

#include "setiso/perm.hpp"

#include <optional>
#include <vector>

namespace setiso {

// Partition of a support set inside {0..n-1}; class_of is -1 off the support.
// A family restricted to A keeps the original point labels and has support A.
struct PPartition {
  int n = 0;
  std::vector<int> class_of;
  std::vector<std::vector<int>> classes; // sorted points

  static PPartition from_class_of(std::vector<int> class_of);
  static PPartition trivial(int n);
  static PPartition singletons(int n);

  std::vector<int> support() const;
  bool operator==(const PPartition&) const = default;
  bool is_invariant(const PermGroup& g) const;
};

// letters[i] is the color of classes[cls][i].
struct PString {
  int cls = 0;
  std::vector<int> letters;
  auto operator<=>(const PString&) const = default;
};

class PStringFamily {
public:
  PStringFamily() = default;
  // Validates supports and duplicates. When pad is set, empty classes receive one
  // string in the sentinel color (given, or max used color + 1).
  PStringFamily(PPartition part, std::vector<PString> members, bool pad = true,
                std::optional<int> sentinel = std::nullopt);

  const PPartition& partition() const { return part_; }
  const std::vector<PString>& members() const { return members_; } // sorted
  std::size_t size() const { return members_.size(); }
  int multiplicity(int cls) const { return mult_[cls]; }
  const std::vector<int>& multiplicities() const { return mult_; }
  std::optional<int> sentinel() const { return sentinel_; }
  int max_color() const;

  bool completely_occupied() const;
  bool is_simple() const;
  bool is_balanced() const;

  // letter of member i at point a (a must lie in its class)
  int letter(std::size_t i, int a) const;

  // Image under g: (P^g, x^g) with x^g(a^g) = x(a).
  PStringFamily apply(const Perm& g) const;

  bool operator==(const PStringFamily& o) const { return part_ == o.part_ && members_ == o.members_; }

private:
  void rebuild();
  PPartition part_;
  std::vector<PString> members_;
  std::vector<int> mult_;
  std::vector<int> pos_in_class_; // index of each point within its class
  std::optional<int> sentinel_;
};

PStringFamily make_family(const PPartition& part, const std::vector<PString>& strings);

// Pads both families with one shared sentinel color.
std::pair<PStringFamily, PStringFamily> make_family_pair(const PPartition& part, const std::vector<PString>& xs,
                                                         const std::vector<PString>& ys);

// Induced family on P[A]; duplicates collapse.
PStringFamily restrict_family(const PStringFamily& f, const std::vector<int>& a);

struct VirtualSizeConfig {
  int d = 2;
  int funcnorm() const;
  int exponent() const { return funcnorm() + 1; }
};

int funcnorm(int d);
BigInt virtual_size(const PStringFamily& f, const VirtualSizeConfig& cfg = {});

struct Hypergraph {
  int n = 0;
  std::vector<std::vector<int>> edges; // each sorted; edge list sorted, no duplicates

  static Hypergraph make(int n, std::vector<std::vector<int>> edges);
  Hypergraph apply(const Perm& g) const;
  bool operator==(const Hypergraph&) const = default;
};

// Characteristic 0/1 strings under the trivial partition.
PStringFamily hypergraph_to_family(const Hypergraph& h);
// Inverse of the above: edge = points with letter 1.
Hypergraph characteristic_to_hypergraph(const PStringFamily& f);
// Strings over a trivial partition as edges {(a, x(a))} on vertex set Omega x Sigma;
// vertex (a, c) gets index a * |Sigma| + rank(c) with Sigma the sorted alphabet.
Hypergraph strings_to_hypergraph(const PStringFamily& f, const std::vector<int>& alphabet);
// Lift of a permutation of Omega to Omega x Sigma.
Perm lift_to_pairs(const Perm& g, int alphabet_size);

} // namespace setiso
