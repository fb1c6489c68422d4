#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace setiso {

using BigInt = boost::multiprecision::cpp_int;

// Points are 0..n-1. Composition a*b applies a first, then b.
class Perm {
public:
  Perm() = default;
  explicit Perm(std::vector<int> images);

  static Perm identity(int n);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator[](int a) const { return img_[a]; }
  const std::vector<int>& images() const { return img_; }

  Perm operator*(const Perm& other) const;
  Perm inverse() const;
  bool is_identity() const;
  int first_moved() const; // -1 for the identity

  std::string cycles() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

private:
  std::vector<int> img_;
};

// Permutation group with a stabilizer chain built by deterministic Schreier-Sims.
class PermGroup {
public:
  struct Level {
    int point = 0;
    std::vector<Perm> gens;     // strong generators fixing all earlier base points
    std::vector<int> orbit;     // breadth-first order
    std::vector<int> pos;       // index into orbit, -1 if absent
    std::vector<Perm> reps;     // reps[i] maps point to orbit[i]
    std::vector<Perm> inv_reps;
  };

  PermGroup() = default;
  PermGroup(int n, const std::vector<Perm>& gens, const std::vector<int>& base_prefix = {},
            const std::optional<BigInt>& known_order = std::nullopt);
  // Faster construction when the order is known in advance; throws if it is wrong.
  static PermGroup with_order(int n, const std::vector<Perm>& gens, const BigInt& order) {
    return PermGroup(n, gens, {}, order);
  }

  static PermGroup trivial(int n) { return PermGroup(n, {}); }
  static PermGroup symmetric(int n);

  int degree() const { return n_; }
  const std::vector<Perm>& generators() const { return gens_; }
  std::vector<int> base() const;
  std::vector<Perm> strong_generators() const;
  const std::vector<Level>& levels() const { return levels_; }
  const BigInt& order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }

  bool contains(const Perm& g) const;

  std::vector<int> orbit(int a) const;
  std::vector<std::vector<int>> orbits() const;
  bool is_transitive_on(const std::vector<int>& set) const;
  bool fixes_pointwise(const std::vector<int>& set) const;
  bool is_invariant(const std::vector<int>& set) const;

  // Calls f on every element; f returns false to stop early.
  void for_each_element(const std::function<bool(const Perm&)>& f) const;
  std::vector<Perm> elements() const;

  // The subgroup fixing the first k base points (requires k <= base length).
  PermGroup chain_tail(std::size_t k) const;

private:
  void add_strong(const Perm& r, std::size_t from, std::size_t j);
  void process(std::size_t i);
  void compute_orbit(Level& lv) const;
  std::pair<Perm, std::size_t> sift(Perm h, std::size_t start) const;
  void finish();

  int n_ = 0;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;
  BigInt order_ = 1;
};

struct BlockSystem {
  std::vector<int> orbit;
  std::vector<std::vector<int>> blocks; // sorted, listed by minimum element
  bool primitive = false;               // blocks are singletons
};

struct OrbitsAndBlocks {
  std::vector<std::vector<int>> orbits;
  std::vector<BlockSystem> block_systems; // one per orbit of length > 1
};

PermGroup build_group(const std::vector<Perm>& gens, int n);

// Blocks are maximal proper blocks, so the action on them is primitive.
std::vector<std::vector<int>> minimal_block_system(const PermGroup& g, const std::vector<int>& orbit);
OrbitsAndBlocks orbits_and_blocks(const PermGroup& g);

enum class StabMode { Pointwise, Setwise };
PermGroup pointwise_stabilizer(const PermGroup& g, const std::vector<int>& set);
PermGroup setwise_stabilizer(const PermGroup& g, const std::vector<int>& set);
PermGroup stabilizer(const PermGroup& g, const std::vector<int>& set, StabMode mode);

class GroupHom {
public:
  GroupHom() = default;
  GroupHom(PermGroup source, int target_degree, std::vector<Perm> images);
  // Action homomorphism: the map is given directly on every element.
  GroupHom(PermGroup source, int target_degree, std::function<Perm(const Perm&)> action);

  const PermGroup& source() const { return source_; }
  int target_degree() const { return k_; }
  const std::vector<Perm>& images() const { return images_; }
  bool is_action() const { return static_cast<bool>(action_); }
  Perm apply(const Perm& g) const;

private:
  PermGroup source_;
  int k_ = 0;
  std::vector<Perm> images_;
  std::function<Perm(const Perm&)> action_;
  mutable std::optional<PermGroup> lift_; // product group with source points first in the base
};

struct HomTools {
  PermGroup image;
  PermGroup kernel;
  std::function<std::optional<Perm>(const Perm&)> preimage;
};

HomTools hom_tools(const GroupHom& h);

enum class Giant { Sym, Alt, None };
Giant is_giant(const PermGroup& g, const std::vector<int>& set);
const char* giant_name(Giant g);

struct Restriction {
  PermGroup group;
  GroupHom hom;
  std::vector<int> points; // new index -> original point
};
Restriction restrict_action(const PermGroup& g, const std::vector<int>& set);

// Action of g on a partition of its points into blocks (block i = blocks[i]).
GroupHom block_action(const PermGroup& g, const std::vector<std::vector<int>>& blocks);

BigInt factorial(int n);

} // namespace setiso
