#pragma once

#include "setiso/perm.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace setiso {

// The set {h * rep : h in group}.
struct Coset {
  PermGroup group;
  Perm rep;

  bool contains(const Perm& g) const { return group.contains(g * rep.inverse()); }
  std::vector<Perm> elements() const;
};

// Empty, or a coset of an automorphism group.
using IsoCoset = std::optional<Coset>;

class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded() : std::runtime_error("recursion budget exceeded") {}
};

// Counts recursion nodes; limit 0 means unlimited.
class Budget {
public:
  explicit Budget(std::uint64_t limit = 0) : limit_(limit) {}
  void charge(std::uint64_t k = 1) {
    used_ += k;
    if (limit_ != 0 && used_ > limit_)
      throw BudgetExceeded();
  }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

// Collects elements of a union of cosets of subgroups of one automorphism group.
class CosetBuilder {
public:
  explicit CosetBuilder(int n) : n_(n), group_(PermGroup::trivial(n)) {}

  void add_group(const PermGroup& g);
  void add_element(const Perm& g);
  void add_coset(const Coset& c);

  bool empty() const { return !rep_.has_value(); }
  const PermGroup& group() const { return group_; }
  const std::optional<Perm>& rep() const { return rep_; }
  IsoCoset result() const;

private:
  void extend(const Perm& g);
  int n_;
  PermGroup group_;
  std::vector<Perm> gens_;
  std::optional<Perm> rep_;
};

// Coset in the source group mapping onto `c` (a coset inside the image of `tools`).
IsoCoset pullback(const HomTools& tools, const IsoCoset& c);

} // namespace setiso
