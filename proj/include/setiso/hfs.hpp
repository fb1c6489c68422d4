#pragma once

#include "setiso/perm.hpp"

#include <compare>
#include <string>
#include <vector>

namespace setiso {

// Hereditarily finite set over atoms 0..n-1. Set children are kept sorted.
struct HfsTerm {
  enum class Kind { Atom = 0, Set = 1, Tuple = 2 };

  Kind kind = Kind::Atom;
  int atom = 0;
  std::vector<HfsTerm> children;

  static HfsTerm make_atom(int a);
  static HfsTerm make_set(std::vector<HfsTerm> children);   // throws on duplicates
  static HfsTerm make_tuple(std::vector<HfsTerm> children);

  int max_atom() const;
  HfsTerm apply(const Perm& g) const;
  std::string str() const;

  friend bool operator==(const HfsTerm&, const HfsTerm&) = default;
  friend std::strong_ordering operator<=>(const HfsTerm& a, const HfsTerm& b);
};

} // namespace setiso
