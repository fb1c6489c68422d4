#include "setiso/hfs.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace setiso {

std::strong_ordering operator<=>(const HfsTerm& a, const HfsTerm& b) {
  if (a.kind != b.kind)
    return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
  if (a.kind == HfsTerm::Kind::Atom)
    return a.atom <=> b.atom;
  return std::lexicographical_compare_three_way(a.children.begin(), a.children.end(), b.children.begin(),
                                                b.children.end());
}

HfsTerm HfsTerm::make_atom(int a) {
  if (a < 0)
    throw std::invalid_argument("negative atom");
  HfsTerm t;
  t.kind = Kind::Atom;
  t.atom = a;
  return t;
}

HfsTerm HfsTerm::make_set(std::vector<HfsTerm> children) {
  std::sort(children.begin(), children.end());
  if (std::adjacent_find(children.begin(), children.end()) != children.end())
    throw std::invalid_argument("set with repeated element");
  HfsTerm t;
  t.kind = Kind::Set;
  t.children = std::move(children);
  return t;
}

HfsTerm HfsTerm::make_tuple(std::vector<HfsTerm> children) {
  HfsTerm t;
  t.kind = Kind::Tuple;
  t.children = std::move(children);
  return t;
}

int HfsTerm::max_atom() const {
  if (kind == Kind::Atom)
    return atom;
  int m = -1;
  for (const auto& c : children)
    m = std::max(m, c.max_atom());
  return m;
}

HfsTerm HfsTerm::apply(const Perm& g) const {
  if (kind == Kind::Atom)
    return make_atom(g[atom]);
  std::vector<HfsTerm> cs;
  for (const auto& c : children)
    cs.push_back(c.apply(g));
  return kind == Kind::Set ? make_set(std::move(cs)) : make_tuple(std::move(cs));
}

std::string HfsTerm::str() const {
  if (kind == Kind::Atom)
    return std::to_string(atom);
  std::ostringstream os;
  os << (kind == Kind::Set ? '{' : '(');
  for (const auto& c : children)
    os << ' ' << c.str();
  os << ' ' << (kind == Kind::Set ? '}' : ')');
  return os.str();
}

} // namespace setiso
