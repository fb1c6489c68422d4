#include "setiso/coset.hpp"

namespace setiso {

std::vector<Perm> Coset::elements() const {
  std::vector<Perm> out;
  group.for_each_element([&](const Perm& h) {
    out.push_back(h * rep);
    return true;
  });
  return out;
}

void CosetBuilder::extend(const Perm& g) {
  if (g.is_identity() || group_.contains(g))
    return;
  gens_.push_back(g);
  group_ = PermGroup(n_, gens_);
}

void CosetBuilder::add_group(const PermGroup& g) {
  for (const auto& s : g.generators())
    extend(s);
}

void CosetBuilder::add_element(const Perm& g) {
  if (!rep_) {
    rep_ = g;
    return;
  }
  extend(g * rep_->inverse());
}

void CosetBuilder::add_coset(const Coset& c) {
  add_group(c.group);
  add_element(c.rep);
}

IsoCoset CosetBuilder::result() const {
  if (!rep_)
    return std::nullopt;
  return Coset{group_, *rep_};
}

IsoCoset pullback(const HomTools& tools, const IsoCoset& c) {
  if (!c)
    return std::nullopt;
  auto rep = tools.preimage(c->rep);
  if (!rep)
    return std::nullopt;
  std::vector<Perm> gens = tools.kernel.generators();
  for (const auto& a : c->group.generators()) {
    auto p = tools.preimage(a);
    if (!p)
      throw std::logic_error("pullback: group not inside the image");
    gens.push_back(*p);
  }
  return Coset{PermGroup::with_order(tools.kernel.degree(), gens, tools.kernel.order() * c->group.order()), *rep};
}

} // namespace setiso
