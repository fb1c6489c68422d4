#include "setiso/chain.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace setiso {

PPartition canonical_partition(const std::vector<int>& labels) {
  std::map<int, int> id;
  std::vector<int> cls(labels.size());
  for (std::size_t a = 0; a < labels.size(); ++a) {
    auto it = id.find(labels[a]);
    if (it == id.end())
      it = id.emplace(labels[a], static_cast<int>(id.size())).first;
    cls[a] = it->second;
  }
  return PPartition::from_class_of(std::move(cls));
}

PPartition partition_from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> lab(n, -1);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (int a : blocks[i]) {
      if (a < 0 || a >= n || lab[a] >= 0)
        throw std::invalid_argument("blocks do not form a partition");
      lab[a] = static_cast<int>(i);
    }
  if (std::find(lab.begin(), lab.end(), -1) != lab.end())
    throw std::invalid_argument("blocks do not cover the domain");
  return canonical_partition(lab);
}

bool refines(const PPartition& fine, const PPartition& coarse) {
  if (fine.n != coarse.n)
    return false;
  for (const auto& cl : fine.classes) {
    int c = coarse.class_of[cl[0]];
    if (c < 0)
      return false;
    for (int a : cl)
      if (coarse.class_of[a] != c)
        return false;
  }
  return true;
}

void PartitionChain::validate() const {
  if (levels.empty())
    throw std::invalid_argument("empty chain");
  const int m = n();
  if (!certs.empty() && certs.size() != levels.size())
    throw std::invalid_argument("certificate list length differs from level count");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& p = levels[i];
    if (p.n != m)
      throw std::invalid_argument("chain levels over different domains");
    if (std::find(p.class_of.begin(), p.class_of.end(), -1) != p.class_of.end())
      throw std::invalid_argument("chain level is not a full partition");
    if (!(p == canonical_partition(p.class_of)))
      throw std::invalid_argument("chain level class ids are not canonical");
    if (i > 0 && (!refines(p, levels[i - 1]) || p.classes.size() == levels[i - 1].classes.size()))
      throw std::invalid_argument("chain level does not strictly refine its predecessor");
  }
  if (m > 0 && levels.front().classes.size() != 1)
    throw std::invalid_argument("chain does not start at the whole domain");
  if (static_cast<int>(levels.back().classes.size()) != m)
    throw std::invalid_argument("chain does not end at singletons");
}

bool PartitionChain::is_invariant(const PermGroup& g) const {
  return std::all_of(levels.begin(), levels.end(), [&](const PPartition& p) { return p.is_invariant(g); });
}

std::optional<std::size_t> PartitionChain::level_of(const PPartition& p) const {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& lv = levels[i];
    if (lv.n != p.n)
      return std::nullopt;
    bool ok = true;
    for (const auto& cl : p.classes) {
      const auto& blk = lv.classes[lv.class_of[cl[0]]];
      if (blk != cl) {
        ok = false;
        break;
      }
    }
    if (!ok)
      continue;
    // blocks meeting the support are classes (already implied by equality above)
    return i;
  }
  return std::nullopt;
}

} // namespace setiso
