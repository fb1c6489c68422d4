#pragma once

#include "setiso/perm.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace setiso::testing {

// All elements of <gens> by closure; independent of the stabilizer chain.
inline std::set<Perm> closure(const std::vector<Perm>& gens, int n) {
  std::set<Perm> seen{Perm::identity(n)};
  std::vector<Perm> frontier{Perm::identity(n)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& p : frontier)
      for (const auto& g : gens) {
        Perm q = p * g;
        if (seen.insert(q).second)
          next.push_back(q);
      }
    frontier = std::move(next);
  }
  return seen;
}

inline Perm random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = i;
  std::shuffle(v.begin(), v.end(), rng);
  return Perm(v);
}

inline Perm P(std::vector<int> v) { return Perm(std::move(v)); }

} // namespace setiso::testing

#include "setiso/coset.hpp"
#include "setiso/graph.hpp"

namespace setiso::testing {

inline std::set<Perm> as_set(const IsoCoset& c) {
  std::set<Perm> s;
  if (c)
    for (const auto& e : c->elements())
      s.insert(e);
  return s;
}

inline std::set<Perm> as_set(const std::vector<Perm>& v) { return std::set<Perm>(v.begin(), v.end()); }

inline std::vector<int> random_string(int n, int colors, std::mt19937_64& rng) {
  std::vector<int> s(n);
  for (auto& c : s)
    c = static_cast<int>(rng() % colors);
  return s;
}

// Union of a random selection of orbits.
inline std::vector<int> random_invariant_set(const PermGroup& g, std::mt19937_64& rng) {
  std::vector<int> w;
  for (const auto& o : g.orbits())
    if (rng() % 3 != 0)
      w.insert(w.end(), o.begin(), o.end());
  std::sort(w.begin(), w.end());
  return w;
}

inline ColoredGraph random_graph(int n, std::mt19937_64& rng, int vcolors = 2, int acolors = 1, int density = 50) {
  ColoredGraph g(n);
  for (int v = 0; v < n; ++v)
    g.set_vertex_color(v, static_cast<Color>(rng() % vcolors));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (static_cast<int>(rng() % 100) < density)
        g.add_edge(u, v, static_cast<Color>(rng() % acolors), static_cast<Color>(rng() % acolors));
  return g;
}

} // namespace setiso::testing

#include "setiso/pstring.hpp"

namespace setiso::testing {

inline PPartition random_partition(int n, std::mt19937_64& rng, int max_classes = 3) {
  int c = 1 + static_cast<int>(rng() % std::max(1, std::min(n, max_classes)));
  std::vector<int> cls(n);
  for (int a = 0; a < n; ++a)
    cls[a] = a < c ? a : static_cast<int>(rng() % c);
  std::shuffle(cls.begin(), cls.end(), rng);
  // renumber by first occurrence
  std::vector<int> remap(c, -1);
  int next = 0;
  for (auto& v : cls) {
    if (remap[v] < 0)
      remap[v] = next++;
    v = remap[v];
  }
  return PPartition::from_class_of(cls);
}

inline std::vector<PString> random_members(const PPartition& p, int max_members, int colors, std::mt19937_64& rng) {
  std::set<PString> out;
  int k = static_cast<int>(rng() % (max_members + 1));
  for (int i = 0; i < k; ++i) {
    int c = static_cast<int>(rng() % p.classes.size());
    PString s{c, std::vector<int>(p.classes[c].size())};
    for (auto& l : s.letters)
      l = static_cast<int>(rng() % colors);
    out.insert(s);
  }
  return {out.begin(), out.end()};
}

inline std::vector<PString> balanced_members(const PPartition& p, int per_class, int colors, std::mt19937_64& rng) {
  std::vector<PString> out;
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    std::set<std::vector<int>> got;
    int guard = 0;
    while (static_cast<int>(got.size()) < per_class && guard++ < 1000) {
      std::vector<int> s(p.classes[c].size());
      for (auto& l : s)
        l = static_cast<int>(rng() % colors);
      got.insert(s);
    }
    for (const auto& s : got)
      out.push_back({static_cast<int>(c), s});
  }
  return out;
}

inline PStringFamily permute_family(const PStringFamily& f, const Perm& g) { return f.apply(g); }

} // namespace setiso::testing

namespace setiso::testing {

// Group generated by 1 or 2 random permutations.
inline PermGroup random_group(int n, std::mt19937_64& rng, int max_gens = 2) {
  std::vector<Perm> gens;
  int k = 1 + static_cast<int>(rng() % max_gens);
  for (int i = 0; i < k; ++i)
    gens.push_back(random_perm(n, rng));
  return PermGroup(n, gens);
}

// Invariant partial partition: a random union of orbits, each split into orbits or blocks.
inline PPartition random_invariant_partition(const PermGroup& g, std::mt19937_64& rng, bool full = false) {
  std::vector<int> cls(g.degree(), -1);
  int next = 0;
  for (const auto& o : g.orbits()) {
    if (!full && rng() % 4 == 0)
      continue;
    std::vector<std::vector<int>> parts;
    switch (rng() % 3) {
    case 0:
      parts = {o};
      break;
    case 1:
      parts = minimal_block_system(g, o);
      break;
    default:
      for (int a : o)
        parts.push_back({a});
    }
    for (const auto& b : parts) {
      for (int a : b)
        cls[a] = next;
      ++next;
    }
  }
  if (next == 0)
    return random_invariant_partition(g, rng, true);
  // class ids by minimum element
  std::vector<int> remap(next, -1);
  int k = 0;
  for (auto& c : cls)
    if (c >= 0) {
      if (remap[c] < 0)
        remap[c] = k++;
      c = remap[c];
    }
  return PPartition::from_class_of(cls);
}

inline std::vector<Perm> sorted_elements(const PermGroup& g) {
  auto e = g.elements();
  std::sort(e.begin(), e.end());
  return e;
}

} // namespace setiso::testing
