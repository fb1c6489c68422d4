#include "setiso/oracle.hpp"

#include "setiso/hfs.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>

namespace setiso::oracle {

namespace {

std::string key(const Perm& p) {
  std::string s;
  s.reserve(static_cast<std::size_t>(p.degree()) * 2);
  for (int v : p.images()) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>(v >> 8));
  }
  return s;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = b[a[i]];
  return r;
}

} // namespace

std::vector<Perm> enumerate(int n, const std::vector<Perm>& gens, std::size_t cap) {
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> out{id};
  std::unordered_set<std::string> seen{key(Perm(id))};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      auto q = compose(out[i], g.images());
      if (seen.insert(key(Perm(q))).second) {
        if (out.size() >= cap)
          throw CapExceeded();
        out.push_back(std::move(q));
      }
    }
  std::sort(out.begin(), out.end());
  std::vector<Perm> r;
  r.reserve(out.size());
  for (auto& v : out)
    r.emplace_back(std::move(v));
  return r;
}

std::vector<Perm> symmetric(int n, std::size_t cap) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::vector<Perm> out;
  do {
    if (out.size() >= cap)
      throw CapExceeded();
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::vector<Perm> iso_strings(const std::vector<Perm>& group, const std::vector<int>& x, const std::vector<int>& y,
                              const std::vector<int>& window) {
  std::vector<Perm> out;
  for (const auto& g : group) {
    bool ok = true;
    for (int a : window)
      if (x[a] != y[g[a]]) {
        ok = false;
        break;
      }
    if (ok)
      out.push_back(g);
  }
  return out;
}

namespace {

// Members as sets of (point, letter) lists, which is label-free.
using Flat = std::set<std::vector<std::pair<int, int>>>;

Flat flatten(const PStringFamily& f, const Perm* g) {
  Flat out;
  const auto& classes = f.partition().classes;
  for (const auto& m : f.members()) {
    std::vector<std::pair<int, int>> s;
    const auto& cl = classes[m.cls];
    for (std::size_t i = 0; i < cl.size(); ++i)
      s.emplace_back(g ? (*g)[cl[i]] : cl[i], m.letters[i]);
    std::sort(s.begin(), s.end());
    out.insert(std::move(s));
  }
  return out;
}

} // namespace

std::vector<Perm> iso_families(const std::vector<Perm>& group, const PStringFamily& x, const PStringFamily& y) {
  std::vector<Perm> out;
  Flat target = flatten(y, nullptr);
  if (x.size() != y.size())
    return out;
  for (const auto& g : group)
    if (flatten(x, &g) == target)
      out.push_back(g);
  return out;
}

std::vector<Perm> iso_hypergraphs(const std::vector<Perm>& group, const Hypergraph& x, const Hypergraph& y) {
  std::vector<Perm> out;
  std::set<std::vector<int>> target(y.edges.begin(), y.edges.end());
  for (const auto& g : group) {
    std::set<std::vector<int>> img;
    for (const auto& e : x.edges) {
      std::vector<int> f;
      for (int v : e)
        f.push_back(g[v]);
      std::sort(f.begin(), f.end());
      img.insert(std::move(f));
    }
    if (img == target)
      out.push_back(g);
  }
  return out;
}

std::vector<Perm> iso_graphs(const std::vector<Perm>& group, const ColoredGraph& x, const ColoredGraph& y) {
  std::vector<Perm> out;
  if (x.size() != y.size() || x.edge_count() != y.edge_count())
    return out;
  const int n = x.size();
  for (const auto& g : group) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      ok = x.vertex_color(v) == y.vertex_color(g[v]);
    for (int u = 0; u < n && ok; ++u)
      for (int v : x.neighbors(u)) {
        if (!y.adjacent(g[u], g[v]) || x.arc(u, v) != y.arc(g[u], g[v])) {
          ok = false;
          break;
        }
      }
    if (ok)
      out.push_back(g);
  }
  return out;
}

std::vector<Perm> iso_hfs(const std::vector<Perm>& group, const HfsTerm& x, const HfsTerm& y) {
  std::vector<Perm> out;
  for (const auto& g : group)
    if (x.apply(g) == y)
      out.push_back(g);
  return out;
}

} // namespace setiso::oracle
