#include "setiso/string_iso.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace setiso {

ColoredString pull_string(const ColoredString& y, const Perm& g) {
  ColoredString r(y.size());
  for (std::size_t a = 0; a < y.size(); ++a)
    r[a] = y[g[static_cast<int>(a)]];
  return r;
}

IsoCoset split_over_blocks(const PermGroup& g, const std::vector<int>& w,
                           const std::function<IsoCoset(const PermGroup&, const Perm&)>& solve,
                           const BlockFilter& compatible) {
  const int n = g.degree();
  auto blocks = minimal_block_system(g, w);
  GroupHom h = block_action(g, blocks);
  HomTools t = hom_tools(h);
  CosetBuilder cb(n);
  std::optional<PermGroup> img_aut;
  std::optional<Perm> img_rep_inv;
  std::size_t img_gens = 0;
  auto refresh = [&] {
    if (img_aut && img_gens == cb.group().generators().size())
      return;
    std::vector<Perm> ig;
    for (const auto& a : cb.group().generators())
      ig.push_back(h.apply(a));
    img_aut = PermGroup(h.target_degree(), ig);
    img_gens = cb.group().generators().size();
    img_rep_inv = h.apply(*cb.rep()).inverse();
  };
  // a branch fixes the images of the first l base blocks; its elements are tail * prefix
  const auto& levels = t.image.levels();
  std::function<void(std::size_t, const Perm&)> rec = [&](std::size_t l, const Perm& prefix) {
    if (cb.rep()) {
      refresh();
      bool tail_covered = true;
      if (l < levels.size())
        for (const auto& s : levels[l].gens)
          if (!img_aut->contains(s)) {
            tail_covered = false;
            break;
          }
      if (tail_covered && img_aut->contains(prefix * *img_rep_inv))
        return;
    }
    if (l == levels.size()) {
      Perm d = *t.preimage(prefix);
      auto c = solve(t.kernel, d);
      if (c) {
        if (cb.empty())
          cb.add_group(c->group);
        cb.add_element(c->rep * d);
      }
      return;
    }
    const int b = levels[l].point;
    for (const auto& u : levels[l].reps) {
      Perm next = u * prefix;
      if (compatible && !compatible(blocks[b], blocks[next[b]]))
        continue;
      rec(l + 1, next);
    }
  };
  rec(0, Perm::identity(h.target_degree()));
  return cb.result();
}

namespace {

std::vector<std::vector<int>> orbits_within(const PermGroup& g, const std::vector<int>& w) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(g.degree(), 0);
  for (int a : w) {
    if (seen[a])
      continue;
    auto orb = g.orbit(a);
    for (int b : orb)
      seen[b] = 1;
    out.push_back(std::move(orb));
  }
  return out;
}

bool agrees(const ColoredString& x, const ColoredString& y, const std::vector<int>& w, const Perm& p) {
  for (int a : w)
    if (x[a] != y[p[a]])
      return false;
  return true;
}

IsoCoset luks(const PermGroup& g, const ColoredString& x, const ColoredString& y, const std::vector<int>& w,
              Budget& budget) {
  budget.charge();
  const int n = g.degree();
  if (w.empty())
    return Coset{g, Perm::identity(n)};
  if (g.fixes_pointwise(w)) {
    for (int a : w)
      if (x[a] != y[a])
        return std::nullopt;
    return Coset{g, Perm::identity(n)};
  }
  if (g.order() <= kEnumerationCutover) {
    CosetBuilder cb(n);
    g.for_each_element([&](const Perm& p) {
      if (agrees(x, y, w, p))
        cb.add_element(p);
      return true;
    });
    return cb.result();
  }

  auto orbs = orbits_within(g, w);
  if (orbs.size() > 1) {
    auto first = luks(g, x, y, orbs[0], budget);
    if (!first)
      return std::nullopt;
    std::vector<int> rest;
    std::set_difference(w.begin(), w.end(), orbs[0].begin(), orbs[0].end(), std::back_inserter(rest));
    auto tail = luks(first->group, x, pull_string(y, first->rep), rest, budget);
    if (!tail)
      return std::nullopt;
    return Coset{tail->group, tail->rep * first->rep};
  }

  // transitive on w: split over the cosets of the kernel of a primitive block action
  return split_over_blocks(
      g, w,
      [&](const PermGroup& kernel, const Perm& d) { return luks(kernel, x, pull_string(y, d), w, budget); },
      [&](const std::vector<int>& from, const std::vector<int>& to) {
        std::vector<int> cx, cy;
        for (int a : from)
          cx.push_back(x[a]);
        for (int a : to)
          cy.push_back(y[a]);
        std::sort(cx.begin(), cx.end());
        std::sort(cy.begin(), cy.end());
        return cx == cy;
      });
}

void check_query(const PermGroup& g, const ColoredString& x, const ColoredString& y, const std::vector<int>& w) {
  if (static_cast<int>(x.size()) != g.degree() || static_cast<int>(y.size()) != g.degree())
    throw std::invalid_argument("string length differs from group degree");
  if (!g.is_invariant(w))
    throw std::invalid_argument("window is not invariant under the group");
}

std::vector<int> normalized(std::vector<int> w) {
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

} // namespace

IsoCoset string_iso(const PermGroup& g, const ColoredString& x, const ColoredString& y,
                    const std::vector<int>& window, Budget& budget) {
  auto w = normalized(window);
  check_query(g, x, y, w);
  return luks(g, x, y, w, budget);
}

IsoCoset string_iso(const Coset& c, const ColoredString& x, const ColoredString& y,
                    const std::vector<int>& window, Budget& budget) {
  if (c.rep.degree() != c.group.degree())
    throw std::invalid_argument("coset representative degree mismatch");
  auto r = string_iso(c.group, x, pull_string(y, c.rep), window, budget);
  if (!r)
    return std::nullopt;
  return Coset{r->group, r->rep * c.rep};
}

IsoCoset string_iso(const StringQuery& q, Budget& budget) {
  if (q.shift)
    return string_iso(Coset{q.group, *q.shift}, q.x, q.y, q.window, budget);
  return string_iso(q.group, q.x, q.y, q.window, budget);
}

IsoCoset string_iso(const StringQuery& q) {
  Budget b;
  return string_iso(q, b);
}

// ---------------------------------------------------------------------------

ColoredGraph permute_graph(const ColoredGraph& g, const Perm& p) {
  ColoredGraph r(g.size());
  for (int v = 0; v < g.size(); ++v)
    r.set_vertex_color(p[v], g.vertex_color(v));
  for (auto [u, v, cuv, cvu] : g.edges())
    r.add_edge(p[u], p[v], cuv, cvu);
  return r;
}

namespace {

int pair_index(int n, int u, int v) { return n + u * (n - 1) + (v < u ? v : v - 1); }

} // namespace

IsoCoset graph_iso_under_group(const ColoredGraph& g1, const ColoredGraph& g2, const PermGroup& group,
                               Budget& budget) {
  const int n = g1.size();
  if (g2.size() != n || group.degree() != n)
    throw std::invalid_argument("vertex count mismatch");
  if (n == 0)
    return Coset{group, Perm::identity(0)};
  const int big = n + n * (n - 1);
  using Key = std::tuple<int, Color, Color>;
  auto key_of = [&](const ColoredGraph& g, int idx) -> Key {
    if (idx < n)
      return {0, g.vertex_color(idx), 0};
    int r = idx - n;
    int u = r / (n - 1);
    int v = r % (n - 1);
    if (v >= u)
      ++v;
    if (g.adjacent(u, v))
      return {1, g.arc(u, v), g.arc(v, u)};
    return {2, 0, 0};
  };
  std::map<Key, int> ids;
  for (const ColoredGraph* g : {&g1, &g2})
    for (int i = 0; i < big; ++i)
      ids.emplace(key_of(*g, i), 0);
  int next = 0;
  for (auto& [k, v] : ids)
    v = next++;
  ColoredString x(big), y(big);
  for (int i = 0; i < big; ++i) {
    x[i] = ids[key_of(g1, i)];
    y[i] = ids[key_of(g2, i)];
  }
  auto lift = [&](const Perm& p) {
    std::vector<int> img(big);
    for (int v = 0; v < n; ++v)
      img[v] = p[v];
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v)
          img[pair_index(n, u, v)] = pair_index(n, p[u], p[v]);
    return Perm(std::move(img));
  };
  std::vector<Perm> gens;
  for (const auto& s : group.generators())
    gens.push_back(lift(s));
  PermGroup big_group(big, gens);
  std::vector<int> all(big);
  for (int i = 0; i < big; ++i)
    all[i] = i;
  auto r = string_iso(big_group, x, y, all, budget);
  if (!r)
    return std::nullopt;
  auto down = [&](const Perm& p) {
    std::vector<int> img(p.images().begin(), p.images().begin() + n);
    return Perm(std::move(img));
  };
  std::vector<Perm> aut;
  for (const auto& s : r->group.generators())
    aut.push_back(down(s));
  return Coset{PermGroup(n, aut), down(r->rep)};
}

IsoCoset graph_iso_under_group(const ColoredGraph& g1, const ColoredGraph& g2, const PermGroup& group) {
  Budget b;
  return graph_iso_under_group(g1, g2, group, b);
}

} // namespace setiso
