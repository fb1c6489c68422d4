#include "setiso/color_refine.hpp"

#include "setiso/gsi.hpp"
#include "setiso/string_iso.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace setiso {

std::vector<std::vector<int>> Coloring::classes() const {
  std::vector<std::vector<int>> out(count);
  for (int v = 0; v < static_cast<int>(color.size()); ++v)
    out[color[v]].push_back(v);
  return out;
}

std::vector<int> Coloring::class_sizes() const {
  std::vector<int> sizes(count, 0);
  for (int c : color)
    ++sizes[c];
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

namespace {

template <class Key>
Coloring rank_keys(const std::vector<Key>& keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Coloring c;
  c.count = static_cast<int>(sorted.size());
  c.color.resize(keys.size());
  for (std::size_t v = 0; v < keys.size(); ++v)
    c.color[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
  return c;
}

using Triple = std::tuple<int, Color, Color>;

std::vector<Triple> neighbour_triples(const ColoredGraph& g, const Coloring& c, int v) {
  std::vector<Triple> m;
  for (int w : g.neighbors(v))
    m.emplace_back(c.color[w], g.arc(v, w), g.arc(w, v));
  std::sort(m.begin(), m.end());
  return m;
}

} // namespace

Coloring rank_labels(const std::vector<long long>& labels) { return rank_keys(labels); }

Coloring refine_round(const ColoredGraph& g, const Coloring& c) {
  std::vector<std::pair<int, std::vector<Triple>>> keys(g.size());
  for (int v = 0; v < g.size(); ++v)
    keys[v] = {c.color[v], neighbour_triples(g, c, v)};
  return rank_keys(keys);
}

Coloring refine(const ColoredGraph& g, const Coloring& c) {
  if (static_cast<int>(c.color.size()) != g.size())
    throw std::invalid_argument("refine: coloring has the wrong length");
  Coloring cur = rank_keys(c.color);
  for (;;) {
    Coloring next = refine_round(g, cur);
    if (next.count == cur.count)
      return next;
    cur = std::move(next);
  }
}

Coloring color_refinement(const ColoredGraph& g) {
  std::vector<long long> labels(g.vertex_colors().begin(), g.vertex_colors().end());
  return refine(g, rank_labels(labels));
}

bool is_equitable(const ColoredGraph& g, const Coloring& c) {
  std::vector<std::vector<Triple>> first(c.count);
  std::vector<char> seen(c.count, 0);
  for (int v = 0; v < g.size(); ++v) {
    auto m = neighbour_triples(g, c, v);
    int k = c.color[v];
    if (!seen[k]) {
      seen[k] = 1;
      first[k] = std::move(m);
    } else if (first[k] != m) {
      return false;
    }
  }
  return true;
}

namespace {

void check_individualized(const ColoredGraph& g, const std::vector<int>& s) {
  std::vector<char> in(g.size(), 0);
  for (int v : s) {
    if (v < 0 || v >= g.size())
      throw std::invalid_argument("individualized vertex out of range");
    if (in[v])
      throw std::invalid_argument("individualized vertex repeated");
    in[v] = 1;
  }
}

// Classes of S are the singletons in S order; the rest are grouped by vertex color.
Coloring initial_coloring(const ColoredGraph& g, const std::vector<int>& s) {
  std::vector<std::pair<int, Color>> keys(g.size());
  for (int v = 0; v < g.size(); ++v)
    keys[v] = {static_cast<int>(s.size()), g.vertex_color(v)};
  for (std::size_t i = 0; i < s.size(); ++i)
    keys[s[i]] = {static_cast<int>(i), 0};
  return rank_keys(keys);
}

} // namespace

TcrTrace tcr_sequence(const ColoredGraph& g, const std::vector<int>& s, int t) {
  check_individualized(g, s);
  TcrTrace out;
  Coloring cur = initial_coloring(g, s);
  out.trace.push_back(cur.class_sizes());
  for (;;) {
    cur = refine(g, cur);
    out.trace.push_back(cur.class_sizes());
    if (cur.discrete())
      break;
    auto classes = cur.classes();
    std::vector<long long> labels(g.size());
    bool split = false;
    for (int v = 0; v < g.size(); ++v) {
      auto sz = static_cast<int>(classes[cur.color[v]].size());
      bool small = sz >= 2 && sz <= t;
      split = split || small;
      labels[v] = static_cast<long long>(cur.color[v]) * (g.size() + 1) + (small ? v + 1 : 0);
    }
    if (!split)
      break;
    cur = rank_labels(labels);
    out.trace.push_back(cur.class_sizes());
  }
  out.discrete = cur.discrete();
  out.final = std::move(cur);
  return out;
}

namespace {

// Aligned class lists of both graphs; the admissible class maps are group * identity.
struct PairState {
  std::vector<std::vector<int>> cls1, cls2;
  PermGroup group;

  int m() const { return static_cast<int>(cls1.size()); }
};

std::vector<int> class_index(const std::vector<std::vector<int>>& cls, int n) {
  std::vector<int> idx(n, -1);
  for (int c = 0; c < static_cast<int>(cls.size()); ++c)
    for (int v : cls[c])
      idx[v] = c;
  return idx;
}

template <class Key>
int intern(std::map<Key, int>& dict, const Key& k) {
  auto [it, fresh] = dict.emplace(k, static_cast<int>(dict.size()));
  return it->second;
}

// Graph on class indices: class colors from vertex colors and inner arcs, arc colors
// from the multiset of arc colors between two classes.
std::pair<ColoredGraph, ColoredGraph> quotients(const ColoredGraph& g1, const ColoredGraph& g2, const PairState& st) {
  using VKey = std::pair<std::vector<Color>, std::vector<std::pair<Color, Color>>>;
  std::map<VKey, int> vdict;
  std::map<std::vector<Color>, int> adict;
  auto build = [&](const ColoredGraph& g, const std::vector<std::vector<int>>& cls) {
    int m = static_cast<int>(cls.size());
    auto idx = class_index(cls, g.size());
    std::vector<VKey> vk(m);
    std::map<std::pair<int, int>, std::vector<Color>> between;
    for (int c = 0; c < m; ++c)
      for (int v : cls[c])
        vk[c].first.push_back(g.vertex_color(v));
    for (auto& [u, v, cuv, cvu] : g.edges()) {
      int a = idx[u], b = idx[v];
      if (a == b) {
        vk[a].second.emplace_back(std::min(cuv, cvu), std::max(cuv, cvu));
      } else {
        between[{a, b}].push_back(cuv);
        between[{b, a}].push_back(cvu);
      }
    }
    ColoredGraph q(m);
    for (int c = 0; c < m; ++c) {
      std::sort(vk[c].first.begin(), vk[c].first.end());
      std::sort(vk[c].second.begin(), vk[c].second.end());
      q.set_vertex_color(c, intern(vdict, vk[c]));
    }
    for (auto& [key, cols] : between) {
      if (key.first > key.second)
        continue;
      auto fwd = cols;
      auto bwd = between[{key.second, key.first}];
      std::sort(fwd.begin(), fwd.end());
      std::sort(bwd.begin(), bwd.end());
      q.add_edge(key.first, key.second, intern(adict, fwd), intern(adict, bwd));
    }
    return q;
  };
  return {build(g1, st.cls1), build(g2, st.cls2)};
}

// Restricts the group to class maps that are isomorphisms of the quotient graphs.
bool filter(const ColoredGraph& g1, const ColoredGraph& g2, PairState& st, Budget& budget) {
  auto [q1, q2] = quotients(g1, g2, st);
  auto res = graph_iso_under_group(q1, q2, st.group, budget);
  if (!res)
    return false;
  auto old = st.cls2;
  for (int c = 0; c < st.m(); ++c)
    st.cls2[c] = old[res->rep[c]];
  st.group = res->group;
  return true;
}

// One refinement round replayed as a set-of-strings instance over the class indices.
// Returns false for Empty; `changed` reports whether any class split.
bool cr_round(const ColoredGraph& g1, const ColoredGraph& g2, PairState& st, Budget& budget, bool& changed) {
  int m = st.m();
  using LKey = std::tuple<int, Color, std::vector<std::pair<Color, Color>>>;
  std::map<LKey, int> ldict;
  auto signatures = [&](const ColoredGraph& g, const std::vector<std::vector<int>>& cls) {
    auto idx = class_index(cls, g.size());
    std::vector<std::vector<int>> sig(g.size());
    for (int v = 0; v < g.size(); ++v) {
      std::vector<std::vector<std::pair<Color, Color>>> per(m);
      for (int w : g.neighbors(v))
        per[idx[w]].emplace_back(g.arc(v, w), g.arc(w, v));
      sig[v].resize(m);
      for (int c = 0; c < m; ++c) {
        std::sort(per[c].begin(), per[c].end());
        bool own = c == idx[v];
        sig[v][c] = intern(ldict, LKey{own ? 1 : 0, own ? g.vertex_color(v) : 0, per[c]});
      }
    }
    // the own-class letter also records how many vertices share the signature
    std::map<std::vector<int>, int> count;
    for (auto& s : sig)
      ++count[s];
    std::vector<std::vector<int>> out(g.size());
    for (int v = 0; v < g.size(); ++v) {
      out[v] = sig[v];
      int c = idx[v];
      out[v][c] = -1 - intern(ldict, LKey{2, count[sig[v]], {{sig[v][c], 0}}});
    }
    return out;
  };
  auto s1 = signatures(g1, st.cls1);
  auto s2 = signatures(g2, st.cls2);
  std::map<std::vector<int>, std::vector<int>> groups1, groups2;
  for (int v = 0; v < g1.size(); ++v)
    groups1[s1[v]].push_back(v);
  for (int v = 0; v < g2.size(); ++v)
    groups2[s2[v]].push_back(v);
  if (groups1.size() != groups2.size())
    return false;
  changed = static_cast<int>(groups1.size()) != m;

  // shift letters so the alphabet is non-negative
  int shift = static_cast<int>(ldict.size()) + 1;
  std::vector<PString> xs, ys;
  std::vector<std::vector<int>> members1;
  for (auto& [s, vs] : groups1) {
    PString p{0, s};
    for (int& l : p.letters)
      l += shift;
    xs.push_back(p);
    members1.push_back(s);
  }
  std::map<std::vector<int>, std::vector<int>> shifted2;
  for (auto& [s, vs] : groups2) {
    PString p{0, s};
    for (int& l : p.letters)
      l += shift;
    ys.push_back(p);
    shifted2[p.letters] = vs;
  }
  auto part = PPartition::trivial(m);
  auto [fx, fy] = make_family_pair(part, xs, ys);
  GsiInstance inst{st.group, part, fx, fy, std::nullopt};
  auto res = generalized_string_iso(inst, budget);
  if (!res)
    return false;
  if (!changed) {
    // the class map coset may still shrink
    auto old = st.cls2;
    for (int c = 0; c < m; ++c)
      st.cls2[c] = old[res->rep[c]];
    st.group = res->group;
    return true;
  }

  // new classes: members of X in order, matched to their images under the rep
  int k = static_cast<int>(xs.size());
  std::map<std::vector<int>, int> member_of;
  for (int i = 0; i < k; ++i)
    member_of[xs[i].letters] = i;
  auto image = [&](const std::vector<int>& s, const Perm& g) {
    std::vector<int> out(s.size());
    for (int a = 0; a < m; ++a)
      out[g[a]] = s[a];
    return out;
  };
  std::vector<std::vector<int>> n1(k), n2(k);
  for (int i = 0; i < k; ++i) {
    n1[i] = groups1[members1[i]];
    auto it = shifted2.find(image(xs[i].letters, res->rep));
    if (it == shifted2.end())
      throw std::logic_error("cr_round: coset representative does not map the families");
    n2[i] = it->second;
  }
  std::vector<Perm> gens;
  for (const Perm& h : res->group.generators()) {
    std::vector<int> img(k);
    for (int i = 0; i < k; ++i)
      img[i] = member_of.at(image(xs[i].letters, h));
    gens.emplace_back(img);
  }
  st.cls1 = std::move(n1);
  st.cls2 = std::move(n2);
  st.group = PermGroup(k, gens);
  return true;
}

// Splits every class of size in [2, t] into singletons (vertex order) on both sides.
bool split_small(PairState& st, int t) {
  int m = st.m();
  std::vector<int> first(m);
  std::vector<std::vector<int>> n1, n2;
  std::vector<Perm> sym;
  bool any = false;
  for (int c = 0; c < m; ++c) {
    first[c] = static_cast<int>(n1.size());
    int sz = static_cast<int>(st.cls1[c].size());
    if (sz >= 2 && sz <= t) {
      any = true;
      for (int i = 0; i < sz; ++i) {
        n1.push_back({st.cls1[c][i]});
        n2.push_back({st.cls2[c][i]});
      }
    } else {
      n1.push_back(st.cls1[c]);
      n2.push_back(st.cls2[c]);
    }
  }
  if (!any)
    return false;
  int k = static_cast<int>(n1.size());
  auto width = [&](int c) { return (c + 1 < m ? first[c + 1] : k) - first[c]; };
  std::vector<Perm> gens;
  for (const Perm& h : st.group.generators()) {
    std::vector<int> img(k);
    for (int c = 0; c < m; ++c)
      for (int i = 0; i < width(c); ++i)
        img[first[c] + i] = first[h[c]] + i;
    gens.emplace_back(img);
  }
  for (int c = 0; c < m; ++c) {
    int w = width(c);
    if (w < 2)
      continue;
    std::vector<int> swap(k), cyc(k);
    for (int i = 0; i < k; ++i)
      swap[i] = cyc[i] = i;
    std::swap(swap[first[c]], swap[first[c] + 1]);
    gens.emplace_back(swap);
    if (w > 2) {
      for (int i = 0; i < w; ++i)
        cyc[first[c] + i] = first[c] + (i + 1) % w;
      gens.emplace_back(cyc);
    }
  }
  st.cls1 = std::move(n1);
  st.cls2 = std::move(n2);
  st.group = PermGroup(k, gens);
  return true;
}

} // namespace

IsoCoset iso_tcr_pairs(const ColoredGraph& g1, const std::vector<int>& s1, const ColoredGraph& g2,
                       const std::vector<int>& s2, const PermGroup& gamma, int t, Budget& budget) {
  check_individualized(g1, s1);
  check_individualized(g2, s2);
  int p = static_cast<int>(s1.size());
  if (static_cast<int>(s2.size()) != p || gamma.degree() != p)
    throw std::invalid_argument("iso_tcr_pairs: individualized sets and group disagree in size");
  if (g1.size() != g2.size() || g1.edge_count() != g2.edge_count())
    return std::nullopt;
  int n = g1.size();

  PairState st;
  auto c1 = initial_coloring(g1, s1).classes();
  auto c2 = initial_coloring(g2, s2).classes();
  if (c1.size() != c2.size())
    return std::nullopt;
  for (std::size_t c = static_cast<std::size_t>(p); c < c1.size(); ++c)
    if (c1[c].size() != c2[c].size() || g1.vertex_color(c1[c][0]) != g2.vertex_color(c2[c][0]))
      return std::nullopt;
  st.cls1 = c1;
  st.cls2 = c2;
  int m = st.m();
  std::vector<Perm> gens;
  for (const Perm& h : gamma.generators()) {
    std::vector<int> img(m);
    for (int c = 0; c < m; ++c)
      img[c] = c < p ? h[c] : c;
    gens.emplace_back(img);
  }
  st.group = PermGroup(m, gens);
  if (!filter(g1, g2, st, budget))
    return std::nullopt;

  for (;;) {
    bool changed = true;
    while (changed) {
      budget.charge();
      if (!cr_round(g1, g2, st, budget, changed))
        return std::nullopt;
      if (changed && !filter(g1, g2, st, budget))
        return std::nullopt;
    }
    if (st.m() == n)
      break;
    if (!split_small(st, t))
      throw NotCrBounded();
    if (!filter(g1, g2, st, budget))
      return std::nullopt;
  }

  // discrete: class indices are vertices
  std::vector<int> a1(n), a2(n);
  for (int c = 0; c < n; ++c) {
    a1[st.cls1[c][0]] = c;
    a2[st.cls2[c][0]] = c;
  }
  Perm alpha1(a1), alpha2(a2);
  Perm rep = alpha1 * alpha2.inverse();
  std::vector<Perm> vgens;
  for (const Perm& h : st.group.generators())
    vgens.push_back(alpha1 * h * alpha1.inverse());
  PermGroup aut(n, vgens);
  auto res = graph_iso_under_group(g1, permute_graph(g2, rep.inverse()), aut, budget);
  if (!res)
    return std::nullopt;
  return Coset{res->group, res->rep * rep};
}

IsoCoset iso_tcr_pairs(const ColoredGraph& g1, const std::vector<int>& s1, const ColoredGraph& g2,
                       const std::vector<int>& s2, const PermGroup& gamma, int t) {
  Budget b;
  return iso_tcr_pairs(g1, s1, g2, s2, gamma, t, b);
}

} // namespace setiso
