#include "setiso/encodings.hpp"

#include "setiso/oracle.hpp"
#include "setiso/parallel.hpp"
#include "setiso/string_iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace setiso {

namespace {

struct Encoder {
  int universe;
  std::map<HfsTerm, int> ids;
  std::vector<Color> colors;
  std::vector<std::map<int, Color>> out; // parent -> child -> mask

  int visit(const HfsTerm& t) {
    if (t.kind == HfsTerm::Kind::Atom) {
      if (t.atom < 0 || t.atom >= universe)
        throw std::invalid_argument("hfs_to_graph: atom " + std::to_string(t.atom) + " outside the universe");
      return t.atom;
    }
    if (auto it = ids.find(t); it != ids.end())
      return it->second;
    std::vector<int> kids;
    for (const auto& c : t.children)
      kids.push_back(visit(c));
    int id = static_cast<int>(colors.size());
    colors.push_back(t.kind == HfsTerm::Kind::Set ? 1 : 2);
    out.emplace_back();
    if (t.kind == HfsTerm::Kind::Set) {
      for (int k : kids)
        out[id][k] = 0;
    } else {
      if (kids.size() > static_cast<std::size_t>(kMaxTupleLength))
        throw std::invalid_argument("hfs_to_graph: tuple longer than " + std::to_string(kMaxTupleLength));
      for (std::size_t i = 0; i < kids.size(); ++i)
        out[id][kids[i]] |= Color{1} << i;
    }
    ids.emplace(t, id);
    return id;
  }
};

} // namespace

HfsGraph hfs_to_graph(const HfsTerm& term, int universe) {
  if (universe < 0)
    throw std::invalid_argument("hfs_to_graph: negative universe");
  Encoder e{universe, {}, std::vector<Color>(universe, 0), std::vector<std::map<int, Color>>(universe)};
  int root = e.visit(term);
  HfsGraph g{ColoredGraph(static_cast<int>(e.colors.size())), universe, root};
  for (int v = 0; v < g.graph.size(); ++v)
    g.graph.set_vertex_color(v, e.colors[v]);
  for (int v = 0; v < g.graph.size(); ++v)
    for (auto [w, mask] : e.out[v])
      g.graph.add_edge(v, w, 1 + mask, 0);
  return g;
}

IsoCoset iso_hfs(const HfsTerm& x, const HfsTerm& y, const PermGroup& gamma, Budget& budget) {
  int n = gamma.degree();
  auto gx = hfs_to_graph(x, n);
  auto gy = hfs_to_graph(y, n);
  if (gx.graph.size() != gy.graph.size())
    return std::nullopt;
  if (gx.root < n || gy.root < n) {
    // a bare atom leaves no trace in the graph beyond its index
    if (gx.root >= n || gy.root >= n)
      return std::nullopt;
    ColoredString sx(n, 0), sy(n, 0);
    sx[gx.root] = sy[gy.root] = 1;
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return string_iso(gamma, sx, sy, all, budget);
  }
  std::vector<int> atoms(n);
  std::iota(atoms.begin(), atoms.end(), 0);
  auto res = iso_tcr_pairs(gx.graph, atoms, gy.graph, atoms, gamma, 0, budget);
  if (!res)
    return std::nullopt;
  // automorphisms fixing every atom are trivial, so restriction to the atoms is faithful
  auto restrict = [n](const Perm& p) {
    return Perm(std::vector<int>(p.images().begin(), p.images().begin() + n));
  };
  std::vector<Perm> gens;
  for (const Perm& g : res->group.generators())
    gens.push_back(restrict(g));
  return Coset{PermGroup(n, gens), restrict(res->rep)};
}

IsoCoset iso_hfs(const HfsTerm& x, const HfsTerm& y, const PermGroup& gamma) {
  Budget b;
  return iso_hfs(x, y, gamma, b);
}

int genus_to_h(int g) {
  if (g < 0)
    throw std::invalid_argument("genus must be non-negative");
  return 4 * g + 3;
}

int complete_bipartite_genus(int m, int n) {
  if (m < 2 || n < 2)
    throw std::invalid_argument("complete_bipartite_genus: both sides need at least 2 vertices");
  return ((m - 2) * (n - 2) + 3) / 4;
}

namespace {

bool connected_without(const ColoredGraph& g, int a, int b) {
  int n = g.size();
  std::vector<char> seen(n, 0);
  int start = -1, total = 0;
  for (int v = 0; v < n; ++v)
    if (v != a && v != b) {
      ++total;
      if (start < 0)
        start = v;
    }
  if (start < 0)
    return true;
  std::vector<int> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(v))
      if (w != a && w != b && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == total;
}

} // namespace

bool is_3_connected(const ColoredGraph& g) {
  int n = g.size();
  if (n < 4 || !connected_without(g, -1, -1))
    return false;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      if (!connected_without(g, a, b))
        return false;
  return true;
}

namespace {

IsoCoset enumerate_isomorphisms(const ColoredGraph& g1, const ColoredGraph& g2) {
  int n = g1.size();
  CosetBuilder b(n);
  for (const Perm& p : oracle::iso_graphs(oracle::symmetric(n), g1, g2))
    b.add_element(p);
  return b.result();
}

std::string triple_str(const std::vector<int>& t) {
  return "(" + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + ")";
}

} // namespace

ExcludedMinorResult iso_excluded_minor(const ColoredGraph& g1, const ColoredGraph& g2, int h,
                                       const ExcludedMinorConfig& cfg) {
  if (h < 3)
    throw std::invalid_argument("iso_excluded_minor: h must be at least 3");
  if (g1.size() < 4 || g2.size() < 4)
    throw std::invalid_argument("iso_excluded_minor: graphs need at least 4 vertices");
  if (!is_3_connected(g1) || !is_3_connected(g2))
    throw std::invalid_argument("iso_excluded_minor: input graph is not 3-connected");
  ExcludedMinorResult out;
  out.triple = {0, 1, 2};
  int n = g1.size();
  if (g2.size() != n || g1.edge_count() != g2.edge_count())
    return out;
  int t = h - 1;

  auto stall = [&](const std::string& what) {
    out.diagnostics.push_back(what);
    if (n > cfg.fallback_limit)
      throw NotCrBounded();
    out.fallback = true;
    out.coset = enumerate_isomorphisms(g1, g2);
    return out;
  };

  auto base = tcr_sequence(g1, out.triple, t);
  if (!base.discrete)
    return stall("first graph with triple " + triple_str(out.triple) + " is not " + std::to_string(t) +
                 "-CR-bounded: the K_{3," + std::to_string(h) + "} promise fails");

  std::vector<std::vector<int>> cands;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (a != b && a != c && b != c)
          cands.push_back({a, b, c});
  std::vector<char> match(cands.size(), 0);
  parallel_for(cands.size(), [&](std::size_t i) {
    auto tr = tcr_sequence(g2, cands[i], t);
    match[i] = tr.discrete && tr.trace == base.trace;
  });
  std::vector<std::vector<int>> live;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (match[i])
      live.push_back(cands[i]);
  out.candidates = live.size();

  std::vector<IsoCoset> found(live.size());
  auto gamma = PermGroup::trivial(3);
  parallel_for(live.size(), [&](std::size_t i) {
    Budget b(cfg.budget);
    found[i] = iso_tcr_pairs(g1, out.triple, g2, live[i], gamma, t, b);
  });
  CosetBuilder builder(n);
  for (const auto& f : found)
    if (f)
      builder.add_coset(*f);
  out.coset = builder.result();
  return out;
}

SmallClassReport small_class_diagnostic(const ColoredGraph& g, const Coloring& c, const std::vector<int>& v1,
                                        const std::vector<int>& v2, int h) {
  SmallClassReport r;
  if (v2.empty()) {
    r.vacuous = true;
    return r;
  }
  int n = g.size();
  std::vector<int> side(n, 0);
  for (int v : v1)
    side[v] |= 1;
  for (int v : v2)
    side[v] |= 2;
  if (std::any_of(side.begin(), side.end(), [](int s) { return s == 3; }))
    r.violated.push_back("V1 and V2 overlap");
  auto classes = c.classes();
  for (int v : v1)
    if (classes[c.color[v]].size() != 1) {
      r.violated.push_back("vertex " + std::to_string(v) + " of V1 is not a singleton class");
      break;
    }
  if (!is_equitable(g, c))
    r.violated.push_back("coloring is not stable");
  if (v1.size() < 3)
    r.violated.push_back("|V1| < 3");
  std::vector<char> nb(n, 0);
  for (int v : v2)
    for (int w : g.neighbors(v))
      if (!(side[w] & 2))
        nb[w] = 1;
  for (int v = 0; v < n; ++v)
    if (static_cast<bool>(nb[v]) != static_cast<bool>(side[v] & 1)) {
      r.violated.push_back("N(V2) differs from V1");
      break;
    }
  for (const auto& cls : classes) {
    bool inside = std::all_of(cls.begin(), cls.end(), [&](int v) { return side[v] & 2; });
    if (inside && static_cast<int>(cls.size()) <= h - 1 &&
        (!r.small_class || cls.size() < r.small_class->size()))
      r.small_class = cls;
  }
  r.promise_violated = r.violated.empty() && !r.small_class;
  return r;
}

} // namespace setiso
