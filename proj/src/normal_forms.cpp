#include "setiso/normal_forms.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace setiso {

std::vector<int> StructureGraph::depths() const {
  std::vector<int> d(children.size(), -1);
  if (children.empty())
    return d;
  std::deque<int> q{root};
  d[root] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : children[v])
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        q.push_back(w);
      }
  }
  return d;
}

void StructureGraph::validate() const {
  const int nv = vertex_count();
  if (nv == 0)
    throw std::invalid_argument("structure graph has no vertices");
  if (static_cast<int>(leaf.size()) != nv)
    throw std::invalid_argument("leaf table size mismatch");
  if (root < 0 || root >= nv)
    throw std::invalid_argument("root out of range");
  if (action.size() != group_gens.size())
    throw std::invalid_argument("one vertex action per generator is required");
  for (int v = 0; v < nv; ++v) {
    const auto& c = children[v];
    if (!std::is_sorted(c.begin(), c.end()) || std::adjacent_find(c.begin(), c.end()) != c.end())
      throw std::invalid_argument("children must be sorted and distinct");
    for (int w : c)
      if (w < 0 || w >= nv || w == v)
        throw std::invalid_argument("bad arc");
  }
  auto d = depths();
  std::vector<int> seen(n, 0);
  for (int v = 0; v < nv; ++v) {
    if (d[v] < 0)
      throw std::invalid_argument("vertex unreachable from the root");
    for (int w : children[v])
      if (d[v] + 1 != d[w])
        throw std::invalid_argument("arc does not increase the depth by one");
    bool sink = children[v].empty();
    if (sink != (leaf[v] >= 0))
      throw std::invalid_argument("leaf labels must sit exactly on the sinks");
    if (leaf[v] >= 0) {
      if (leaf[v] >= n || seen[leaf[v]]++)
        throw std::invalid_argument("leaf labels are not a bijection onto the domain");
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw std::invalid_argument("some point is not a leaf");
  for (std::size_t k = 0; k < action.size(); ++k) {
    const auto& a = action[k];
    const auto& s = group_gens[k];
    if (a.degree() != nv || s.degree() != n)
      throw std::invalid_argument("action degree mismatch");
    for (int v = 0; v < nv; ++v) {
      for (int w : children[v]) {
        const auto& c = children[a[v]];
        if (!std::binary_search(c.begin(), c.end(), a[w]))
          throw std::invalid_argument("action does not map arcs to arcs");
      }
      if (leaf[v] >= 0 && leaf[a[v]] != s[leaf[v]])
        throw std::invalid_argument("action does not extend the generator on the leaves");
    }
  }
}

namespace {

// Homomorphism given by generator images; identity and repeated generators are dropped.
GroupHom hom_from_gens(int n, const std::vector<Perm>& gens, int target, const std::vector<Perm>& images) {
  std::vector<Perm> g, im;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!gens[i].is_identity() && std::find(g.begin(), g.end(), gens[i]) == g.end()) {
      g.push_back(gens[i]);
      im.push_back(images[i]);
    }
  PermGroup src(n, g);
  if (src.generators().size() != g.size())
    throw std::logic_error("group dropped a generator");
  return GroupHom(src, target, im);
}

// Vertices in an order where every arc goes forward.
std::vector<int> by_depth(const StructureGraph& g) {
  auto d = g.depths();
  std::vector<int> order(g.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
  return order;
}

} // namespace

BigInt StructureGraph::branch_count() const {
  auto order = by_depth(*this);
  std::vector<BigInt> paths(vertex_count(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    BigInt s = 1;
    for (int w : children[*it])
      s += paths[w];
    paths[*it] = s;
  }
  return paths[root];
}

BigInt StructureGraph::maximal_branch_count() const {
  auto order = by_depth(*this);
  std::vector<BigInt> paths(vertex_count(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (children[*it].empty()) {
      paths[*it] = 1;
      continue;
    }
    BigInt s = 0;
    for (int w : children[*it])
      s += paths[w];
    paths[*it] = s;
  }
  return paths[root];
}

std::vector<int> StructureGraph::leaf_vertex() const {
  std::vector<int> r(n, -1);
  for (int v = 0; v < vertex_count(); ++v)
    if (leaf[v] >= 0)
      r[leaf[v]] = v;
  return r;
}

std::string StructureGraph::dump() const {
  std::ostringstream os;
  auto d = depths();
  for (int v = 0; v < vertex_count(); ++v) {
    os << v << ' ' << d[v] << ' ';
    if (leaf[v] >= 0)
      os << leaf[v];
    else
      os << '-';
    os << '\n';
  }
  for (int v = 0; v < vertex_count(); ++v)
    for (int w : children[v])
      os << v << ' ' << w << '\n';
  for (std::size_t k = 0; k < action.size(); ++k) {
    os << "gen " << k << '\n';
    for (int v = 0; v < vertex_count(); ++v)
      os << (v ? " " : "") << action[k][v];
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<int> Unfolding::branch(int node) const {
  std::vector<int> b;
  for (int t = node; t >= 0; t = parent[t])
    b.push_back(vertex[t]);
  std::reverse(b.begin(), b.end());
  return b;
}

PermGroup Unfolding::group() const { return PermGroup(size(), images); }

Perm Unfolding::psi(const Perm& g) const {
  if (!hom_)
    hom_ = hom_from_gens(n, gens, size(), images);
  return hom_->apply(g);
}

PartitionChain Unfolding::chain() const {
  PartitionChain c;
  int maxd = 0;
  for (int t : leaves)
    maxd = std::max(maxd, depth[t]);
  for (int k = 0; k <= maxd; ++k) {
    std::vector<int> lab(leaves.size());
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      int t = leaves[i];
      while (depth[t] > k)
        t = parent[t];
      lab[i] = t;
    }
    auto p = canonical_partition(lab);
    if (c.levels.empty() || p.classes.size() != c.levels.back().classes.size())
      c.levels.push_back(std::move(p));
  }
  return c;
}

StructureGraph Unfolding::as_structure_graph() const {
  StructureGraph g;
  g.n = size();
  g.root = 0;
  g.children = children;
  g.leaf = leaf_index;
  g.group_gens = images;
  g.action = node_images;
  return g;
}

Unfolding unfold_and_act(const StructureGraph& g, std::size_t cap) {
  g.validate();
  if (g.branch_count() > cap)
    throw BranchCapExceeded();
  Unfolding u;
  u.n = g.n;
  u.gens = g.group_gens;
  // preorder with children in increasing vertex order
  std::vector<std::pair<int, int>> stack{{-1, g.root}};
  while (!stack.empty()) {
    auto [par, v] = stack.back();
    stack.pop_back();
    int t = static_cast<int>(u.vertex.size());
    u.parent.push_back(par);
    u.vertex.push_back(v);
    u.children.emplace_back();
    u.depth.push_back(par < 0 ? 0 : u.depth[par] + 1);
    u.leaf_index.push_back(-1);
    if (par >= 0)
      u.children[par].push_back(t);
    if (g.children[v].empty()) {
      u.leaf_index[t] = static_cast<int>(u.leaves.size());
      u.leaves.push_back(t);
      u.f.push_back(g.leaf[v]);
    }
    for (auto it = g.children[v].rbegin(); it != g.children[v].rend(); ++it)
      stack.emplace_back(t, *it);
  }
  const int nt = static_cast<int>(u.vertex.size());
  for (const auto& a : g.action) {
    std::vector<int> img(nt, -1);
    img[0] = 0;
    for (int t = 0; t < nt; ++t)
      for (int c : u.children[t]) {
        int want = a[u.vertex[c]];
        const auto& cs = u.children[img[t]];
        auto it = std::lower_bound(cs.begin(), cs.end(), want,
                                   [&](int node, int vtx) { return u.vertex[node] < vtx; });
        img[c] = *it;
      }
    std::vector<int> li(u.leaves.size());
    for (std::size_t i = 0; i < u.leaves.size(); ++i)
      li[i] = u.leaf_index[img[u.leaves[i]]];
    u.node_images.emplace_back(std::move(img));
    u.images.emplace_back(std::move(li));
  }
  return u;
}

// ---------------------------------------------------------------------------

StructureGraph structure_tree_from_chain(const PermGroup& g, const PartitionChain& chain) {
  chain.validate();
  if (chain.n() != g.degree() || !chain.is_invariant(g))
    throw std::invalid_argument("chain is not invariant under the group");
  const std::size_t L = chain.size();
  std::vector<int> offset(L + 1, 0);
  for (std::size_t i = 0; i < L; ++i)
    offset[i + 1] = offset[i] + static_cast<int>(chain.levels[i].classes.size());
  StructureGraph t;
  t.n = g.degree();
  t.root = 0;
  t.children.assign(offset[L], {});
  t.leaf.assign(offset[L], -1);
  for (std::size_t i = 0; i + 1 < L; ++i) {
    const auto& next = chain.levels[i + 1];
    for (std::size_t c = 0; c < next.classes.size(); ++c) {
      int par = chain.levels[i].class_of[next.classes[c][0]];
      t.children[offset[i] + par].push_back(offset[i + 1] + static_cast<int>(c));
    }
  }
  for (std::size_t b = 0; b < chain.levels[L - 1].classes.size(); ++b)
    t.leaf[offset[L - 1] + b] = chain.levels[L - 1].classes[b][0];
  t.group_gens = g.generators();
  for (const auto& s : g.generators()) {
    std::vector<int> img(offset[L]);
    for (std::size_t i = 0; i < L; ++i) {
      const auto& lv = chain.levels[i];
      for (std::size_t b = 0; b < lv.classes.size(); ++b)
        img[offset[i] + b] = offset[i] + lv.class_of[s[lv.classes[b][0]]];
    }
    t.action.emplace_back(std::move(img));
  }
  t.validate();
  return t;
}

CombinedGraph combine_along_blocks(const PermGroup& g, const std::vector<std::vector<int>>& blocks,
                                   const StructureGraph& top, const StructureGraph& inner, int rep_block) {
  top.validate();
  inner.validate();
  const int k = static_cast<int>(blocks.size());
  if (rep_block < 0 || rep_block >= k)
    throw std::invalid_argument("representative block out of range");
  const auto& brep = blocks[rep_block];
  if (top.n != k || inner.n != static_cast<int>(brep.size()))
    throw std::invalid_argument("structure graphs do not match the block system");
  std::vector<int> block_of(g.degree(), -1);
  for (int j = 0; j < k; ++j)
    for (int a : blocks[j])
      block_of[a] = j;
  if (std::find(block_of.begin(), block_of.end(), -1) != block_of.end())
    throw std::invalid_argument("blocks do not cover the domain");

  auto block_image = [&](const Perm& s) {
    std::vector<int> im(k);
    for (int j = 0; j < k; ++j)
      im[j] = block_of[s[blocks[j][0]]];
    return Perm(std::move(im));
  };
  // transversal t[j] maps the representative block onto block j
  std::vector<std::optional<Perm>> t(k);
  t[rep_block] = Perm::identity(g.degree());
  std::deque<int> q{rep_block};
  while (!q.empty()) {
    int j = q.front();
    q.pop_front();
    for (const auto& s : g.generators()) {
      int j2 = block_of[s[blocks[j][0]]];
      if (!t[j2]) {
        t[j2] = *t[j] * s;
        q.push_back(j2);
      }
    }
  }
  for (const auto& x : t)
    if (!x)
      throw std::invalid_argument("block action is not transitive");

  GroupHom top_hom = hom_from_gens(k, top.group_gens, top.vertex_count(), top.action);
  GroupHom inner_hom = hom_from_gens(inner.n, inner.group_gens, inner.vertex_count(), inner.action);

  const int tv = top.vertex_count();
  const int iv = inner.vertex_count();
  std::vector<int> inner_idx(iv, -1);
  for (int u = 0, c = 0; u < iv; ++u)
    if (u != inner.root)
      inner_idx[u] = c++;
  auto top_leaf = top.leaf_vertex();
  auto vid = [&](int j, int u) { return u == inner.root ? top_leaf[j] : tv + j * (iv - 1) + inner_idx[u]; };

  CombinedGraph out;
  auto& r = out.graph;
  const int nv = tv + k * (iv - 1);
  r.n = g.degree();
  r.root = top.root;
  r.children.assign(nv, {});
  r.leaf.assign(nv, -1);
  for (int v = 0; v < tv; ++v)
    r.children[v] = top.children[v];
  for (int j = 0; j < k; ++j)
    for (int u = 0; u < iv; ++u) {
      int v = vid(j, u);
      for (int w : inner.children[u])
        r.children[v].push_back(vid(j, w));
      std::sort(r.children[v].begin(), r.children[v].end());
      if (inner.leaf[u] >= 0)
        r.leaf[v] = (*t[j])[brep[inner.leaf[u]]];
    }
  r.group_gens = g.generators();
  for (const auto& s : g.generators()) {
    Perm pi = block_image(s);
    Perm ta = top_hom.apply(pi);
    std::vector<int> img(nv, -1);
    for (int v = 0; v < tv; ++v)
      img[v] = ta[v];
    for (int j = 0; j < k; ++j) {
      int j2 = pi[j];
      Perm eta = *t[j] * s * t[j2]->inverse();
      std::vector<int> pos(brep.size());
      for (std::size_t p = 0; p < brep.size(); ++p)
        pos[p] = static_cast<int>(std::lower_bound(brep.begin(), brep.end(), eta[brep[p]]) - brep.begin());
      Perm ia = inner_hom.apply(Perm(pos));
      for (int u = 0; u < iv; ++u)
        img[vid(j, u)] = vid(j2, ia[u]);
    }
    r.action.emplace_back(std::move(img));
  }
  r.validate();
  out.block_nodes = top_leaf;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using Levels = std::vector<std::vector<std::vector<int>>>;

// Partitions of a transitive orbit from {orbit} to singletons via minimal block systems.
Levels transitive_chain(const PermGroup& h, const std::vector<int>& orbit) {
  if (orbit.size() == 1)
    return {{orbit}};
  auto blocks = minimal_block_system(h, orbit);
  if (blocks.size() == orbit.size()) {
    std::vector<std::vector<int>> single;
    for (int a : orbit)
      single.push_back({a});
    return {{orbit}, single};
  }
  std::vector<int> block_of(h.degree(), -1);
  for (std::size_t j = 0; j < blocks.size(); ++j)
    for (int a : blocks[j])
      block_of[a] = static_cast<int>(j);
  std::vector<std::optional<Perm>> t(blocks.size());
  t[0] = Perm::identity(h.degree());
  std::deque<int> q{0};
  while (!q.empty()) {
    int j = q.front();
    q.pop_front();
    for (const auto& s : h.generators()) {
      int j2 = block_of[s[blocks[j][0]]];
      if (!t[j2]) {
        t[j2] = *t[j] * s;
        q.push_back(j2);
      }
    }
  }
  auto sub = transitive_chain(setwise_stabilizer(h, blocks[0]), blocks[0]);
  Levels out{{orbit}};
  for (const auto& lv : sub) {
    std::vector<std::vector<int>> parts;
    for (std::size_t j = 0; j < blocks.size(); ++j)
      for (const auto& b : lv) {
        std::vector<int> img;
        for (int a : b)
          img.push_back((*t[j])[a]);
        std::sort(img.begin(), img.end());
        parts.push_back(std::move(img));
      }
    out.push_back(std::move(parts));
  }
  return out;
}

// Label vectors (one per level) over m local units; the first level splits by orbits.
std::vector<std::vector<int>> local_levels(const PermGroup& h) {
  const int m = h.degree();
  std::vector<std::vector<int>> out;
  auto orbs = h.orbits();
  std::vector<int> lab(m);
  for (std::size_t i = 0; i < orbs.size(); ++i)
    for (int a : orbs[i])
      lab[a] = static_cast<int>(i);
  out.push_back(lab);
  std::vector<Levels> chains;
  std::size_t depth = 0;
  for (auto o : orbs) {
    std::sort(o.begin(), o.end());
    chains.push_back(transitive_chain(h, o));
    depth = std::max(depth, chains.back().size());
  }
  for (std::size_t i = 1; i < depth; ++i) {
    std::vector<int> l(m, -1);
    int next = 0;
    for (const auto& c : chains) {
      if (i < c.size()) {
        for (const auto& b : c[i]) {
          for (int a : b)
            l[a] = next;
          ++next;
        }
      } else {
        for (const auto& b : c.back())
          for (int a : b)
            l[a] = next++;
      }
    }
    out.push_back(std::move(l));
  }
  return out;
}

} // namespace

std::vector<PPartition> invariant_refinement(const PermGroup& g, const PPartition& coarse, const PPartition& fine) {
  const int n = g.degree();
  if (coarse.n != n || fine.n != n)
    throw std::invalid_argument("partition size differs from group degree");
  if (!refines(fine, coarse))
    throw std::invalid_argument("fine partition does not refine the coarse one");
  if (!coarse.is_invariant(g) || !fine.is_invariant(g))
    throw std::invalid_argument("partitions must be invariant");
  const auto& units = fine.classes;
  const int U = static_cast<int>(units.size());
  const int C = static_cast<int>(coarse.classes.size());

  // per coarse orbit and level, unit -> label (labels are unique across coarse blocks)
  std::vector<char> done(C, 0);
  std::size_t depth = 0;
  std::vector<std::vector<std::vector<long long>>> orbit_levels;
  for (int c0 = 0; c0 < C; ++c0) {
    if (done[c0])
      continue;
    const auto& cpts = coarse.classes[c0];
    // units inside the representative block
    std::vector<int> uc;
    for (int u = 0; u < U; ++u)
      if (coarse.class_of[units[u][0]] == c0)
        uc.push_back(u);
    std::vector<int> local(U, -1);
    for (std::size_t l = 0; l < uc.size(); ++l)
      local[uc[l]] = static_cast<int>(l);
    PermGroup stab = setwise_stabilizer(g, cpts);
    std::vector<Perm> hg;
    for (const auto& s : stab.generators()) {
      std::vector<int> im(uc.size());
      for (std::size_t l = 0; l < uc.size(); ++l)
        im[l] = local[fine.class_of[s[units[uc[l]][0]]]];
      hg.emplace_back(std::move(im));
    }
    auto lv = local_levels(PermGroup(static_cast<int>(uc.size()), hg));
    // transport to the other blocks of the orbit
    std::vector<std::optional<Perm>> t(C);
    t[c0] = Perm::identity(n);
    std::deque<int> q{c0};
    std::vector<std::vector<long long>> labels(lv.size(), std::vector<long long>(U, -1));
    while (!q.empty()) {
      int c = q.front();
      q.pop_front();
      done[c] = 1;
      for (std::size_t l = 0; l < uc.size(); ++l) {
        int img = fine.class_of[(*t[c])[units[uc[l]][0]]];
        for (std::size_t i = 0; i < lv.size(); ++i)
          labels[i][img] = static_cast<long long>(c) * (U + 1) + lv[i][l];
      }
      for (const auto& s : g.generators()) {
        int c2 = coarse.class_of[s[coarse.classes[c][0]]];
        if (!t[c2]) {
          t[c2] = *t[c] * s;
          q.push_back(c2);
        }
      }
    }
    depth = std::max(depth, lv.size());
    orbit_levels.push_back(std::move(labels));
  }
  std::vector<PPartition> out{coarse};
  for (std::size_t i = 0; i < depth; ++i) {
    std::vector<long long> ul(U, -1);
    for (const auto& ol : orbit_levels) {
      // the last local level is discrete, so shorter chains stay there
      const auto& src = i < ol.size() ? ol[i] : ol.back();
      for (int u = 0; u < U; ++u)
        if (src[u] >= 0)
          ul[u] = src[u];
    }
    std::vector<int> lab(n);
    std::map<long long, int> ids;
    for (int a = 0; a < n; ++a) {
      auto it = ids.emplace(ul[fine.class_of[a]], static_cast<int>(ids.size())).first;
      lab[a] = it->second;
    }
    auto p = canonical_partition(lab);
    if (p.classes.size() != out.back().classes.size())
      out.push_back(std::move(p));
  }
  if (out.back().classes.size() != fine.classes.size())
    out.push_back(canonical_partition(fine.class_of));
  return out;
}

// ---------------------------------------------------------------------------

AlmostDAryReport level_reports(const PartitionChain& chain, const PermGroup& g, int d) {
  chain.validate();
  if (chain.n() != g.degree() || !chain.is_invariant(g))
    throw std::invalid_argument("chain is not invariant under the group");
  AlmostDAryReport rep;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const auto& par = chain.levels[i - 1];
    const auto& lv = chain.levels[i];
    std::vector<char> done(par.classes.size(), 0);
    for (std::size_t b = 0; b < par.classes.size(); ++b) {
      if (done[b])
        continue;
      for (int a : g.orbit(par.classes[b][0]))
        done[par.class_of[a]] = 1;
      const auto& blk = par.classes[b];
      std::vector<int> kids;
      for (std::size_t c = 0; c < lv.classes.size(); ++c)
        if (par.class_of[lv.classes[c][0]] == static_cast<int>(b))
          kids.push_back(static_cast<int>(c));
      LevelReport r;
      r.level = i;
      r.block = blk;
      r.fan_out = static_cast<int>(kids.size());
      PermGroup stab = setwise_stabilizer(g, blk);
      std::vector<Perm> ind;
      for (const auto& s : stab.generators()) {
        std::vector<int> im(kids.size());
        for (std::size_t x = 0; x < kids.size(); ++x) {
          int c2 = lv.class_of[s[lv.classes[kids[x]][0]]];
          im[x] = static_cast<int>(std::lower_bound(kids.begin(), kids.end(), c2) - kids.begin());
        }
        ind.emplace_back(std::move(im));
      }
      PermGroup k(static_cast<int>(kids.size()), ind);
      r.semi_regular = true;
      for (const auto& o : k.orbits())
        if (BigInt(o.size()) != k.order()) {
          r.semi_regular = false;
          break;
        }
      r.ok = r.fan_out <= d || r.semi_regular;
      rep.ok = rep.ok && r.ok;
      rep.levels.push_back(std::move(r));
    }
  }
  return rep;
}

bool is_almost_d_ary(const PartitionChain& chain, const PermGroup& g, int d) {
  return level_reports(chain, g, d).ok;
}

int certified_degree(const PartitionChain& chain, const PermGroup& g) {
  int d = 2;
  for (const auto& r : level_reports(chain, g, 2).levels)
    if (!r.semi_regular)
      d = std::max(d, r.fan_out);
  return d;
}

BuiltStructure build_structure_graph(const PermGroup& g, int d) {
  if (d < 1)
    throw std::invalid_argument("d must be positive");
  const int n = g.degree();
  BuiltStructure out;
  out.chain.levels = invariant_refinement(g, PPartition::trivial(n), PPartition::singletons(n));
  out.graph = structure_tree_from_chain(g, out.chain);
  out.certified_d = certified_degree(out.chain, g);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> inverse_map(const std::vector<int>& f, int n) {
  std::vector<int> inv(n, -1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (inv[f[i]] >= 0)
      throw std::logic_error("leaf map is not injective");
    inv[f[i]] = static_cast<int>(i);
  }
  if (std::find(inv.begin(), inv.end(), -1) != inv.end())
    throw std::logic_error("leaf map is not surjective");
  return inv;
}

NormalForm translate(const PermGroup& g, const PPartition& p, const std::vector<PStringFamily>& families,
                     const PartitionChain& chain) {
  auto tree = structure_tree_from_chain(g, chain);
  auto unf = unfold_and_act(tree);
  NormalForm nf;
  nf.f = unf.f;
  nf.source_gens = g.generators();
  const int m = unf.size();
  // classes of P* are the preimages of the classes of P, ids by minimum element
  std::vector<int> cls(m, -1);
  std::vector<int> remap(p.classes.size(), -1);
  for (int i = 0; i < m; ++i) {
    int c = p.class_of[nf.f[i]];
    if (c < 0)
      continue;
    if (remap[c] < 0) {
      remap[c] = static_cast<int>(nf.f_class.size());
      nf.f_class.push_back(c);
    }
    cls[i] = remap[c];
  }
  nf.partition = PPartition::from_class_of(cls);
  for (const auto& fam : families) {
    if (!(fam.partition() == p))
      throw std::invalid_argument("family is not over the given partition");
    std::vector<PString> ms;
    for (const auto& mem : fam.members()) {
      const auto& src = p.classes[mem.cls];
      int cs = remap[mem.cls];
      PString s{cs, {}};
      for (int a : nf.partition.classes[cs]) {
        auto pos = std::lower_bound(src.begin(), src.end(), nf.f[a]) - src.begin();
        s.letters.push_back(mem.letters[pos]);
      }
      ms.push_back(std::move(s));
    }
    nf.families.emplace_back(nf.partition, std::move(ms), false, fam.sentinel());
  }
  // f is a bijection here, so psi is faithful
  nf.group = PermGroup::with_order(m, unf.images, g.order());
  nf.chain = unf.chain();
  auto lvl = nf.chain.level_of(nf.partition);
  if (!lvl)
    throw std::logic_error("normalized partition does not lie on the normalized chain");
  nf.partition_level = *lvl;
  nf.certified_d = certified_degree(nf.chain, nf.group);
  return nf;
}

} // namespace

Perm NormalForm::phi(const Perm& g) const {
  auto inv = inverse_map(f, static_cast<int>(f.size()));
  std::vector<int> im(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    im[i] = inv[g[f[i]]];
  return Perm(std::move(im));
}

Perm NormalForm::pull_back(const Perm& g_star) const {
  auto inv = inverse_map(f, static_cast<int>(f.size()));
  std::vector<int> im(f.size());
  for (std::size_t a = 0; a < f.size(); ++a)
    im[a] = f[g_star[inv[a]]];
  return Perm(std::move(im));
}

IsoCoset NormalForm::pull_back(const IsoCoset& c) const {
  if (!c)
    return std::nullopt;
  std::vector<Perm> gens;
  for (const auto& s : c->group.generators())
    gens.push_back(pull_back(s));
  return Coset{PermGroup::with_order(static_cast<int>(f.size()), gens, c->group.order()), pull_back(c->rep)};
}

std::vector<int> NormalForm::preimage(const std::vector<int>& w) const {
  std::vector<char> in(f.size(), 0);
  for (int a : w)
    in[a] = 1;
  std::vector<int> r;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (in[f[i]])
      r.push_back(static_cast<int>(i));
  return r;
}

NormalizedInstance normalize_instance(const GsiInstance& inst, int d) {
  if (d < 1)
    throw std::invalid_argument("d must be positive");
  inst.validate();
  const auto& g = inst.group;
  const int n = g.degree();
  const auto& p = inst.partition;
  std::vector<int> lab(n);
  for (int a = 0; a < n; ++a)
    lab[a] = p.class_of[a] >= 0 ? p.class_of[a] : static_cast<int>(p.classes.size()) + a;
  PPartition full = canonical_partition(lab);
  PartitionChain chain;
  chain.levels = invariant_refinement(g, PPartition::trivial(n), full);
  auto lower = invariant_refinement(g, full, PPartition::singletons(n));
  chain.levels.insert(chain.levels.end(), lower.begin() + 1, lower.end());
  auto nf = translate(g, p, {inst.x, inst.y}, chain);
  NormalizedInstance out;
  out.instance = GsiInstance{nf.group, nf.partition, nf.families[0], nf.families[1], nf.chain};
  out.form = std::move(nf);
  return out;
}

NormalForm renormalize(const PermGroup& g, const PPartition& p, const std::vector<PStringFamily>& families,
                       const PartitionChain& chain, std::size_t j, int d) {
  if (j == 0 || j >= chain.size())
    throw std::invalid_argument("bad level index out of range");
  for (const auto& r : level_reports(chain, g, d).levels)
    if (r.level != j && !r.ok)
      throw std::invalid_argument("chain is not almost d-ary at level " + std::to_string(r.level));
  PartitionChain out;
  out.levels.assign(chain.levels.begin(), chain.levels.begin() + static_cast<std::ptrdiff_t>(j));
  auto mid = invariant_refinement(g, chain.levels[j - 1], chain.levels[j]);
  out.levels.insert(out.levels.end(), mid.begin() + 1, mid.end());
  out.levels.insert(out.levels.end(), chain.levels.begin() + static_cast<std::ptrdiff_t>(j) + 1, chain.levels.end());
  return translate(g, p, families, out);
}

std::vector<std::string> check_renormalize_properties(const PermGroup& g, const PPartition& p,
                                                      const std::vector<PStringFamily>& families,
                                                      const PartitionChain& chain, std::size_t j, int d,
                                                      const NormalForm& out, const std::vector<int>& window) {
  std::vector<std::string> bad;
  const int m = static_cast<int>(out.f.size());
  if (!out.chain.is_invariant(out.group) || !is_almost_d_ary(out.chain, out.group, d))
    bad.push_back("I");
  auto equivariant = [&] {
    for (const auto& s : g.generators()) {
      Perm ps = out.phi(s);
      for (int i = 0; i < m; ++i)
        if (out.f[ps[i]] != s[out.f[i]])
          return false;
    }
    return true;
  };
  if (!equivariant())
    bad.push_back("II");
  for (std::size_t c = 0; c < out.partition.classes.size(); ++c) {
    std::vector<int> img;
    for (int a : out.partition.classes[c])
      img.push_back(out.f[a]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (img != p.classes[out.f_class[c]]) {
      bad.push_back("III");
      break;
    }
  }
  {
    const int e = funcnorm(d);
    const auto& lv = chain.levels[j - 1];
    std::vector<int> count(p.classes.size(), 0);
    for (int c : out.f_class)
      ++count[c];
    for (std::size_t c = 0; c < p.classes.size(); ++c) {
      const auto& blk = lv.classes[lv.class_of[p.classes[c][0]]];
      PermGroup stab = setwise_stabilizer(g, blk);
      std::set<int> orbit_classes;
      for (int a : stab.orbit(p.classes[c][0]))
        orbit_classes.insert(p.class_of[a]);
      BigInt bound = boost::multiprecision::pow(BigInt(orbit_classes.size()), static_cast<unsigned>(e));
      if (BigInt(count[c]) > bound) {
        bad.push_back("IV");
        break;
      }
    }
  }
  for (std::size_t c = 0; c < out.partition.classes.size(); ++c)
    if (out.partition.classes[c].size() != p.classes[out.f_class[c]].size()) {
      bad.push_back("V");
      break;
    }
  if (!out.chain.level_of(out.partition))
    bad.push_back("VI");
  // translated families
  for (std::size_t k = 0; k < families.size(); ++k) {
    std::set<PString> expect;
    const auto& ms = families[k].members();
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t c = 0; c < out.partition.classes.size(); ++c)
        if (out.f_class[c] == ms[i].cls) {
          PString s{static_cast<int>(c), {}};
          for (int a : out.partition.classes[c])
            s.letters.push_back(families[k].letter(i, out.f[a]));
          expect.insert(s);
        }
    if (std::set<PString>(out.families[k].members().begin(), out.families[k].members().end()) != expect) {
      bad.push_back("IX");
      break;
    }
  }
  if (families.size() >= 2 && g.order() <= 5040) {
    bool ok = true;
    g.for_each_element([&](const Perm& e) {
      bool a = families[0].apply(e) == families[1];
      bool b = out.families[0].apply(out.phi(e)) == out.families[1];
      ok = a == b;
      return ok;
    });
    if (!ok)
      bad.push_back("VII");
  }
  if (!window.empty() && !families.empty() && window_automorphic(g, families[0], window) &&
      !window_automorphic(out.group, out.families[0], out.preimage(window)))
    bad.push_back("VIII");
  return bad;
}

} // namespace setiso
