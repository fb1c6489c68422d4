#include "setiso/gsi.hpp"

#include "setiso/graph.hpp"
#include "setiso/string_iso.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace setiso {

namespace {

std::vector<int> on_support(const PPartition& p, std::vector<int> w) {
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  std::vector<int> r;
  for (int a : w) {
    if (a < 0 || a >= p.n)
      throw std::invalid_argument("window point out of range");
    if (p.class_of[a] >= 0)
      r.push_back(a);
  }
  return r;
}

std::vector<std::vector<int>> orbits_within(const PermGroup& g, const std::vector<int>& w) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(g.degree(), 0);
  for (int a : w) {
    if (seen[a])
      continue;
    auto orb = g.orbit(a);
    std::sort(orb.begin(), orb.end());
    for (int b : orb)
      seen[b] = 1;
    out.push_back(std::move(orb));
  }
  return out;
}

std::vector<std::pair<std::size_t, int>> profile(const PStringFamily& f) {
  std::vector<std::pair<std::size_t, int>> r;
  const auto& cls = f.partition().classes;
  for (std::size_t i = 0; i < cls.size(); ++i)
    r.emplace_back(cls[i].size(), f.multiplicity(static_cast<int>(i)));
  std::sort(r.begin(), r.end());
  return r;
}

PString member_image(const PStringFamily& f, const PString& m, const Perm& s) {
  const auto& part = f.partition();
  const auto& cl = part.classes[m.cls];
  int q = part.class_of[s[cl[0]]];
  const auto& target = part.classes[q];
  PString r{q, std::vector<int>(cl.size())};
  for (std::size_t i = 0; i < cl.size(); ++i) {
    auto it = std::lower_bound(target.begin(), target.end(), s[cl[i]]);
    r.letters[it - target.begin()] = m.letters[i];
  }
  return r;
}

int member_index(const PStringFamily& f, const PString& m) {
  const auto& ms = f.members();
  auto it = std::lower_bound(ms.begin(), ms.end(), m);
  if (it == ms.end() || !(*it == m))
    return -1;
  return static_cast<int>(it - ms.begin());
}

// Letters of a simple family per point; -1 on classes without a member.
ColoredString point_letters(const PStringFamily& f, int n) {
  ColoredString s(n, -2);
  const auto& part = f.partition();
  for (int a = 0; a < n; ++a)
    if (part.class_of[a] >= 0)
      s[a] = -1;
  for (const auto& m : f.members()) {
    const auto& cl = part.classes[m.cls];
    for (std::size_t i = 0; i < cl.size(); ++i)
      s[cl[i]] = m.letters[i];
  }
  return s;
}

IsoCoset shifted(IsoCoset r, const Perm& rep) {
  if (!r)
    return std::nullopt;
  return Coset{std::move(r->group), r->rep * rep};
}

IsoCoset solve(const PermGroup& g, const PStringFamily& x, const PStringFamily& y, const std::vector<int>& w,
               Budget& budget);

IsoCoset on_coset(const Coset& c, const PStringFamily& x, const PStringFamily& y, const std::vector<int>& w,
                  Budget& budget) {
  if (c.rep.is_identity())
    return solve(c.group, x, y, w, budget);
  return shifted(solve(c.group, x, y.apply(c.rep.inverse()), w, budget), c.rep);
}

IsoCoset balance_impl(const Coset& c, const PStringFamily& x, const PStringFamily& y, const std::vector<int>& w,
                      Budget& budget) {
  Coset cur = c;
  while (true) {
    budget.charge();
    bool changed = false;
    for (const auto& a : orbits_within(cur.group, w)) {
      PStringFamily ycur = cur.rep.is_identity() ? y : y.apply(cur.rep.inverse());
      auto xa = restrict_family(x, a);
      auto ya = restrict_family(ycur, a);
      if (xa.is_balanced() && ya.is_balanced()) {
        if (xa.multiplicities() != ya.multiplicities())
          return std::nullopt;
        continue;
      }
      // occupancy strings over the classes of P[A]
      const auto& part = xa.partition();
      const int k = static_cast<int>(part.classes.size());
      std::vector<Perm> imgs;
      for (const auto& s : cur.group.generators()) {
        std::vector<int> im(k);
        for (int i = 0; i < k; ++i)
          im[i] = part.class_of[s[part.classes[i][0]]];
        imgs.emplace_back(std::move(im));
      }
      GroupHom h(cur.group, k, imgs);
      HomTools tools = hom_tools(h);
      std::vector<int> all(k);
      for (int i = 0; i < k; ++i)
        all[i] = i;
      auto r = string_iso(tools.image, xa.multiplicities(), ya.multiplicities(), all, budget);
      auto back = pullback(tools, r);
      if (!back)
        return std::nullopt;
      cur = Coset{back->group, back->rep * cur.rep};
      changed = true;
    }
    if (!changed)
      return cur;
  }
}

IsoCoset combine_impl(const Coset& c, const PStringFamily& x, const PStringFamily& y, std::vector<int> w1,
                      std::vector<int> w2, Budget& budget) {
  const auto& part = x.partition();
  w1 = on_support(part, std::move(w1));
  w2 = on_support(part, std::move(w2));
  {
    std::vector<int> d;
    std::set_difference(w2.begin(), w2.end(), w1.begin(), w1.end(), std::back_inserter(d));
    w2 = std::move(d);
  }
  if (!window_automorphic(c.group, x, w1) || !window_automorphic(c.group, x, w2))
    throw std::invalid_argument("combine_windows: group does not act as automorphisms on a window");
  PStringFamily yc = c.rep.is_identity() ? y : y.apply(c.rep.inverse());
  if (w1.empty() && w2.empty())
    return c;
  if (w1.empty() || w2.empty()) {
    const auto& w = w1.empty() ? w2 : w1;
    if (restrict_family(x, w) == restrict_family(yc, w))
      return c;
    return std::nullopt;
  }
  auto x1 = restrict_family(x, w1), x2 = restrict_family(x, w2);
  if (!(x1 == restrict_family(yc, w1)) || !(x2 == restrict_family(yc, w2)))
    return std::nullopt;
  const int m1 = static_cast<int>(x1.size());
  const int nv = m1 + static_cast<int>(x2.size());
  if (nv == 0)
    return c;

  std::vector<int> w;
  std::set_union(w1.begin(), w1.end(), w2.begin(), w2.end(), std::back_inserter(w));
  std::vector<char> in1(part.n, 0);
  for (int a : w1)
    in1[a] = 1;

  auto build = [&](const PStringFamily& f) {
    ColoredGraph gr(nv);
    for (int v = m1; v < nv; ++v)
      gr.set_vertex_color(v, 1);
    auto fw = restrict_family(f, w);
    const auto& fp = fw.partition();
    for (const auto& m : fw.members()) {
      const auto& cl = fp.classes[m.cls];
      PString s1{-1, {}}, s2{-1, {}};
      for (std::size_t i = 0; i < cl.size(); ++i) {
        PString& s = in1[cl[i]] ? s1 : s2;
        const PStringFamily& xf = in1[cl[i]] ? x1 : x2;
        if (s.cls < 0)
          s.cls = xf.partition().class_of[cl[i]];
        s.letters.push_back(m.letters[i]);
      }
      if (s1.cls < 0 || s2.cls < 0)
        continue;
      int u = member_index(x1, s1), v = member_index(x2, s2);
      if (u < 0 || v < 0)
        throw std::logic_error("combine_windows: restriction member missing");
      if (!gr.adjacent(u, m1 + v))
        gr.add_edge(u, m1 + v);
    }
    return gr;
  };
  ColoredGraph gx = build(x), gy = build(yc);

  std::vector<Perm> imgs;
  for (const auto& s : c.group.generators()) {
    std::vector<int> im(nv);
    for (int i = 0; i < m1; ++i)
      im[i] = member_index(x1, member_image(x1, x1.members()[i], s));
    for (int i = m1; i < nv; ++i)
      im[i] = m1 + member_index(x2, member_image(x2, x2.members()[i - m1], s));
    imgs.emplace_back(std::move(im));
  }
  GroupHom h(c.group, nv, imgs);
  HomTools tools = hom_tools(h);
  auto r = graph_iso_under_group(gx, gy, tools.image, budget);
  return shifted(pullback(tools, r), c.rep);
}

IsoCoset solve(const PermGroup& g, const PStringFamily& x, const PStringFamily& y, const std::vector<int>& w,
               Budget& budget) {
  budget.charge();
  const int n = g.degree();
  const Perm id = Perm::identity(n);
  if (w.empty())
    return Coset{g, id};
  auto xw = restrict_family(x, w);
  auto yw = restrict_family(y, w);
  if (xw.size() != yw.size() || profile(xw) != profile(yw))
    return std::nullopt;
  if (g.fixes_pointwise(w)) {
    if (xw == yw)
      return Coset{g, id};
    return std::nullopt;
  }
  if (g.order() <= kEnumerationCutover) {
    CosetBuilder cb(n);
    g.for_each_element([&](const Perm& p) {
      if (xw.apply(p) == yw)
        cb.add_element(p);
      return true;
    });
    return cb.result();
  }

  auto orbs = orbits_within(g, w);
  if (orbs.size() > 1) {
    auto c = solve(g, x, y, orbs[0], budget);
    if (!c)
      return std::nullopt;
    std::vector<int> u = orbs[0];
    for (std::size_t i = 1; i < orbs.size(); ++i) {
      auto ci = on_coset(*c, x, y, orbs[i], budget);
      if (!ci)
        return std::nullopt;
      c = combine_impl(*ci, x, y, u, orbs[i], budget);
      if (!c)
        return std::nullopt;
      std::vector<int> merged;
      std::set_union(u.begin(), u.end(), orbs[i].begin(), orbs[i].end(), std::back_inserter(merged));
      u = std::move(merged);
    }
    return c;
  }

  auto b = balance_impl(Coset{g, id}, x, y, w, budget);
  if (!b)
    return std::nullopt;
  if (b->group.order() < g.order())
    return on_coset(*b, x, y, w, budget);
  const Perm shift = b->rep;
  PStringFamily ys = shift.is_identity() ? y : y.apply(shift.inverse());
  IsoCoset r;
  if (xw.is_simple()) {
    auto ysw = restrict_family(ys, w);
    r = string_iso(g, point_letters(xw, n), point_letters(ysw, n), w, budget);
  } else {
    r = split_over_blocks(g, w, [&](const PermGroup& kernel, const Perm& d) {
      return solve(kernel, x, ys.apply(d.inverse()), w, budget);
    });
  }
  return shifted(std::move(r), shift);
}

} // namespace

void GsiInstance::validate() const {
  if (group.degree() != partition.n)
    throw std::invalid_argument("group degree differs from the domain size");
  if (!partition.is_invariant(group))
    throw std::invalid_argument("partition is not invariant under the group");
  if (!(x.partition() == partition) || !(y.partition() == partition))
    throw std::invalid_argument("family is not over the instance partition");
  if (chain) {
    chain->validate();
    if (chain->n() != partition.n)
      throw std::invalid_argument("chain domain differs from the instance domain");
    if (!chain->is_invariant(group))
      throw std::invalid_argument("chain is not invariant under the group");
    if (!chain->level_of(partition))
      throw std::invalid_argument("partition does not lie on the chain");
  }
}

bool window_automorphic(const PermGroup& g, const PStringFamily& x, const std::vector<int>& w) {
  auto ww = on_support(x.partition(), w);
  if (ww.empty())
    return true;
  if (!g.is_invariant(ww))
    return false;
  auto xw = restrict_family(x, ww);
  for (const auto& s : g.generators())
    if (!(xw.apply(s) == xw))
      return false;
  return true;
}

WindowState WindowState::check(const PermGroup& g, const PStringFamily& x, const PStringFamily& y,
                               std::vector<int> window) {
  WindowState st;
  std::sort(window.begin(), window.end());
  window.erase(std::unique(window.begin(), window.end()), window.end());
  st.window = window;
  auto ww = on_support(x.partition(), window);
  st.aut_on_window = window_automorphic(g, x, ww);
  if (ww.empty()) {
    st.equal_on_window = true;
    st.simple_on_window = true;
  } else {
    auto xw = restrict_family(x, ww);
    st.equal_on_window = xw == restrict_family(y, ww);
    st.simple_on_window = xw.is_simple();
  }
  return st;
}

bool WindowState::recheck(const PermGroup& g, const PStringFamily& x, const PStringFamily& y) const {
  auto fresh = check(g, x, y, window);
  return fresh.aut_on_window == aut_on_window && fresh.equal_on_window == equal_on_window &&
         fresh.simple_on_window == simple_on_window;
}

IsoCoset balance_orbits(const Coset& c, const PStringFamily& x, const PStringFamily& y, const std::vector<int>& w,
                        Budget& budget) {
  auto ww = on_support(x.partition(), w);
  if (!c.group.is_invariant(ww))
    throw std::invalid_argument("window is not invariant under the group");
  return balance_impl(c, x, y, ww, budget);
}

IsoCoset balance_orbits(const GsiInstance& inst, Budget& budget) {
  inst.validate();
  const int n = inst.group.degree();
  return balance_impl(Coset{inst.group, Perm::identity(n)}, inst.x, inst.y, inst.partition.support(), budget);
}

IsoCoset balance_orbits(const GsiInstance& inst) {
  Budget b;
  return balance_orbits(inst, b);
}

IsoCoset combine_windows(const Coset& c, const PStringFamily& x, const PStringFamily& y, const std::vector<int>& w1,
                         const std::vector<int>& w2, Budget& budget) {
  return combine_impl(c, x, y, w1, w2, budget);
}

IsoCoset combine_windows(const Coset& c, const PStringFamily& x, const PStringFamily& y, const std::vector<int>& w1,
                         const std::vector<int>& w2) {
  Budget b;
  return combine_impl(c, x, y, w1, w2, b);
}

IsoCoset family_iso_on_window(const Coset& c, const PStringFamily& x, const PStringFamily& y,
                              const std::vector<int>& w, Budget& budget) {
  auto ww = on_support(x.partition(), w);
  if (!c.group.is_invariant(ww))
    throw std::invalid_argument("window is not invariant under the group");
  return on_coset(c, x, y, ww, budget);
}

IsoCoset generalized_string_iso(const GsiInstance& inst, Budget& budget) {
  inst.validate();
  if (inst.x.size() != inst.y.size())
    return std::nullopt;
  auto r = solve(inst.group, inst.x, inst.y, inst.partition.support(), budget);
  if (r && r->group.contains(r->rep.inverse()))
    r->rep = Perm::identity(inst.group.degree());
  return r;
}

IsoCoset generalized_string_iso(const GsiInstance& inst, const GsiConfig& cfg) {
  Budget b(cfg.budget);
  return generalized_string_iso(inst, b);
}

IsoCoset hypergraph_iso(const PermGroup& g, const Hypergraph& x, const Hypergraph& y, Budget& budget) {
  if (x.n != g.degree() || y.n != g.degree())
    throw std::invalid_argument("hypergraph size differs from group degree");
  if (x.edges.size() != y.edges.size())
    return std::nullopt;
  GsiInstance inst{g, PPartition::trivial(g.degree()), hypergraph_to_family(x), hypergraph_to_family(y), {}};
  return generalized_string_iso(inst, budget);
}

} // namespace setiso
