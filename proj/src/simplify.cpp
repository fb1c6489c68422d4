#include "setiso/simplify.hpp"

#include "setiso/gsi.hpp"
#include "setiso/parallel.hpp"
#include "setiso/string_iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace setiso {

Perm SimplifiedClass::phi(const Perm& g_star) const {
  std::vector<int> im(lift.size());
  for (std::size_t a = 0; a < lift.size(); ++a)
    im[a] = to_original[g_star[lift[a]]];
  return Perm(std::move(im));
}

IsoCoset SimplifiedClass::pull_back(const IsoCoset& c, std::size_t i, std::size_t j) const {
  if (!c)
    return std::nullopt;
  std::vector<Perm> gens;
  for (const auto& s : c->group.generators())
    gens.push_back(phi(s));
  const Perm li = lambda[i].inverse();
  Perm rep = li * phi(c->rep) * lambda[j];
  std::vector<Perm> left;
  for (const auto& s : gens)
    left.push_back(li * s * lambda[i]);
  return Coset{PermGroup(static_cast<int>(lift.size()), left), rep};
}

namespace {

void check_preconditions(const PermGroup& g, const PPartition& p, const std::vector<PStringFamily>& families,
                         const std::vector<int>& window, const PartitionChain& chain, int d) {
  if (families.empty())
    throw std::invalid_argument("simplify: no families");
  if (p.n != g.degree() || !p.is_invariant(g))
    throw std::invalid_argument("simplify: partition is not invariant");
  for (const auto& f : families)
    if (!(f.partition() == p))
      throw std::invalid_argument("simplify: families use different partitions");
  if (!g.is_invariant(window))
    throw std::invalid_argument("simplify: window is not invariant");
  chain.validate();
  if (chain.n() != g.degree() || !chain.is_invariant(g))
    throw std::invalid_argument("simplify: chain is not invariant");
  if (!chain.level_of(p))
    throw std::invalid_argument("simplify: partition does not lie on the chain");
  if (!is_almost_d_ary(chain, g, d))
    throw std::invalid_argument("simplify: chain is not almost d-ary");
}

std::vector<int> on_support(const PPartition& p, const std::vector<int>& w) {
  std::vector<int> out;
  for (int a : w)
    if (p.class_of[a] >= 0)
      out.push_back(a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Image of a member under g (ginv = g^-1).
PString image_member(const PPartition& part, const PString& x, const Perm& g, const Perm& ginv) {
  PString out;
  out.cls = part.class_of[g[part.classes[x.cls][0]]];
  const auto& src = part.classes[x.cls];
  for (int b : part.classes[out.cls]) {
    int a = ginv[b];
    auto it = std::lower_bound(src.begin(), src.end(), a);
    out.letters.push_back(x.letters[it - src.begin()]);
  }
  return out;
}

} // namespace

SimplifyResult simplify_on_window(const PermGroup& g, const PPartition& p, const std::vector<PStringFamily>& families,
                                  const std::vector<int>& window_in, const PartitionChain& chain, int d) {
  check_preconditions(g, p, families, window_in, chain, d);
  const int n = g.degree();
  const auto w = on_support(p, window_in);

  std::optional<PStringFamily> xw;
  if (!w.empty()) {
    xw = restrict_family(families[0], w);
    for (std::size_t i = 0; i < families.size(); ++i) {
      if (i > 0 && !(restrict_family(families[i], w) == *xw))
        throw std::invalid_argument("simplify: families differ on the window");
      if (!window_automorphic(g, families[i], w))
        throw std::invalid_argument("simplify: group is not automorphic on the window");
    }
  }

  SimplifyResult res;
  if (!xw || xw->is_simple()) {
    res.identity = true;
    SimplifiedClass c;
    c.members.resize(families.size());
    std::iota(c.members.begin(), c.members.end(), std::size_t{0});
    c.n = n;
    c.group = g;
    c.partition = p;
    c.window = window_in;
    std::sort(c.window.begin(), c.window.end());
    c.chain = chain;
    c.families = families;
    c.lambda.assign(families.size(), Perm::identity(n));
    c.to_original.resize(n);
    std::iota(c.to_original.begin(), c.to_original.end(), 0);
    c.lift = c.to_original;
    c.certified_d = d;
    res.classes.push_back(std::move(c));
    return res;
  }

  // Step 1: points (alpha, z) with z a restriction of a member of alpha's class.
  const int k = static_cast<int>(p.classes.size());
  const auto& wpart = xw->partition();
  std::vector<std::vector<int>> zs(k); // class -> member indices of xw, or {-1} for epsilon
  for (std::size_t m = 0; m < xw->members().size(); ++m) {
    int c = p.class_of[wpart.classes[xw->members()[m].cls][0]];
    zs[c].push_back(static_cast<int>(m));
  }
  for (auto& z : zs)
    if (z.empty())
      z.push_back(-1);

  std::vector<int> proj, zof, cls_of_point, class_prime;
  std::vector<std::vector<int>> copy_start(k); // class, local z -> first point of that copy
  std::vector<int> up(n, -1);
  for (int c = 0; c < k; ++c)
    for (std::size_t zi = 0; zi < zs[c].size(); ++zi) {
      copy_start[c].push_back(static_cast<int>(proj.size()));
      const int cid = static_cast<int>(class_prime.size());
      class_prime.push_back(c);
      for (int a : p.classes[c]) {
        if (up[a] < 0)
          up[a] = static_cast<int>(proj.size());
        proj.push_back(a);
        zof.push_back(static_cast<int>(zi));
        cls_of_point.push_back(cid);
      }
    }
  for (int a = 0; a < n; ++a)
    if (p.class_of[a] < 0) {
      up[a] = static_cast<int>(proj.size());
      proj.push_back(a);
      zof.push_back(-1);
      cls_of_point.push_back(-1);
    }
  const int n2 = static_cast<int>(proj.size());
  PPartition p2 = PPartition::from_class_of(cls_of_point);

  auto index_in_class = [&](int a) {
    const auto& cl = p.classes[p.class_of[a]];
    return static_cast<int>(std::lower_bound(cl.begin(), cl.end(), a) - cl.begin());
  };
  auto point_of = [&](int a, int zi) {
    if (p.class_of[a] < 0)
      return up[a];
    return copy_start[p.class_of[a]][zi] + index_in_class(a);
  };

  std::map<PString, int> xw_index;
  for (std::size_t m = 0; m < xw->members().size(); ++m)
    xw_index.emplace(xw->members()[m], static_cast<int>(m));
  std::vector<int> local_z(xw->members().size());
  for (int c = 0; c < k; ++c)
    for (std::size_t zi = 0; zi < zs[c].size(); ++zi)
      if (zs[c][zi] >= 0)
        local_z[zs[c][zi]] = static_cast<int>(zi);

  auto lift_perm = [&](const Perm& s) {
    const Perm sinv = s.inverse();
    std::vector<int> im(n2);
    for (int u = 0; u < n2; ++u) {
      const int a = proj[u];
      if (p.class_of[a] < 0 || zs[p.class_of[a]][zof[u]] < 0) {
        im[u] = point_of(s[a], 0);
        continue;
      }
      const auto& z = xw->members()[zs[p.class_of[a]][zof[u]]];
      int zimg = xw_index.at(image_member(wpart, z, s, sinv));
      im[u] = point_of(s[a], local_z[zimg]);
    }
    return Perm(std::move(im));
  };
  std::vector<Perm> gens2;
  for (const auto& s : g.generators())
    gens2.push_back(lift_perm(s));
  PermGroup g2 = PermGroup::with_order(n2, gens2, g.order()); // faithful lift
  auto project = [&](const Perm& s2) {
    std::vector<int> im(n);
    for (int a = 0; a < n; ++a)
      im[a] = proj[s2[up[a]]];
    return Perm(std::move(im));
  };

  const std::optional<int> sentinel = families[0].sentinel();
  std::vector<PStringFamily> fam2;
  for (const auto& f : families) {
    std::vector<PString> ms;
    for (const auto& x : f.members()) {
      const auto& cl = p.classes[x.cls];
      int zi = 0;
      if (zs[x.cls][0] >= 0) {
        PString r{-1, {}};
        for (std::size_t t = 0; t < cl.size(); ++t)
          if (std::binary_search(w.begin(), w.end(), cl[t])) {
            r.cls = wpart.class_of[cl[t]];
            r.letters.push_back(x.letters[t]);
          }
        zi = local_z[xw_index.at(r)];
      }
      ms.push_back(PString{p2.class_of[copy_start[x.cls][zi]], x.letters});
    }
    fam2.emplace_back(p2, std::move(ms), false, sentinel);
  }
  std::vector<int> wall = window_in;
  std::sort(wall.begin(), wall.end());
  std::vector<int> w2;
  for (int u = 0; u < n2; ++u)
    if (std::binary_search(wall.begin(), wall.end(), proj[u]))
      w2.push_back(u);

  // Chain on Omega': coarse levels ignore z, P' follows P's level, finer levels keep z.
  const std::size_t lp = *chain.level_of(p);
  PartitionChain chain2;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    const auto& lv = chain.levels[j];
    std::vector<int> lab(n2);
    for (int u = 0; u < n2; ++u) {
      const int b = lv.class_of[proj[u]];
      lab[u] = j <= lp || zof[u] < 0 ? b * (n2 + 1) : b * (n2 + 1) + 1 + zof[u];
    }
    chain2.levels.push_back(canonical_partition(lab));
    if (j == lp) {
      for (int u = 0; u < n2; ++u)
        lab[u] = cls_of_point[u] >= 0 ? -1 - cls_of_point[u] : lv.class_of[proj[u]];
      chain2.levels.push_back(canonical_partition(lab));
    }
  }
  const std::size_t bad = lp + 1;

  // Step 2: occupancy profile over the classes of P', then group families by it.
  const int k2 = static_cast<int>(p2.classes.size());
  std::vector<int> outside;
  for (int u = 0; u < n2; ++u)
    if (cls_of_point[u] >= 0 && !std::binary_search(w2.begin(), w2.end(), u))
      outside.push_back(u);
  std::map<std::pair<int, int>, int> dict;
  std::vector<ColoredString> profile;
  for (const auto& f : fam2) {
    std::vector<int> out_mult(k2, -1);
    if (!outside.empty()) {
      auto r = restrict_family(f, outside);
      for (int c = 0; c < k2; ++c)
        for (int u : p2.classes[c])
          if (!std::binary_search(w2.begin(), w2.end(), u)) {
            out_mult[c] = r.multiplicity(r.partition().class_of[u]);
            break;
          }
    }
    ColoredString s(k2);
    for (int c = 0; c < k2; ++c)
      s[c] = dict.emplace(std::make_pair(f.multiplicity(c), out_mult[c]), static_cast<int>(dict.size())).first->second;
    profile.push_back(std::move(s));
  }

  GroupHom on_classes(g2, k2, [&](const Perm& s) {
    std::vector<int> im(k2);
    for (int c = 0; c < k2; ++c)
      im[c] = p2.class_of[s[p2.classes[c][0]]];
    return Perm(std::move(im));
  });
  HomTools tools = hom_tools(on_classes);
  std::vector<int> all(k2);
  std::iota(all.begin(), all.end(), 0);

  struct Group {
    std::vector<std::size_t> members;
    std::vector<Perm> lambda2; // on Omega'
    PermGroup aut;
  };
  std::vector<Group> groups;
  std::vector<ColoredString> sorted_profile;
  for (std::size_t i = 0; i < fam2.size(); ++i) {
    auto sp = profile[i];
    std::sort(sp.begin(), sp.end());
    bool placed = false;
    for (std::size_t gi = 0; gi < groups.size() && !placed; ++gi) {
      if (sorted_profile[gi] != sp)
        continue;
      const std::size_t r = groups[gi].members[0];
      Budget b;
      auto iso = pullback(tools, string_iso(tools.image, profile[r], profile[i], all, b));
      if (iso) {
        groups[gi].members.push_back(i);
        groups[gi].lambda2.push_back(iso->rep);
        placed = true;
      }
    }
    if (!placed) {
      Budget b;
      auto aut = pullback(tools, string_iso(tools.image, profile[i], profile[i], all, b));
      groups.push_back(Group{{i}, {Perm::identity(n2)}, aut->group});
      sorted_profile.push_back(std::move(sp));
    }
  }

  // Step 3: renormalize each group at the level of P'.
  res.classes.resize(groups.size());
  parallel_for(groups.size(), [&](std::size_t gi) {
    const auto& grp = groups[gi];
    std::vector<PStringFamily> fx;
    for (std::size_t t = 0; t < grp.members.size(); ++t)
      fx.push_back(t == 0 ? fam2[grp.members[t]] : fam2[grp.members[t]].apply(grp.lambda2[t].inverse()));
    NormalForm nf = renormalize(grp.aut, p2, fx, chain2, bad, d);
    SimplifiedClass c;
    c.members = grp.members;
    c.n = static_cast<int>(nf.f.size());
    c.group = nf.group;
    c.partition = nf.partition;
    c.window = nf.preimage(w2);
    c.chain = nf.chain;
    c.families = nf.families;
    for (const auto& l : grp.lambda2)
      c.lambda.push_back(project(l));
    c.to_original.resize(c.n);
    std::vector<int> first(n2, -1);
    for (int a = 0; a < c.n; ++a) {
      c.to_original[a] = proj[nf.f[a]];
      if (first[nf.f[a]] < 0)
        first[nf.f[a]] = a;
    }
    c.lift.resize(n);
    for (int a = 0; a < n; ++a)
      c.lift[a] = first[up[a]];
    c.certified_d = nf.certified_d;
    res.classes[gi] = std::move(c);
  });
  return res;
}

} // namespace setiso
