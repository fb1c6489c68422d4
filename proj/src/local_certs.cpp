#include "setiso/local_certs.hpp"

#include "setiso/gsi.hpp"
#include "setiso/normal_forms.hpp"
#include "setiso/simplify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace setiso {

std::optional<GiantRep> find_giant_rep(const PermGroup& g) {
  const int n = g.degree();
  if (n == 0 || static_cast<int>(g.orbit(0).size()) != n)
    throw std::invalid_argument("find_giant_rep: group is not transitive");
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  auto blocks = minimal_block_system(g, all);
  const int k = static_cast<int>(blocks.size());
  if (k < kGiantThreshold)
    return std::nullopt;
  GroupHom h = block_action(g, blocks);
  std::vector<Perm> imgs;
  for (const auto& s : g.generators())
    imgs.push_back(h.apply(s));
  std::vector<int> pts(k);
  std::iota(pts.begin(), pts.end(), 0);
  Giant flavor = is_giant(PermGroup(k, imgs), pts);
  if (flavor == Giant::None)
    return std::nullopt;
  return GiantRep{std::move(h), k, flavor, std::move(blocks)};
}

GiantRep make_giant_rep(GroupHom hom) {
  const int k = hom.target_degree();
  std::vector<Perm> imgs;
  for (const auto& s : hom.source().generators())
    imgs.push_back(hom.apply(s));
  std::vector<int> pts(k);
  std::iota(pts.begin(), pts.end(), 0);
  Giant flavor = is_giant(PermGroup(k, imgs), pts);
  if (flavor == Giant::None)
    throw std::invalid_argument("make_giant_rep: image is not a giant");
  return GiantRep{std::move(hom), k, flavor, {}};
}

namespace {

using Map = std::function<Perm(const Perm&)>;

bool image_is_giant(const std::vector<Perm>& gens, const Map& map, int k) {
  std::vector<Perm> imgs;
  for (const auto& s : gens)
    imgs.push_back(map(s));
  std::vector<int> pts(k);
  std::iota(pts.begin(), pts.end(), 0);
  return is_giant(PermGroup(k, imgs), pts) != Giant::None;
}

std::vector<int> affected_by(const PermGroup& delta, const Map& map, int k) {
  std::vector<int> out;
  for (const auto& o : delta.orbits()) {
    PermGroup stab = pointwise_stabilizer(delta, {o[0]});
    if (!image_is_giant(stab.generators(), map, k))
      out.insert(out.end(), o.begin(), o.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> on_support(const PPartition& p, const std::vector<int>& w) {
  std::vector<int> out;
  for (int a : w)
    if (p.class_of[a] >= 0)
      out.push_back(a);
  return out;
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// phi(g) as a map between positions of t (g must stabilise t).
Perm on_positions(const Perm& phig, const std::vector<int>& t) {
  std::vector<int> im(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    im[i] = static_cast<int>(std::lower_bound(t.begin(), t.end(), phig[t[i]]) - t.begin());
  return Perm(std::move(im));
}

// Element of the image group carrying t1 onto t2.
Perm carry(const PermGroup& image, const std::vector<int>& t1, const std::vector<int>& t2) {
  const int k = image.degree();
  std::vector<int> rest1, rest2;
  for (int a = 0; a < k; ++a) {
    if (!std::binary_search(t1.begin(), t1.end(), a))
      rest1.push_back(a);
    if (!std::binary_search(t2.begin(), t2.end(), a))
      rest2.push_back(a);
  }
  std::vector<int> im(k);
  for (std::size_t i = 0; i < t1.size(); ++i)
    im[t1[i]] = t2[i];
  for (std::size_t i = 0; i < rest1.size(); ++i)
    im[rest1[i]] = rest2[i];
  Perm s(im);
  if (image.contains(s))
    return s;
  // odd permutation under an alternating image: swap two targets on one side
  if (rest2.size() >= 2)
    std::swap(im[rest1[0]], im[rest1[1]]);
  else if (t2.size() >= 2)
    std::swap(im[t1[0]], im[t1[1]]);
  Perm s2(im);
  if (!image.contains(s2))
    throw std::invalid_argument("local certificates: no group element maps t1 onto t2");
  return s2;
}

} // namespace

std::vector<int> affected_points(const PermGroup& delta, const GiantRep& phi) {
  return affected_by(delta, [&](const Perm& s) { return phi.apply(s); }, phi.k);
}

bool Certificate::admits(const std::vector<int>& b) const {
  if (kind != Kind::NonFull || b.size() != t1.size())
    return false;
  std::vector<int> l(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto it = std::find(bijection.begin(), bijection.end(), b[i]);
    if (it == bijection.end())
      return false;
    l[i] = static_cast<int>(it - bijection.begin());
  }
  std::vector<int> seen = l;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    return false;
  return lambda.contains(Perm(l));
}

PartitionChain chain_through_partition(const PermGroup& g, const PPartition& p) {
  const int n = g.degree();
  std::vector<int> lab(n);
  for (int a = 0; a < n; ++a)
    lab[a] = p.class_of[a] >= 0 ? p.class_of[a] : static_cast<int>(p.classes.size()) + a;
  PPartition full = canonical_partition(lab);
  PartitionChain chain;
  chain.levels = invariant_refinement(g, PPartition::trivial(n), full);
  auto lower = invariant_refinement(g, full, PPartition::singletons(n));
  chain.levels.insert(chain.levels.end(), lower.begin() + 1, lower.end());
  return chain;
}

Certificate local_certificate_pair(const PermGroup& g, const PPartition& p, const PStringFamily& x,
                                   const PStringFamily& y, const GiantRep& phi, const std::vector<int>& t1_in,
                                   const std::vector<int>& t2_in, const std::optional<PartitionChain>& chain_in,
                                   const LocalCertConfig& cfg) {
  const int n = g.degree();
  if (phi.k < kGiantThreshold)
    throw std::invalid_argument("local certificates: giant representation below 5 points");
  if (phi.hom.source().degree() != n)
    throw std::invalid_argument("local certificates: representation is defined on another domain");
  const auto t1 = sorted_unique(t1_in), t2 = sorted_unique(t2_in);
  if (t1.size() != t1_in.size() || t2.size() != t2_in.size() || t1.size() != t2.size() || t1.empty() ||
      t1.back() >= phi.k || t2.back() >= phi.k || t1.front() < 0 || t2.front() < 0)
    throw std::invalid_argument("local certificates: test sets must be equal-size subsets of [k]");
  if (!(x.partition() == p) || !(y.partition() == p) || !p.is_invariant(g))
    throw std::invalid_argument("local certificates: families must share an invariant partition");
  PartitionChain chain = chain_in ? *chain_in : chain_through_partition(g, p);
  chain.validate();
  if (!chain.is_invariant(g) || !chain.level_of(p))
    throw std::invalid_argument("local certificates: partition does not lie on an invariant chain");
  int d = cfg.d > 0 ? cfg.d : certified_degree(chain, g);
  if (!is_almost_d_ary(chain, g, d))
    throw std::invalid_argument("local certificates: chain is not almost d-ary");
  Budget budget(cfg.budget);

  Certificate cert;
  cert.t1 = t1;
  cert.t2 = t2;
  const int t = static_cast<int>(t1.size());

  HomTools tools = hom_tools(phi.hom);
  std::vector<Perm> gens = tools.kernel.generators();
  const PermGroup image_stab = setwise_stabilizer(tools.image, t1);
  for (const auto& s : image_stab.generators())
    gens.push_back(*tools.preimage(s));
  PermGroup lam(n, gens); // Gamma_T with T = t1
  Perm lam1 = Perm::identity(n);
  Perm lam2 = *tools.preimage(carry(tools.image, t1, t2));

  // current domain and the maps back to Omega
  std::vector<int> to_orig(n), lift(n);
  std::iota(to_orig.begin(), to_orig.end(), 0);
  lift = to_orig;
  PPartition part = p;
  PStringFamily z1 = x, z2 = y.apply(lam2.inverse());
  std::vector<int> w;

  auto tau = [&](const Perm& s) {
    std::vector<int> im(n);
    for (int a = 0; a < n; ++a)
      im[a] = to_orig[s[lift[a]]];
    return Perm(std::move(im));
  };
  auto psi = [&](const Perm& s) { return on_positions(phi.apply(tau(s)), t1); };

  auto non_full = [&] {
    cert.kind = Certificate::Kind::NonFull;
    const Perm l1i = lam1.inverse();
    std::vector<Perm> gs;
    for (const auto& s : lam.generators())
      gs.push_back(on_positions(phi.apply(l1i * tau(s) * lam1), t1));
    cert.lambda = PermGroup(t, gs);
    Perm b = phi.apply(l1i * lam2);
    cert.bijection.clear();
    for (int a : t1)
      cert.bijection.push_back(b[a]);
    return cert;
  };
  auto empty = [&] {
    cert.kind = Certificate::Kind::Empty;
    return cert;
  };

  for (;; ++cert.iterations) {
    const int m = static_cast<int>(to_orig.size());
    if (cert.iterations > static_cast<std::size_t>(m) + 1)
      throw std::runtime_error("local certificates: iteration cap exceeded");
    if (!image_is_giant(lam.generators(), psi, t))
      return non_full();
    std::vector<int> wp = affected_by(lam, psi, t);
    if (std::includes(w.begin(), w.end(), wp.begin(), wp.end())) {
      std::vector<int> rest;
      for (int a = 0; a < m; ++a)
        if (!std::binary_search(w.begin(), w.end(), a))
          rest.push_back(a);
      PermGroup delta = rest.empty() ? lam : pointwise_stabilizer(lam, rest);
      bool automorphic = std::all_of(delta.generators().begin(), delta.generators().end(),
                                     [&](const Perm& s) { return z1.apply(s) == z1; });
      if (!automorphic)
        throw std::logic_error("local certificates: window stabiliser is not automorphic");
      if (image_is_giant(delta.generators(), psi, t)) {
        cert.kind = Certificate::Kind::Full;
        const Perm l1i = lam1.inverse();
        std::vector<Perm> gs;
        for (const auto& s : delta.generators())
          gs.push_back(l1i * tau(s) * lam1);
        cert.delta = PermGroup(n, gs);
        return cert;
      }
      if (cert.widened)
        throw std::logic_error("local certificates: full window left a non-giant stabiliser");
      // too few blocks for the unaffected stabiliser to stay giant; finish on the whole domain
      wp.resize(m);
      std::iota(wp.begin(), wp.end(), 0);
      cert.widened = true;
    }

    auto supp = part.support();
    IsoCoset c = Coset{lam, Perm::identity(m)};
    if (!supp.empty())
      c = balance_orbits(*c, z1, z2, supp, budget);
    if (!c)
      return empty();
    auto wps = on_support(part, wp);
    if (!wps.empty())
      c = family_iso_on_window(*c, z1, z2, wps, budget);
    if (!c)
      return empty();
    c = combine_windows(*c, z1, z2, on_support(part, w), wps, budget);
    if (!c)
      return empty();
    z2 = z2.apply(c->rep.inverse());
    lam2 = tau(c->rep) * lam2;
    lam = c->group;
    std::vector<int> merged;
    std::set_union(w.begin(), w.end(), wp.begin(), wp.end(), std::back_inserter(merged));
    w = std::move(merged);
    cert.window_sizes.push_back(static_cast<int>(w.size()));
    if (!image_is_giant(lam.generators(), psi, t))
      return non_full();

    d = std::max(d, certified_degree(chain, lam));
    auto s = simplify_on_window(lam, part, {z1, z2}, w, chain, d);
    if (s.classes.size() != 1)
      return empty();
    auto& sc = s.classes[0];
    lam1 = tau(sc.lambda[0]) * lam1;
    lam2 = tau(sc.lambda[1]) * lam2;
    std::vector<int> to2(sc.n), lift2(n);
    for (int a = 0; a < sc.n; ++a)
      to2[a] = to_orig[sc.to_original[a]];
    for (int a = 0; a < n; ++a)
      lift2[a] = sc.lift[lift[a]];
    to_orig = std::move(to2);
    lift = std::move(lift2);
    lam = sc.group;
    part = sc.partition;
    w = sc.window;
    chain = sc.chain;
    z1 = sc.families[0];
    z2 = sc.families[1];
  }
}

LocalCertificates local_certificates(const PermGroup& g, const PPartition& p, const PStringFamily& x,
                                     const PStringFamily& y, const GiantRep& phi, const std::vector<int>& t1,
                                     const std::vector<int>& t2, const std::optional<PartitionChain>& chain,
                                     const LocalCertConfig& cfg) {
  LocalCertificates out;
  out.x_side = local_certificate_pair(g, p, x, x, phi, t1, t1, chain, cfg);
  out.y_side = local_certificate_pair(g, p, y, y, phi, t2, t2, chain, cfg);
  out.compare = local_certificate_pair(g, p, x, y, phi, t1, t2, chain, cfg);
  return out;
}

} // namespace setiso
