#include "setiso/pstring.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace setiso {

PPartition PPartition::from_class_of(std::vector<int> class_of) {
  PPartition p;
  p.n = static_cast<int>(class_of.size());
  int c = -1;
  for (int v : class_of) {
    if (v < -1)
      throw std::invalid_argument("negative class id");
    c = std::max(c, v);
  }
  p.classes.assign(c + 1, {});
  for (int a = 0; a < p.n; ++a)
    if (class_of[a] >= 0)
      p.classes[class_of[a]].push_back(a);
  for (const auto& cl : p.classes)
    if (cl.empty())
      throw std::invalid_argument("class ids are not dense");
  p.class_of = std::move(class_of);
  return p;
}

PPartition PPartition::trivial(int n) { return from_class_of(std::vector<int>(n, 0)); }

PPartition PPartition::singletons(int n) {
  std::vector<int> c(n);
  for (int a = 0; a < n; ++a)
    c[a] = a;
  return from_class_of(std::move(c));
}

std::vector<int> PPartition::support() const {
  std::vector<int> s;
  for (int a = 0; a < n; ++a)
    if (class_of[a] >= 0)
      s.push_back(a);
  return s;
}

bool PPartition::is_invariant(const PermGroup& g) const {
  if (g.degree() != n)
    return false;
  for (const auto& s : g.generators())
    for (const auto& cl : classes) {
      int q = class_of[s[cl[0]]];
      if (q < 0)
        return false;
      for (int a : cl)
        if (class_of[s[a]] != q)
          return false;
    }
  return true;
}

// ---------------------------------------------------------------------------

PStringFamily::PStringFamily(PPartition part, std::vector<PString> members, bool pad, std::optional<int> sentinel)
    : part_(std::move(part)), members_(std::move(members)) {
  const int c = static_cast<int>(part_.classes.size());
  for (const auto& m : members_) {
    if (m.cls < 0 || m.cls >= c)
      throw std::invalid_argument("string refers to an unknown class");
    if (m.letters.size() != part_.classes[m.cls].size())
      throw std::invalid_argument("string support does not match its class");
    for (int l : m.letters)
      if (l < 0)
        throw std::invalid_argument("negative color id");
  }
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw std::invalid_argument("duplicate member string");
  if (pad) {
    int s = sentinel ? *sentinel : max_color() + 1;
    for (const auto& m : members_)
      for (int l : m.letters)
        if (l == s)
          throw std::invalid_argument("sentinel color occurs in the data");
    sentinel_ = s;
    std::vector<int> cnt(c, 0);
    for (const auto& m : members_)
      ++cnt[m.cls];
    for (int i = 0; i < c; ++i)
      if (cnt[i] == 0)
        members_.push_back({i, std::vector<int>(part_.classes[i].size(), s)});
    std::sort(members_.begin(), members_.end());
  } else {
    sentinel_ = sentinel;
  }
  rebuild();
}

void PStringFamily::rebuild() {
  mult_.assign(part_.classes.size(), 0);
  for (const auto& m : members_)
    ++mult_[m.cls];
  pos_in_class_.assign(part_.n, -1);
  for (const auto& cl : part_.classes)
    for (std::size_t i = 0; i < cl.size(); ++i)
      pos_in_class_[cl[i]] = static_cast<int>(i);
}

int PStringFamily::max_color() const {
  int mx = -1;
  for (const auto& m : members_)
    for (int l : m.letters)
      mx = std::max(mx, l);
  return mx;
}

bool PStringFamily::completely_occupied() const {
  return std::all_of(mult_.begin(), mult_.end(), [](int m) { return m >= 1; });
}

bool PStringFamily::is_simple() const {
  return std::all_of(mult_.begin(), mult_.end(), [](int m) { return m <= 1; });
}

bool PStringFamily::is_balanced() const {
  return std::adjacent_find(mult_.begin(), mult_.end(), std::not_equal_to<>()) == mult_.end();
}

int PStringFamily::letter(std::size_t i, int a) const {
  const auto& m = members_.at(i);
  if (part_.class_of.at(a) != m.cls)
    throw std::invalid_argument("point outside the member's class");
  return m.letters[pos_in_class_[a]];
}

PStringFamily PStringFamily::apply(const Perm& g) const {
  if (g.degree() != part_.n)
    throw std::invalid_argument("permutation degree mismatch");
  PStringFamily r;
  r.part_ = part_;
  r.sentinel_ = sentinel_;
  r.pos_in_class_ = pos_in_class_;
  for (const auto& m : members_) {
    const auto& cl = part_.classes[m.cls];
    int q = part_.class_of[g[cl[0]]];
    if (q < 0 || part_.classes[q].size() != cl.size())
      throw std::invalid_argument("partition is not invariant");
    PString img{q, std::vector<int>(cl.size())};
    for (std::size_t i = 0; i < cl.size(); ++i) {
      int b = g[cl[i]];
      if (part_.class_of[b] != q)
        throw std::invalid_argument("partition is not invariant");
      img.letters[pos_in_class_[b]] = m.letters[i];
    }
    r.members_.push_back(std::move(img));
  }
  std::sort(r.members_.begin(), r.members_.end());
  r.rebuild();
  return r;
}

PStringFamily make_family(const PPartition& part, const std::vector<PString>& strings) {
  return PStringFamily(part, strings, true);
}

std::pair<PStringFamily, PStringFamily> make_family_pair(const PPartition& part, const std::vector<PString>& xs,
                                                         const std::vector<PString>& ys) {
  int mx = -1;
  for (const auto* v : {&xs, &ys})
    for (const auto& s : *v)
      for (int l : s.letters)
        mx = std::max(mx, l);
  return {PStringFamily(part, xs, true, mx + 1), PStringFamily(part, ys, true, mx + 1)};
}

PStringFamily restrict_family(const PStringFamily& f, const std::vector<int>& a) {
  const auto& part = f.partition();
  std::vector<char> in(part.n, 0);
  bool any = false;
  for (int x : a) {
    if (x < 0 || x >= part.n)
      throw std::invalid_argument("point out of range");
    if (part.class_of[x] >= 0) {
      in[x] = 1;
      any = true;
    }
  }
  if (!any)
    throw std::invalid_argument("restriction to an empty set");
  // new class ids in order of minimum element
  std::vector<int> remap(part.classes.size(), -1);
  std::vector<int> class_of(part.n, -1);
  int next = 0;
  for (int x = 0; x < part.n; ++x)
    if (in[x]) {
      int c = part.class_of[x];
      if (remap[c] < 0)
        remap[c] = next++;
      class_of[x] = remap[c];
    }
  PPartition rp = PPartition::from_class_of(std::move(class_of));
  std::vector<PString> out;
  for (const auto& m : f.members()) {
    if (remap[m.cls] < 0)
      continue;
    const auto& cl = part.classes[m.cls];
    PString s{remap[m.cls], {}};
    for (std::size_t i = 0; i < cl.size(); ++i)
      if (in[cl[i]])
        s.letters.push_back(m.letters[i]);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return PStringFamily(std::move(rp), std::move(out), false, f.sentinel());
}

// ---------------------------------------------------------------------------

int funcnorm(int d) {
  if (d < 1)
    throw std::invalid_argument("d must be positive");
  int k = 0;
  while ((1LL << k) < d)
    ++k;
  return std::max(1, k);
}

int VirtualSizeConfig::funcnorm() const { return setiso::funcnorm(d); }

BigInt virtual_size(const PStringFamily& f, const VirtualSizeConfig& cfg) {
  const int e = cfg.exponent();
  BigInt s = 0;
  const auto& cls = f.partition().classes;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    BigInt m = f.multiplicity(static_cast<int>(i));
    s += BigInt(cls[i].size()) * boost::multiprecision::pow(m, static_cast<unsigned>(e));
  }
  return s;
}

// ---------------------------------------------------------------------------

Hypergraph Hypergraph::make(int n, std::vector<std::vector<int>> edges) {
  Hypergraph h;
  h.n = n;
  for (auto& e : edges) {
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw std::invalid_argument("repeated vertex inside an edge");
    for (int v : e)
      if (v < 0 || v >= n)
        throw std::invalid_argument("edge vertex out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");
  h.edges = std::move(edges);
  return h;
}

Hypergraph Hypergraph::apply(const Perm& g) const {
  std::vector<std::vector<int>> es;
  for (const auto& e : edges) {
    std::vector<int> img;
    for (int v : e)
      img.push_back(g[v]);
    es.push_back(std::move(img));
  }
  return make(n, std::move(es));
}

PStringFamily hypergraph_to_family(const Hypergraph& h) {
  std::vector<PString> ms;
  for (const auto& e : h.edges) {
    PString s{0, std::vector<int>(h.n, 0)};
    for (int v : e)
      s.letters[v] = 1;
    ms.push_back(std::move(s));
  }
  return PStringFamily(PPartition::trivial(h.n), std::move(ms), false);
}

Hypergraph characteristic_to_hypergraph(const PStringFamily& f) {
  const auto& part = f.partition();
  std::vector<std::vector<int>> es;
  for (const auto& m : f.members()) {
    std::vector<int> e;
    const auto& cl = part.classes[m.cls];
    for (std::size_t i = 0; i < cl.size(); ++i)
      if (m.letters[i] == 1)
        e.push_back(cl[i]);
      else if (m.letters[i] != 0)
        throw std::invalid_argument("not a characteristic string");
    es.push_back(std::move(e));
  }
  return Hypergraph::make(part.n, std::move(es));
}

Hypergraph strings_to_hypergraph(const PStringFamily& f, const std::vector<int>& alphabet) {
  const auto& part = f.partition();
  if (part.classes.size() != 1 || static_cast<int>(part.classes[0].size()) != part.n)
    throw std::invalid_argument("expected the trivial partition");
  std::map<int, int> rank;
  for (int c : alphabet)
    rank.emplace(c, 0);
  int k = 0;
  for (auto& [c, r] : rank)
    r = k++;
  std::vector<std::vector<int>> es;
  for (const auto& m : f.members()) {
    std::vector<int> e;
    for (int a = 0; a < part.n; ++a) {
      auto it = rank.find(m.letters[a]);
      if (it == rank.end())
        throw std::invalid_argument("letter outside the alphabet");
      e.push_back(a * k + it->second);
    }
    es.push_back(std::move(e));
  }
  return Hypergraph::make(part.n * k, std::move(es));
}

Perm lift_to_pairs(const Perm& g, int alphabet_size) {
  std::vector<int> img(static_cast<std::size_t>(g.degree()) * alphabet_size);
  for (int a = 0; a < g.degree(); ++a)
    for (int c = 0; c < alphabet_size; ++c)
      img[a * alphabet_size + c] = g[a] * alphabet_size + c;
  return Perm(std::move(img));
}

} // namespace setiso
