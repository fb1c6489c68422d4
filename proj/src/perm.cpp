#include "setiso/perm.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <sstream>

namespace setiso {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
      throw std::invalid_argument("image table is not a bijection");
    seen[v] = 1;
  }
}

Perm Perm::identity(int n) {
  Perm p;
  p.img_.resize(n);
  std::iota(p.img_.begin(), p.img_.end(), 0);
  return p;
}

Perm Perm::operator*(const Perm& other) const {
  if (other.degree() != degree())
    throw std::invalid_argument("degree mismatch in composition");
  Perm r;
  r.img_.resize(img_.size());
  for (std::size_t a = 0; a < img_.size(); ++a)
    r.img_[a] = other.img_[img_[a]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (std::size_t a = 0; a < img_.size(); ++a)
    r.img_[img_[a]] = static_cast<int>(a);
  return r;
}

bool Perm::is_identity() const { return first_moved() < 0; }

int Perm::first_moved() const {
  for (std::size_t a = 0; a < img_.size(); ++a)
    if (img_[a] != static_cast<int>(a))
      return static_cast<int>(a);
  return -1;
}

std::string Perm::cycles() const {
  std::ostringstream os;
  std::vector<char> seen(img_.size(), 0);
  bool any = false;
  for (std::size_t a = 0; a < img_.size(); ++a) {
    if (seen[a] || img_[a] == static_cast<int>(a))
      continue;
    any = true;
    os << '(';
    int b = static_cast<int>(a);
    bool first = true;
    while (!seen[b]) {
      seen[b] = 1;
      if (!first)
        os << ' ';
      os << b;
      first = false;
      b = img_[b];
    }
    os << ')';
  }
  if (!any)
    os << "()";
  return os.str();
}

// ---------------------------------------------------------------------------

PermGroup::PermGroup(int n, const std::vector<Perm>& gens, const std::vector<int>& base_prefix,
                     const std::optional<BigInt>& known_order)
    : n_(n) {
  for (const auto& g : gens) {
    if (g.degree() != n)
      throw std::invalid_argument("generator degree does not match group degree");
    if (!g.is_identity() && std::find(gens_.begin(), gens_.end(), g) == gens_.end())
      gens_.push_back(g);
  }
  for (int p : base_prefix) {
    if (p < 0 || p >= n)
      throw std::invalid_argument("base point out of range");
    Level lv;
    lv.point = p;
    compute_orbit(lv);
    levels_.push_back(std::move(lv));
  }
  if (known_order) {
    // random Schreier-Sims; the chain is complete once its order reaches the known one
    auto extend = [&](const Perm& g) {
      auto [r, j] = sift(g, 0);
      if (r.is_identity())
        return;
      if (j == levels_.size()) {
        Level lv;
        lv.point = r.first_moved();
        levels_.push_back(std::move(lv));
      }
      for (std::size_t l = 0; l <= j; ++l) {
        levels_[l].gens.push_back(r);
        compute_orbit(levels_[l]);
      }
    };
    auto chain_order = [&] {
      BigInt o = 1;
      for (const auto& lv : levels_)
        o *= static_cast<unsigned>(lv.orbit.size());
      return o;
    };
    for (const auto& g : gens_)
      extend(g);
    if (!gens_.empty()) {
      std::vector<Perm> state = gens_;
      while (state.size() < 8)
        state.push_back(gens_[state.size() % gens_.size()]);
      Perm acc = Perm::identity(n_);
      std::mt19937 rng(12345);
      for (int tries = 0; chain_order() < *known_order && tries < 2000; ++tries) {
        std::size_t i = rng() % state.size(), j = rng() % (state.size() - 1);
        if (j >= i)
          ++j;
        state[i] = rng() % 2 ? state[i] * state[j] : state[i] * state[j].inverse();
        acc = acc * state[i];
        extend(acc);
      }
    }
    if (chain_order() != *known_order)
      for (std::size_t l = levels_.size(); l-- > 0;)
        process(l);
    finish();
    if (order_ != *known_order)
      throw std::invalid_argument("group order differs from the stated order");
    return;
  }
  for (const auto& g : gens_) {
    auto [r, j] = sift(g, 0);
    if (!r.is_identity())
      add_strong(r, 0, j);
  }
  finish();
}

PermGroup PermGroup::symmetric(int n) {
  std::vector<Perm> gens;
  if (n >= 2) {
    std::vector<int> t(n), c(n);
    std::iota(t.begin(), t.end(), 0);
    std::swap(t[0], t[1]);
    for (int i = 0; i < n; ++i)
      c[i] = (i + 1) % n;
    gens.emplace_back(t);
    if (n > 2)
      gens.emplace_back(c);
  }
  return PermGroup(n, gens);
}

void PermGroup::compute_orbit(Level& lv) const {
  // extends an existing orbit; earlier representatives stay valid
  if (lv.orbit.empty() || lv.pos.size() != static_cast<std::size_t>(n_)) {
    lv.orbit.assign(1, lv.point);
    lv.pos.assign(n_, -1);
    lv.pos[lv.point] = 0;
    lv.reps.assign(1, Perm::identity(n_));
    lv.inv_reps.assign(1, Perm::identity(n_));
  }
  for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
    int b = lv.orbit[i];
    for (const auto& g : lv.gens) {
      int c = g[b];
      if (lv.pos[c] < 0) {
        lv.pos[c] = static_cast<int>(lv.orbit.size());
        lv.orbit.push_back(c);
        lv.reps.push_back(lv.reps[i] * g);
        lv.inv_reps.push_back(lv.reps.back().inverse());
      }
    }
  }
}

std::pair<Perm, std::size_t> PermGroup::sift(Perm h, std::size_t start) const {
  for (std::size_t l = start; l < levels_.size(); ++l) {
    int p = levels_[l].pos[h[levels_[l].point]];
    if (p < 0)
      return {std::move(h), l};
    if (p > 0)
      h = h * levels_[l].inv_reps[p];
  }
  return {std::move(h), levels_.size()};
}

void PermGroup::add_strong(const Perm& r, std::size_t from, std::size_t j) {
  if (j == levels_.size()) {
    Level lv;
    lv.point = r.first_moved();
    levels_.push_back(std::move(lv));
  }
  for (std::size_t l = from; l <= j; ++l) {
    levels_[l].gens.push_back(r);
    compute_orbit(levels_[l]);
  }
  for (std::size_t l = j + 1; l-- > from;)
    process(l);
}

void PermGroup::process(std::size_t i) {
  for (std::size_t bi = 0; bi < levels_[i].orbit.size(); ++bi) {
    for (std::size_t si = 0; si < levels_[i].gens.size(); ++si) {
      const Level& lv = levels_[i];
      const Perm& s = lv.gens[si];
      int beta = lv.orbit[bi];
      Perm h = lv.reps[bi] * s * lv.inv_reps[lv.pos[s[beta]]];
      if (h.is_identity())
        continue;
      auto [r, j] = sift(std::move(h), i + 1);
      if (!r.is_identity())
        add_strong(r, i + 1, j);
    }
  }
}

void PermGroup::finish() {
  order_ = 1;
  for (const auto& lv : levels_)
    order_ *= static_cast<unsigned>(lv.orbit.size());
}

std::vector<int> PermGroup::base() const {
  std::vector<int> b;
  for (const auto& lv : levels_)
    b.push_back(lv.point);
  return b;
}

std::vector<Perm> PermGroup::strong_generators() const {
  return levels_.empty() ? std::vector<Perm>{} : levels_[0].gens;
}

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != n_)
    return false;
  auto [r, j] = sift(g, 0);
  return j == levels_.size() && r.is_identity();
}

std::vector<int> PermGroup::orbit(int a) const {
  std::vector<int> orb{a};
  std::vector<char> seen(n_, 0);
  seen[a] = 1;
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (const auto& g : gens_) {
      int c = g[orb[i]];
      if (!seen[c]) {
        seen[c] = 1;
        orb.push_back(c);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(n_, 0);
  for (int a = 0; a < n_; ++a) {
    if (seen[a])
      continue;
    auto orb = orbit(a);
    for (int b : orb)
      seen[b] = 1;
    out.push_back(std::move(orb));
  }
  return out;
}

bool PermGroup::is_transitive_on(const std::vector<int>& set) const {
  if (set.empty())
    return true;
  auto orb = orbit(set[0]);
  auto s = set;
  std::sort(s.begin(), s.end());
  return orb == s;
}

bool PermGroup::fixes_pointwise(const std::vector<int>& set) const {
  for (const auto& g : gens_)
    for (int a : set)
      if (g[a] != a)
        return false;
  return true;
}

bool PermGroup::is_invariant(const std::vector<int>& set) const {
  std::vector<char> in(n_, 0);
  for (int a : set) {
    if (a < 0 || a >= n_)
      return false;
    in[a] = 1;
  }
  for (const auto& g : gens_)
    for (int a : set)
      if (!in[g[a]])
        return false;
  return true;
}

void PermGroup::for_each_element(const std::function<bool(const Perm&)>& f) const {
  // element = u_{k-1} ... u_1 u_0 with u_l from the level-l transversal
  std::function<bool(std::size_t, const Perm&)> rec = [&](std::size_t l, const Perm& suffix) {
    if (l == levels_.size())
      return f(suffix);
    for (const auto& u : levels_[l].reps)
      if (!rec(l + 1, u * suffix))
        return false;
    return true;
  };
  rec(0, Perm::identity(n_));
}

std::vector<Perm> PermGroup::elements() const {
  std::vector<Perm> out;
  for_each_element([&](const Perm& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

PermGroup PermGroup::chain_tail(std::size_t k) const {
  if (k > levels_.size())
    throw std::invalid_argument("chain_tail beyond base length");
  PermGroup r;
  r.n_ = n_;
  if (k < levels_.size()) {
    r.gens_ = levels_[k].gens;
    r.levels_.assign(levels_.begin() + static_cast<long>(k), levels_.end());
  }
  r.finish();
  return r;
}

PermGroup build_group(const std::vector<Perm>& gens, int n) { return PermGroup(n, gens); }

// ---------------------------------------------------------------------------

namespace {

int uf_find(std::vector<int>& p, int x) {
  while (p[x] != x) {
    p[x] = p[p[x]];
    x = p[x];
  }
  return x;
}

// Minimal block containing a and b; returns a class label per point.
std::vector<int> minimal_block(const std::vector<std::vector<int>>& gens, int m, int a, int b) {
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::deque<std::pair<int, int>> queue;
  auto unite = [&](int x, int y) {
    x = uf_find(parent, x);
    y = uf_find(parent, y);
    if (x == y)
      return false;
    if (x < y)
      parent[y] = x;
    else
      parent[x] = y;
    return true;
  };
  unite(a, b);
  queue.emplace_back(a, b);
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (const auto& g : gens)
      if (unite(g[x], g[y]))
        queue.emplace_back(g[x], g[y]);
  }
  std::vector<int> label(m);
  for (int i = 0; i < m; ++i)
    label[i] = uf_find(parent, i);
  return label;
}

} // namespace

std::vector<std::vector<int>> minimal_block_system(const PermGroup& g, const std::vector<int>& orbit) {
  std::vector<std::vector<int>> blocks;
  for (int a : orbit)
    blocks.push_back({a});
  if (orbit.size() <= 2)
    return blocks;
  for (;;) {
    int m = static_cast<int>(blocks.size());
    std::vector<int> block_of(g.degree(), -1);
    for (int i = 0; i < m; ++i)
      for (int a : blocks[i])
        block_of[a] = i;
    std::vector<std::vector<int>> bg;
    for (const auto& s : g.generators()) {
      std::vector<int> img(m);
      for (int i = 0; i < m; ++i)
        img[i] = block_of[s[blocks[i][0]]];
      bg.push_back(std::move(img));
    }
    bool merged = false;
    for (int b = 1; b < m && !merged; ++b) {
      auto label = minimal_block(bg, m, 0, b);
      int size0 = static_cast<int>(std::count(label.begin(), label.end(), label[0]));
      if (size0 == m)
        continue;
      std::vector<std::vector<int>> next;
      std::vector<int> slot(m, -1);
      for (int i = 0; i < m; ++i) {
        int l = label[i];
        if (slot[l] < 0) {
          slot[l] = static_cast<int>(next.size());
          next.emplace_back();
        }
        auto& dst = next[slot[l]];
        dst.insert(dst.end(), blocks[i].begin(), blocks[i].end());
      }
      blocks = std::move(next);
      merged = true;
    }
    if (!merged)
      break;
  }
  for (auto& b : blocks)
    std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

OrbitsAndBlocks orbits_and_blocks(const PermGroup& g) {
  OrbitsAndBlocks r;
  r.orbits = g.orbits();
  for (const auto& orb : r.orbits) {
    if (orb.size() <= 1)
      continue;
    BlockSystem bs;
    bs.orbit = orb;
    bs.blocks = minimal_block_system(g, orb);
    bs.primitive = bs.blocks.size() == orb.size();
    r.block_systems.push_back(std::move(bs));
  }
  return r;
}

// ---------------------------------------------------------------------------

PermGroup pointwise_stabilizer(const PermGroup& g, const std::vector<int>& set) {
  std::vector<int> prefix;
  std::vector<char> in(g.degree(), 0);
  for (int a : set) {
    if (a < 0 || a >= g.degree())
      throw std::invalid_argument("point out of range");
    in[a] = 1;
  }
  for (int a = 0; a < g.degree(); ++a)
    if (in[a])
      for (const auto& s : g.generators())
        if (s[a] != a) {
          prefix.push_back(a);
          break;
        }
  if (prefix.empty())
    return g;
  PermGroup c(g.degree(), g.generators(), prefix);
  return c.chain_tail(prefix.size());
}

PermGroup setwise_stabilizer(const PermGroup& g, const std::vector<int>& set) {
  const int n = g.degree();
  std::vector<char> in(n, 0);
  for (int a : set) {
    if (a < 0 || a >= n)
      throw std::invalid_argument("point out of range");
    in[a] = 1;
  }
  if (g.is_invariant(set))
    return g;
  // direct product of symmetric groups on its orbits: split every orbit by the set
  {
    auto orbs = g.orbits();
    BigInt full = 1;
    for (const auto& o : orbs)
      full *= factorial(static_cast<int>(o.size()));
    if (full == g.order()) {
      std::vector<Perm> gens;
      auto add_sym = [&](const std::vector<int>& part) {
        if (part.size() < 2)
          return;
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        std::swap(img[part[0]], img[part[1]]);
        gens.emplace_back(img);
        if (part.size() > 2) {
          std::iota(img.begin(), img.end(), 0);
          for (std::size_t i = 0; i < part.size(); ++i)
            img[part[i]] = part[(i + 1) % part.size()];
          gens.emplace_back(img);
        }
      };
      for (const auto& o : orbs) {
        std::vector<int> inside, outside;
        for (int a : o)
          (in[a] ? inside : outside).push_back(a);
        add_sym(inside);
        add_sym(outside);
      }
      return PermGroup(n, gens);
    }
  }
  std::vector<int> prefix;
  for (int a = 0; a < n; ++a)
    if (in[a])
      for (const auto& s : g.generators())
        if (s[a] != a) {
          prefix.push_back(a);
          break;
        }
  PermGroup c(n, g.generators(), prefix, g.order());
  const auto& L = c.levels();
  const std::size_t m = prefix.size();
  std::vector<Perm> kgens;
  if (L.size() > m)
    kgens = L[m].gens;

  // Depth-first search below level lv inside the coset G^(lv) * s.
  std::function<std::optional<Perm>(std::size_t, const Perm&)> search =
      [&](std::size_t lv, const Perm& s) -> std::optional<Perm> {
    if (lv == m) {
      for (int a = 0; a < n; ++a)
        if (in[a] && !in[s[a]])
          return std::nullopt;
      return s;
    }
    const auto& level = L[lv];
    for (std::size_t i = 0; i < level.orbit.size(); ++i) {
      if (!in[s[level.orbit[i]]])
        continue;
      if (auto r = search(lv + 1, level.reps[i] * s))
        return r;
    }
    return std::nullopt;
  };

  for (std::size_t l = m; l-- > 0;) {
    const auto& level = L[l];
    auto korbit = [&]() {
      std::vector<char> seen(n, 0);
      std::vector<int> orb{level.point};
      seen[level.point] = 1;
      for (std::size_t i = 0; i < orb.size(); ++i)
        for (const auto& k : kgens)
          if (!seen[k[orb[i]]]) {
            seen[k[orb[i]]] = 1;
            orb.push_back(k[orb[i]]);
          }
      return seen;
    };
    auto seen = korbit();
    for (std::size_t i = 1; i < level.orbit.size(); ++i) {
      int beta = level.orbit[i];
      if (seen[beta] || !in[beta])
        continue;
      if (auto r = search(l + 1, level.reps[i])) {
        kgens.push_back(*r);
        seen = korbit();
      }
    }
  }
  return PermGroup(n, kgens);
}

PermGroup stabilizer(const PermGroup& g, const std::vector<int>& set, StabMode mode) {
  return mode == StabMode::Pointwise ? pointwise_stabilizer(g, set) : setwise_stabilizer(g, set);
}

// ---------------------------------------------------------------------------

namespace {

Perm join(const Perm& a, const Perm& b) {
  std::vector<int> img(a.images());
  for (int v : b.images())
    img.push_back(v + a.degree());
  return Perm(std::move(img));
}

// Product group on source points followed by target points.
PermGroup product_group(const PermGroup& src, const std::vector<Perm>& images, int k, bool target_first,
                        const std::optional<BigInt>& known_order = std::nullopt) {
  std::vector<Perm> gens;
  for (std::size_t i = 0; i < images.size(); ++i)
    gens.push_back(join(src.generators()[i], images[i]));
  int n = src.degree();
  std::vector<int> prefix;
  if (target_first)
    for (int t = 0; t < k; ++t)
      prefix.push_back(n + t);
  else
    for (int a = 0; a < n; ++a)
      prefix.push_back(a);
  return PermGroup(n + k, gens, prefix, known_order);
}

// Finds an element of c agreeing with t on the first `depth` base points.
std::optional<Perm> lift(const PermGroup& c, const Perm& t, std::size_t depth) {
  Perm r = t;
  Perm acc = Perm::identity(c.degree());
  const auto& L = c.levels();
  for (std::size_t l = 0; l < depth && l < L.size(); ++l) {
    int p = L[l].pos[r[L[l].point]];
    if (p < 0)
      return std::nullopt;
    r = r * L[l].inv_reps[p];
    acc = L[l].reps[p] * acc;
  }
  return acc;
}

Perm slice(const Perm& p, int off, int len) {
  std::vector<int> img(len);
  for (int i = 0; i < len; ++i)
    img[i] = p[off + i] - off;
  return Perm(std::move(img));
}

} // namespace

GroupHom::GroupHom(PermGroup source, int target_degree, std::vector<Perm> images)
    : source_(std::move(source)), k_(target_degree), images_(std::move(images)) {
  if (images_.size() != source_.generators().size())
    throw std::invalid_argument("one image per source generator required");
  for (const auto& p : images_)
    if (p.degree() != k_)
      throw std::invalid_argument("image degree mismatch");
}

GroupHom::GroupHom(PermGroup source, int target_degree, std::function<Perm(const Perm&)> action)
    : source_(std::move(source)), k_(target_degree), action_(std::move(action)) {
  for (const auto& g : source_.generators())
    images_.push_back(action_(g));
}

Perm GroupHom::apply(const Perm& g) const {
  if (action_)
    return action_(g);
  if (g.degree() != source_.degree())
    throw std::invalid_argument("element degree mismatch");
  if (!lift_)
    lift_ = product_group(source_, images_, k_, false);
  int n = source_.degree();
  auto t = join(g, Perm::identity(k_));
  auto r = lift(*lift_, t, static_cast<std::size_t>(n));
  if (!r)
    throw std::invalid_argument("element not in source group");
  return slice(*r, n, k_);
}

HomTools hom_tools(const GroupHom& h) {
  const PermGroup& src = h.source();
  const int n = src.degree();
  const int k = h.target_degree();
  // an action map is a homomorphism by construction, so the order of the graph is known
  PermGroup prod = product_group(src, h.images(), k, true,
                                 h.is_action() ? std::optional<BigInt>(src.order()) : std::nullopt);
  if (prod.order() != src.order())
    throw std::invalid_argument("generator images do not define a homomorphism");
  HomTools t;
  t.image = PermGroup(k, h.images());
  PermGroup tail = prod.chain_tail(std::min<std::size_t>(static_cast<std::size_t>(k), prod.levels().size()));
  std::vector<Perm> kgens;
  for (const auto& g : tail.generators())
    kgens.push_back(slice(g, 0, n));
  t.kernel = PermGroup(n, kgens);
  auto prod_ptr = std::make_shared<PermGroup>(std::move(prod));
  t.preimage = [prod_ptr, n, k](const Perm& target) -> std::optional<Perm> {
    if (target.degree() != k)
      throw std::invalid_argument("preimage: wrong degree");
    std::vector<int> img(n + k);
    for (int a = 0; a < n; ++a)
      img[a] = a;
    for (int b = 0; b < k; ++b)
      img[n + b] = n + target[b];
    auto r = lift(*prod_ptr, Perm(std::move(img)), static_cast<std::size_t>(k));
    if (!r || slice(*r, n, k) != target)
      return std::nullopt;
    return slice(*r, 0, n);
  };
  return t;
}

// ---------------------------------------------------------------------------

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i)
    f *= i;
  return f;
}

const char* giant_name(Giant g) {
  switch (g) {
  case Giant::Sym: return "Sym";
  case Giant::Alt: return "Alt";
  default: return "None";
  }
}

Giant is_giant(const PermGroup& g, const std::vector<int>& set) {
  if (!g.is_invariant(set))
    throw std::invalid_argument("set is not invariant");
  auto r = restrict_action(g, set);
  int m = static_cast<int>(set.size());
  if (m == 0)
    return Giant::Sym;
  if (static_cast<int>(r.group.orbit(0).size()) != m)
    return Giant::None;
  BigInt f = factorial(m);
  if (r.group.order() == f)
    return Giant::Sym;
  if (m >= 3 && r.group.order() * 2 == f)
    return Giant::Alt;
  return Giant::None;
}

Restriction restrict_action(const PermGroup& g, const std::vector<int>& set) {
  if (!g.is_invariant(set))
    throw std::invalid_argument("set is not invariant");
  std::vector<int> pts = set;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<int> idx(g.degree(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i)
    idx[pts[i]] = static_cast<int>(i);
  int m = static_cast<int>(pts.size());
  auto act = [pts, idx, m](const Perm& p) {
    std::vector<int> img(m);
    for (int i = 0; i < m; ++i)
      img[i] = idx[p[pts[i]]];
    return Perm(std::move(img));
  };
  GroupHom hom(g, m, act);
  PermGroup img(m, hom.images());
  return {std::move(img), std::move(hom), pts};
}

GroupHom block_action(const PermGroup& g, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> block_of(g.degree(), -1);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (int a : blocks[i])
      block_of[a] = static_cast<int>(i);
  std::vector<int> firsts;
  for (const auto& b : blocks)
    firsts.push_back(b.at(0));
  int m = static_cast<int>(blocks.size());
  auto act = [block_of, firsts, m](const Perm& p) {
    std::vector<int> img(m);
    for (int i = 0; i < m; ++i) {
      int b = block_of[p[firsts[i]]];
      if (b < 0)
        throw std::invalid_argument("blocks are not invariant");
      img[i] = b;
    }
    return Perm(std::move(img));
  };
  return GroupHom(g, m, act);
}

} // namespace setiso
