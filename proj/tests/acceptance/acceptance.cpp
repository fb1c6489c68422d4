// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include "setiso/color_refine.hpp"
#include "setiso/encodings.hpp"
#include "setiso/gsi.hpp"
#include "setiso/io.hpp"
#include "setiso/local_certs.hpp"
#include "setiso/normal_forms.hpp"
#include "setiso/oracle.hpp"
#include "setiso/simplify.hpp"
#include "setiso/string_iso.hpp"

#include "../instances.hpp"
#include "../support.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace setiso;
using namespace setiso::testing;
namespace fs = std::filesystem;

namespace {

struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::map<std::string, std::size_t> counts;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 1000)
      failures.push_back(what);
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int failed = 0;

void run(int id, const std::string& name, double limit_s, const std::function<void(Tally&)>& body) {
  Tally t;
  auto start = std::chrono::steady_clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    t.failures.push_back(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool slow = secs > limit_s;
  bool ok = t.failures.empty() && !slow;
  failed += !ok;
  std::cout << "criterion " << id << " " << name << ": " << (ok ? "PASS" : "FAIL") << " (" << t.checks
            << " checks";
  for (const auto& [k, v] : t.counts)
    std::cout << ", " << k << " " << v;
  std::cout << ", " << fmt("%.1f", secs) << " s of " << fmt("%.0f", limit_s) << " s)\n";
  for (std::size_t i = 0; i < t.failures.size() && i < 5; ++i)
    std::cout << "    " << t.failures[i] << '\n';
  if (slow)
    std::cout << "    over the time limit\n";
  std::cout.flush();
}

std::vector<int> all_points(int n) {
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 0);
  return w;
}

std::set<Perm> solver_set(const IsoCoset& c) { return as_set(c); }

// Shared bookkeeping for the four kinds: equality with the oracle and coset soundness.
template <class Fixes, class Maps>
void compare(Tally& t, Tally& sound, const std::string& tag, const IsoCoset& got, const std::vector<Perm>& expect,
             Fixes fixes, Maps maps) {
  t.expect(solver_set(got) == as_set(expect), tag + ": solver set differs from enumeration");
  if (!got)
    return;
  ++sound.counts["nonempty"];
  for (const auto& s : got->group.generators())
    sound.expect(fixes(s), tag + ": generator " + s.cycles() + " does not fix the first object");
  sound.expect(maps(got->rep), tag + ": representative does not map first to second");
  sound.expect(got->group.order() == BigInt(expect.size()), tag + ": group order differs from oracle count");
}

// ---------------------------------------------------------------- criteria 1 and 2

Tally soundness;

void oracle_equivalence(Tally& t) {
  const int per_kind = 500;
  for (int i = 0; i < per_kind; ++i) {
    std::mt19937_64 rng(1000 + i);
    int n = 1 + static_cast<int>(rng() % 7);
    auto g = random_group(n, rng);
    auto els = oracle::enumerate(n, g.generators());
    auto x = random_string(n, 2 + static_cast<int>(rng() % 2), rng);
    auto y = rng() % 2 ? pull_string(x, random_element(g, rng).inverse()) : random_string(n, 3, rng);
    auto w = all_points(n);
    Budget b;
    auto got = string_iso(g, x, y, w, b);
    compare(t, soundness, "string " + std::to_string(i), got, oracle::iso_strings(els, x, y, w),
            [&](const Perm& s) { return pull_string(x, s) == x; },
            [&](const Perm& r) { return pull_string(y, r) == x; });
  }
  t.counts["strings"] = per_kind;

  for (int i = 0; i < per_kind; ++i) {
    std::mt19937_64 rng(2000 + i);
    int n = 1 + static_cast<int>(rng() % 7);
    auto g = random_group(n, rng);
    auto els = oracle::enumerate(n, g.generators());
    auto random_h = [&] {
      std::set<std::vector<int>> edges;
      int m = static_cast<int>(rng() % 9);
      for (int e = 0; e < m; ++e) {
        std::vector<int> edge;
        for (int a = 0; a < n; ++a)
          if (rng() % 2)
            edge.push_back(a);
        edges.insert(edge);
      }
      return Hypergraph::make(n, {edges.begin(), edges.end()});
    };
    auto x = random_h();
    auto y = rng() % 2 ? x.apply(random_element(g, rng)) : random_h();
    Budget b;
    auto got = hypergraph_iso(g, x, y, b);
    compare(t, soundness, "hypergraph " + std::to_string(i), got, oracle::iso_hypergraphs(els, x, y),
            [&](const Perm& s) { return x.apply(s) == x; }, [&](const Perm& r) { return x.apply(r) == y; });
  }
  t.counts["hypergraphs"] = per_kind;

  for (int i = 0; i < per_kind; ++i) {
    std::mt19937_64 rng(3000 + i);
    int n = 1 + static_cast<int>(rng() % 7);
    auto g = random_group(n, rng);
    auto els = oracle::enumerate(n, g.generators());
    auto p = random_invariant_partition(g, rng);
    int colors = 2 + static_cast<int>(rng() % 2);
    auto xs = random_members(p, 8, colors, rng);
    auto ys = rng() % 2 ? PStringFamily(p, xs, false).apply(random_element(g, rng)).members()
                        : random_members(p, 8, colors, rng);
    auto [x, y] = make_family_pair(p, xs, ys);
    auto got = generalized_string_iso(GsiInstance{g, p, x, y, std::nullopt});
    compare(t, soundness, "family " + std::to_string(i), got, oracle::iso_families(els, x, y),
            [&](const Perm& s) { return x.apply(s) == x; }, [&](const Perm& r) { return x.apply(r) == y; });
  }
  t.counts["families"] = per_kind;

  for (int i = 0; i < per_kind; ++i) {
    std::mt19937_64 rng(4000 + i);
    int n = 1 + static_cast<int>(rng() % 7);
    auto g = random_group(n, rng);
    auto els = oracle::enumerate(n, g.generators());
    auto x = random_graph(n, rng, 2, 2);
    auto y = rng() % 2 ? permute_graph(x, random_element(g, rng)) : random_graph(n, rng, 2, 2);
    Budget b;
    auto got = graph_iso_under_group(x, y, g, b);
    compare(t, soundness, "graph " + std::to_string(i), got, oracle::iso_graphs(els, x, y),
            [&](const Perm& s) { return permute_graph(x, s) == x; },
            [&](const Perm& r) { return permute_graph(x, r) == y; });
  }
  t.counts["graphs"] = per_kind;
}

// ---------------------------------------------------------------- criterion 3

void virtual_size_inequalities(Tally& t) {
  for (int i = 0; i < 1000; ++i) {
    std::mt19937_64 rng(5000 + i);
    int n = 2 + static_cast<int>(rng() % 9);
    auto part = random_partition(n, rng, 4);
    auto f = make_family(part, random_members(part, 8, 3, rng));
    VirtualSizeConfig cfg{1 + static_cast<int>(rng() % 8)};
    std::vector<int> w1, w2;
    for (int a = 0; a < n; ++a)
      (rng() % 2 ? w1 : w2).push_back(a);
    auto vs = [&](const PStringFamily& h, const std::vector<int>& w) {
      return w.empty() ? BigInt(0) : virtual_size(restrict_family(h, w), cfg);
    };
    std::string tag = "family " + std::to_string(i);
    t.expect(vs(f, w1) + vs(f, w2) <= virtual_size(f, cfg), tag + ": s1 + s2 > s");
    if (!w1.empty() && !w2.empty()) {
      auto bigger = w1;
      bigger.push_back(w2[rng() % w2.size()]);
      std::sort(bigger.begin(), bigger.end());
      t.expect(vs(f, w1) < vs(f, bigger), tag + ": not strictly monotone");
    }
    auto bal = make_family(part, balanced_members(part, 1 + static_cast<int>(rng() % 3), 3, rng));
    if (!bal.is_balanced() || w1.empty())
      continue;
    ++t.counts["balanced"];
    t.expect(vs(bal, w1) * n <= BigInt(w1.size()) * virtual_size(bal, cfg), tag + ": balanced bound fails");
  }
}

// ---------------------------------------------------------------- criterion 4

void simplify_on_window_props(Tally& t) {
  int done = 0, enumerated = 0, nontrivial = 0;
  for (int i = 0; done < 200; ++i) {
    std::mt19937_64 rng(6000 + i);
    const int n = 3 + static_cast<int>(rng() % 10);
    auto in = random_instance(n, 3, rng);
    // enumeration is only affordable for moderate groups
    if (n <= 8 && in.g.order() > 5040)
      continue;
    ++done;
    auto chain = chain_through(in.g, in.p);
    const int d = certified_degree(chain, in.g);
    auto res = simplify_on_window(in.g, in.p, in.fams, in.w, chain, d);
    nontrivial += !res.identity;
    std::string tag = "instance " + std::to_string(i);
    std::vector<int> class_of(in.fams.size(), -1), pos(in.fams.size(), -1);
    for (std::size_t ci = 0; ci < res.classes.size(); ++ci)
      for (std::size_t k = 0; k < res.classes[ci].members.size(); ++k) {
        class_of[res.classes[ci].members[k]] = static_cast<int>(ci);
        pos[res.classes[ci].members[k]] = static_cast<int>(k);
      }
    for (const auto& c : res.classes)
      for (std::size_t k = 0; k < c.members.size(); ++k) {
        const auto& xs = c.families[k];
        const auto& x = in.fams[c.members[k]];
        auto ws = on_support(xs, c.window);
        t.expect(ws.empty() || restrict_family(xs, ws).is_simple(), tag + ": window not simple (E)");
        t.expect(virtual_size(xs, {d}) <= virtual_size(x, {d}), tag + ": virtual size grew (F)");
        t.expect(vsize_outside(xs, c.window, d) <= vsize_outside(x, in.w, d),
                 tag + ": virtual size outside the window grew (G)");
      }
    if (n > 8)
      continue;
    ++enumerated;
    auto all = sorted_elements(in.g);
    for (std::size_t a = 0; a < in.fams.size(); ++a)
      for (std::size_t b = 0; b < in.fams.size(); ++b) {
        auto expect = as_set(oracle::iso_families(all, in.fams[a], in.fams[b]));
        if (class_of[a] != class_of[b]) {
          t.expect(expect.empty(), tag + ": isomorphic families in different classes (D)");
          continue;
        }
        const auto& c = res.classes[class_of[a]];
        auto star_els = sorted_elements(c.group);
        auto star = oracle::iso_families(star_els, c.families[pos[a]], c.families[pos[b]]);
        std::set<Perm> got;
        for (const auto& e : star)
          got.insert(c.lambda[pos[a]].inverse() * c.phi(e) * c.lambda[pos[b]]);
        t.expect(got == expect, tag + ": pulled-back isomorphisms differ (D)");
      }
  }
  t.counts["instances"] = static_cast<std::size_t>(done);
  t.counts["enumerated"] = static_cast<std::size_t>(enumerated);
  t.counts["nontrivial"] = static_cast<std::size_t>(nontrivial);
}

// ---------------------------------------------------------------- criterion 5

PartitionChain chain_of(const std::vector<std::vector<int>>& labels) {
  PartitionChain c;
  for (const auto& l : labels)
    c.levels.push_back(canonical_partition(l));
  return c;
}

void normalization(Tally& t) {
  int graphs = 0;
  for (int i = 0; graphs < 100; ++i) {
    std::mt19937_64 rng(7000 + i);
    int n = 2 + static_cast<int>(rng() % 9);
    auto g = random_group(n, rng);
    auto sg = random_set_system_graph(g, rng);
    if (sg.maximal_branch_count() > 10000)
      continue;
    ++graphs;
    auto u = unfold_and_act(sg);
    bool ok = true;
    for (std::size_t k = 0; k < u.gens.size(); ++k)
      for (int a = 0; a < u.size(); ++a)
        ok = ok && u.f[u.images[k][a]] == u.gens[k][u.f[a]];
    t.expect(ok, "structure graph " + std::to_string(i) + ": unfolding does not commute");
  }
  t.counts["structure graphs"] = static_cast<std::size_t>(graphs);

  for (int i = 0; i < 100; ++i) {
    std::mt19937_64 rng(7500 + i);
    int n = 2 + static_cast<int>(rng() % 5);
    auto g = random_group(n, rng);
    auto p = random_invariant_partition(g, rng);
    auto xs = random_members(p, 6, 2, rng);
    auto ys = i % 2 ? PStringFamily(p, xs, false).apply(random_element(g, rng)).members() : random_members(p, 6, 2, rng);
    auto [x, y] = make_family_pair(p, xs, ys);
    auto r = normalize_instance(GsiInstance{g, p, x, y, std::nullopt}, 2);
    auto got = r.form.pull_back(generalized_string_iso(r.instance));
    t.expect(as_set(got) == as_set(oracle::iso_families(sorted_elements(g), x, y)),
             "normalized instance " + std::to_string(i) + ": answer changed");
  }
  t.counts["normalized"] = 100;

  // wreath products with a missing intermediate level
  int cases = 0;
  {
    PermGroup g(4, {P({1, 0, 2, 3}), P({2, 3, 0, 1})});
    auto chain = chain_of({{0, 0, 0, 0}, {0, 1, 2, 3}});
    auto p = PPartition::singletons(4);
    auto [x, y] = make_family_pair(p, {{0, {1}}, {1, {1}}, {2, {0}}, {3, {0}}}, {{0, {0}}, {1, {0}}, {2, {1}}, {3, {1}}});
    auto out = renormalize(g, p, {x, y}, chain, 1, 2);
    auto bad = check_renormalize_properties(g, p, {x, y}, chain, 1, 2, out, {0, 1, 2, 3});
    t.expect(bad.empty(), "C2 wr C2: " + (bad.empty() ? std::string() : bad.front()));
    ++cases;
  }
  PermGroup g8(8, {P({1, 0, 2, 3, 4, 5, 6, 7}), P({2, 3, 0, 1, 4, 5, 6, 7}), P({4, 5, 6, 7, 0, 1, 2, 3})});
  auto chain8 = chain_of({{0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 1, 1, 2, 2, 3, 3}, {0, 1, 2, 3, 4, 5, 6, 7}});
  auto p8 = canonical_partition({0, 0, 1, 1, 2, 2, 3, 3});
  std::mt19937_64 rng(7900);
  for (int it = 0; it < 20; ++it) {
    auto xs = random_members(p8, 6, 2, rng);
    auto ys = PStringFamily(p8, xs, false).apply(random_element(g8, rng)).members();
    auto [x, y] = make_family_pair(p8, xs, ys);
    auto out = renormalize(g8, p8, {x, y}, chain8, 1, 2);
    auto bad = check_renormalize_properties(g8, p8, {x, y}, chain8, 1, 2, out, all_points(8));
    t.expect(bad.empty(), "C2 wr C2 wr C2 case " + std::to_string(it) + ": " + (bad.empty() ? "" : bad.front()));
    ++cases;
  }
  {
    auto g = wreath_2_5();
    auto chain = chain_of({std::vector<int>(10, 0), all_points(10)});
    auto p = PPartition::singletons(10);
    for (int it = 0; it < 10; ++it) {
      auto h = random_hypergraph(10, rng);
      auto x0 = hypergraph_to_family(h);
      std::vector<PString> xs, ys;
      for (const auto& m : PPartition::singletons(10).classes) {
        // one letter per point: its degree in the hypergraph
        int deg = 0;
        for (const auto& e : h.edges)
          deg += std::binary_search(e.begin(), e.end(), m[0]);
        xs.push_back({m[0], {deg}});
      }
      auto img = random_element(g, rng);
      for (const auto& s : xs)
        ys.push_back({img[s.cls], s.letters});
      std::sort(ys.begin(), ys.end());
      auto [x, y] = make_family_pair(p, xs, ys);
      auto out = renormalize(g, p, {x, y}, chain, 1, 5);
      auto bad = check_renormalize_properties(g, p, {x, y}, chain, 1, 5, out, all_points(10));
      t.expect(bad.empty(), "S2 wr S5 case " + std::to_string(it) + ": " + (bad.empty() ? "" : bad.front()));
      ++cases;
    }
  }
  t.counts["renormalized"] = static_cast<std::size_t>(cases);
}

// ---------------------------------------------------------------- criterion 6

void local_certificates_check(Tally& t) {
  auto g = wreath_2_5();
  auto phi = *find_giant_rep(g);
  t.expect(phi.k == 5, "wreath product: giant degree is not 5");
  auto all = sorted_elements(g);
  auto aff = affected_points(g, phi);
  auto tools = hom_tools(phi.hom);
  for (const auto& o : tools.kernel.orbits())
    t.expect(o.size() * static_cast<std::size_t>(phi.k) <= aff.size(), "kernel orbit larger than |A|/k");
  std::mt19937_64 rng(8000);
  for (int i = 0; i < 40; ++i) {
    std::vector<Perm> gens;
    for (const auto& s : g.generators())
      if (rng() % 2)
        gens.push_back(s);
    gens.push_back(random_element(g, rng));
    PermGroup delta(10, gens);
    auto a = affected_points(delta, phi);
    for (int p : a)
      for (int q : delta.orbit(p))
        t.expect(std::binary_search(a.begin(), a.end(), q), "affected set is not a union of orbits");
  }
  std::size_t full = 0, nonfull = 0, empty = 0;
  for (int i = 0; i < 60; ++i) {
    auto hx = random_hypergraph(10, rng);
    auto x = hypergraph_to_family(hx);
    auto y = rng() % 2 ? hypergraph_to_family(hx.apply(all[rng() % all.size()]))
                       : hypergraph_to_family(random_hypergraph(10, rng));
    const int k = 2 + static_cast<int>(rng() % 4);
    auto t1 = random_subset(5, k, rng), t2 = random_subset(5, k, rng);
    auto res = local_certificates(g, PPartition::trivial(10), x, y, phi, t1, t2);
    auto auts = oracle::iso_families(all, x, x);
    auto isos = oracle::iso_families(all, x, y);
    std::string tag = "payload " + std::to_string(i);
    for (const auto* c : {&res.x_side, &res.compare}) {
      if (c->kind == Certificate::Kind::Full) {
        ++full;
        std::set<Perm> aut(auts.begin(), auts.end());
        for (const auto& e : c->delta.elements())
          t.expect(aut.count(e) > 0, tag + ": full certificate holds a non-automorphism");
        std::vector<Perm> on_t;
        for (const auto& s : c->delta.generators()) {
          Perm img = phi.apply(s);
          std::vector<int> im;
          for (int a : t1)
            im.push_back(static_cast<int>(std::lower_bound(t1.begin(), t1.end(), img[a]) - t1.begin()));
          on_t.emplace_back(im);
        }
        t.expect(is_giant(PermGroup(k, on_t), all_points(k)) != Giant::None,
                 tag + ": full certificate image is not a giant");
        continue;
      }
      (c->kind == Certificate::Kind::Empty ? empty : nonfull)++;
      const auto& target = c == &res.compare ? isos : auts;
      const auto& tt = c == &res.compare ? t2 : t1;
      for (const auto& e : target) {
        Perm img = phi.apply(e);
        std::vector<int> b;
        for (int a : t1)
          b.push_back(img[a]);
        auto sb = b;
        std::sort(sb.begin(), sb.end());
        if (sb == tt)
          t.expect(c->admits(b), tag + ": projected isomorphism missing from the certificate");
      }
    }
  }
  t.counts["full"] = full;
  t.counts["nonfull"] = nonfull;
  t.counts["empty"] = empty;
  t.expect(full > 0 && nonfull > 0, "both certificate kinds should occur");
}

// ---------------------------------------------------------------- CLI helpers

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args, int threads = 1) {
  std::string cmd = "SETISO_THREADS=" + std::to_string(threads) + " '" SETISO_CLI "' " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p)
    return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0)
    r.out.append(buf, got);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path work_dir() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("setiso_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

template <class W, class T>
std::string write_tmp(const std::string& name, W writer, const T& obj) {
  auto path = work_dir() / name;
  std::ofstream out(path);
  writer(out, obj);
  return path.string();
}

ColoredGraph edges_graph(int n, const std::vector<std::pair<int, int>>& e) {
  ColoredGraph g(n);
  for (auto [u, v] : e)
    g.add_edge(u, v);
  return g;
}

ColoredGraph dodecahedron() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 10; ++i) {
    e.emplace_back(i, (i + 1) % 10);
    e.emplace_back(i, 10 + i);
    e.emplace_back(std::min(10 + i, 10 + (i + 2) % 10), std::max(10 + i, 10 + (i + 2) % 10));
  }
  return edges_graph(20, e);
}

ColoredGraph cube() {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < 8; ++v)
    for (int b = 0; b < 3; ++b)
      if (v < (v ^ (1 << b)))
        e.emplace_back(v, v ^ (1 << b));
  return edges_graph(8, e);
}

ColoredGraph truncated_k4() {
  return edges_graph(8, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 6}, {2, 7}, {4, 6}, {5, 7}, {6, 7}});
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

// ---------------------------------------------------------------- criterion 7

void color_refinement_pipeline(Tally& t) {
  for (int i = 0; i < 500; ++i) {
    std::mt19937_64 rng(9000 + i);
    int n = 1 + static_cast<int>(rng() % 16);
    auto g = random_graph(n, rng, 1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 2),
                          10 + static_cast<int>(rng() % 80));
    t.expect(is_equitable(g, color_refinement(g)), "graph " + std::to_string(i) + ": stable coloring not equitable");
  }
  t.counts["graphs"] = 500;

  ColoredGraph k4(4);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      k4.add_edge(a, b);
  t.expect(tcr_sequence(k4, {0, 1, 2}, 2).discrete, "K4 with three individualized vertices is not discrete");

  auto d = dodecahedron();
  std::mt19937_64 rng(9999);
  auto p = random_perm(20, rng);
  auto da = write_tmp("dodecahedron.cg", io::write_graph, d);
  auto db = write_tmp("dodecahedron_relabelled.cg", io::write_graph, permute_graph(d, p));
  auto r = cli("iso-excluded-minor --h 3 " + da + " " + db);
  t.expect(r.code == 0 && first_line(r.out) == "ISO", "dodecahedron against its relabelling is not ISO");
  t.expect(r.out.find("order 120\n") != std::string::npos, "dodecahedron automorphism order is not 120");

  auto ca = write_tmp("cube.cg", io::write_graph, cube());
  auto cb = write_tmp("truncated_k4.cg", io::write_graph, truncated_k4());
  t.expect(oracle::iso_graphs(oracle::symmetric(8), cube(), truncated_k4()).empty(),
           "oracle finds the cubic pair isomorphic");
  t.expect(is_3_connected(cube()) && is_3_connected(truncated_k4()), "cubic pair is not 3-connected");
  r = cli("iso-excluded-minor --h 3 " + ca + " " + cb);
  t.expect(r.code == 1 && first_line(r.out) == "NONISO", "cube against truncated K4 is not NONISO");

  const int hs[] = {3, 7, 11};
  for (int g = 0; g <= 2; ++g) {
    const std::string gs = std::to_string(g), hs_ = std::to_string(hs[g]);
    t.expect(genus_to_h(g) == hs[g], "genus " + gs + " maps to the wrong h");
    auto by_genus = cli("iso-genus --g " + gs + " " + da + " " + db);
    auto by_h = cli("iso-excluded-minor --h " + hs_ + " " + da + " " + db);
    t.expect(by_genus.code == 0 && by_genus.out == by_h.out,
             "iso-genus --g " + gs + " differs from iso-excluded-minor --h " + hs_);
  }
  t.expect(complete_bipartite_genus(3, 3) == 1, "genus of K_{3,3} is not 1");
  t.expect(complete_bipartite_genus(3, 7) == 2, "genus of K_{3,7} is not 2");
}

// ---------------------------------------------------------------- criterion 8

HfsTerm random_term(int n, int depth, std::mt19937_64& rng) {
  if (depth == 0 || rng() % 4 == 0)
    return HfsTerm::make_atom(static_cast<int>(rng() % n));
  int k = 1 + static_cast<int>(rng() % 3);
  std::vector<HfsTerm> kids;
  for (int i = 0; i < k; ++i)
    kids.push_back(random_term(n, depth - 1, rng));
  if (rng() % 2)
    return HfsTerm::make_tuple(kids);
  std::sort(kids.begin(), kids.end());
  kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
  return HfsTerm::make_set(kids);
}

void hereditarily_finite_sets(Tally& t) {
  std::istringstream in("universe 5\n( { 0 1 2 3 4 } { ( 0 1 ) ( 2 3 ) ( 3 4 ) } { ( 2 0 ) ( 2 3 ) { 0 1 } } )\n");
  auto f = io::read_hfs(in);
  auto enc = hfs_to_graph(f.term, f.universe);
  std::map<Color, int> counts;
  for (int v = 0; v < enc.graph.size(); ++v)
    ++counts[enc.graph.vertex_color(v)];
  t.expect(enc.graph.size() == 14, "five-atom term does not encode to 14 vertices");
  t.expect(counts == std::map<Color, int>{{0, 5}, {1, 4}, {2, 5}}, "five-atom term has the wrong color counts");

  for (int i = 0; i < 500; ++i) {
    std::mt19937_64 rng(10000 + i);
    int n = 1 + static_cast<int>(rng() % 6);
    auto x = random_term(n, 3, rng);
    auto g = rng() % 2 ? random_group(n, rng) : PermGroup::symmetric(n);
    auto y = rng() % 3 == 0 ? random_term(n, 3, rng) : x.apply(random_element(g, rng));
    auto got = iso_hfs(x, y, g);
    auto expect = oracle::iso_hfs(oracle::enumerate(n, g.generators()), x, y);
    t.expect(as_set(got) == as_set(expect), "pair " + std::to_string(i) + ": " + x.str() + " vs " + y.str());
    t.counts["isomorphic"] += !expect.empty();
  }

  auto a = HfsTerm::make_atom(0), b = HfsTerm::make_atom(1);
  t.expect(!iso_hfs(HfsTerm::make_tuple({a, b}), HfsTerm::make_tuple({b, a}), PermGroup::trivial(2)),
           "tuple order swap not detected");
  auto fa = write_tmp("ab.hfs", io::write_hfs, io::HfsFile{2, HfsTerm::make_tuple({a, b})});
  auto fb = write_tmp("ba.hfs", io::write_hfs, io::HfsFile{2, HfsTerm::make_tuple({b, a})});
  auto id2 = write_tmp("id2.grp", io::write_group, PermGroup::trivial(2));
  auto r = cli("iso-hfs --group " + id2 + " " + fa + " " + fb);
  t.expect(r.code == 1 && first_line(r.out) == "NONISO", "CLI misses the tuple order swap");
}

// ---------------------------------------------------------------- criterion 9

void determinism(Tally& t) {
  std::mt19937_64 rng(11000);
  auto s4 = write_tmp("s4.grp", io::write_group, PermGroup::symmetric(4));
  auto w25 = write_tmp("wreath.grp", io::write_group, wreath_2_5());
  auto sa = write_tmp("a.str", io::write_string, std::vector<int>{0, 0, 1, 2});
  auto sb = write_tmp("b.str", io::write_string, std::vector<int>{2, 1, 0, 0});
  auto ha = write_tmp("a.hg", io::write_hypergraph, Hypergraph::make(4, {{0, 1}, {1, 2}, {2, 3}}));
  auto hb = write_tmp("b.hg", io::write_hypergraph, Hypergraph::make(4, {{0, 2}, {1, 3}, {2, 3}}));
  auto hx = random_hypergraph(10, rng);
  auto hfx = hypergraph_to_family(hx);
  auto fx = write_tmp("x.psf", io::write_family, io::FamilyFile{hfx.partition(), hfx.members()});
  auto hfy = hypergraph_to_family(hx.apply(random_element(wreath_2_5(), rng)));
  io::FamilyFile fy{hfy.partition(), hfy.members()};
  auto fyp = write_tmp("y.psf", io::write_family, fy);
  auto ga = write_tmp("g.cg", io::write_graph, random_graph(7, rng, 2, 2));
  auto d = dodecahedron();
  auto da = write_tmp("d.cg", io::write_graph, d);
  auto db = write_tmp("d2.cg", io::write_graph, permute_graph(d, random_perm(20, rng)));
  std::istringstream in("universe 5\n( { 0 1 2 3 4 } { ( 0 1 ) ( 2 3 ) ( 3 4 ) } { ( 2 0 ) ( 2 3 ) { 0 1 } } )\n");
  auto term = io::read_hfs(in);
  auto ta = write_tmp("a.hfs", io::write_hfs, term);
  auto tb = write_tmp("b.hfs", io::write_hfs, io::HfsFile{5, term.term.apply(Perm({1, 0, 2, 4, 3}))});

  const std::vector<std::string> commands = {
      "iso-string --group " + s4 + " " + sa + " " + sb,
      "iso-hyper " + ha + " " + hb,
      "iso-family --group " + w25 + " " + fx + " " + fyp,
      "iso-graph " + ga + " " + ga,
      "iso-hfs " + ta + " " + tb,
      "iso-excluded-minor --h 3 " + da + " " + db,
      "iso-genus --g 1 " + da + " " + db,
      "refine " + da,
      "refine --individualize 0,1,2 --t 2 " + da,
      "normalize --d 2 --group " + w25,
      "certify --group " + w25 + " " + fx + " " + fyp,
      "oracle --kind graph " + ga + " " + ga,
  };
  for (const auto& c : commands) {
    auto base = cli(c, 1);
    t.expect(base.code == 0 && !base.out.empty(), "'" + c + "' failed with exit " + std::to_string(base.code));
    for (int threads : {1, 4})
      for (int rep = 0; rep < 2; ++rep) {
        auto r = cli(c, threads);
        t.expect(r.code == base.code && r.out == base.out,
                 "'" + c + "' differs with " + std::to_string(threads) + " threads");
      }
  }
  t.counts["commands"] = commands.size();
}

} // namespace

int main() {
  run(1, "oracle equivalence", 120, oracle_equivalence);
  run(2, "coset soundness", 120, [](Tally& t) {
    t = soundness;
    if (t.counts["nonempty"] == 0)
      t.failures.push_back("no nonempty answers in criterion 1");
  });
  run(3, "virtual-size inequalities", 10, virtual_size_inequalities);
  run(4, "simplify on window", 60, simplify_on_window_props);
  run(5, "normalization", 60, normalization);
  run(6, "local certificates", 60, local_certificates_check);
  run(7, "color refinement and excluded-minor pipeline", 120, color_refinement_pipeline);
  run(8, "hereditarily finite sets", 60, hereditarily_finite_sets);
  run(9, "determinism", 120, determinism);
  std::error_code ec;
  fs::remove_all(work_dir(), ec);
  std::cout << (failed == 0 ? "all criteria PASS" : std::to_string(failed) + " criteria FAIL") << '\n';
  return failed;
}
