#include "setiso/normal_forms.hpp"
#include "setiso/oracle.hpp"
#include "setiso/simplify.hpp"
#include "instances.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace setiso;
using namespace setiso::testing;

namespace {

PString from_text(int cls, const std::string& s) {
  PString x{cls, {}};
  for (char c : s)
    x.letters.push_back(c - 'a');
  return x;
}

} // namespace

TEST(Simplify, TwoClassExampleSplitsByWindowRestriction) {
  // P1 = 0..8 with window 0..3, P2 = 9..17 with window 9..11
  std::vector<int> cls(18);
  for (int a = 0; a < 18; ++a)
    cls[a] = a < 9 ? 0 : 1;
  auto p = PPartition::from_class_of(cls);
  std::vector<PString> ms = {from_text(0, "abaaabbab"), from_text(0, "aaababaaa"), from_text(0, "aaabaaaba"),
                             from_text(0, "abaaababa"), from_text(1, "aabbbbbaa"), from_text(1, "abaaaaabb"),
                             from_text(1, "abaaabaab"), from_text(1, "abaabaabb")};
  PStringFamily x(p, ms);
  auto g = PermGroup::trivial(18);
  auto chain = chain_through(g, p);
  std::vector<int> w = {0, 1, 2, 3, 9, 10, 11};
  auto res = simplify_on_window(g, p, {x}, w, chain, 2);
  ASSERT_FALSE(res.identity);
  ASSERT_EQ(res.classes.size(), 1u);
  const auto& c = res.classes[0];
  EXPECT_EQ(c.n, 36);
  auto m = c.families[0].multiplicities();
  std::sort(m.begin(), m.end());
  EXPECT_EQ(m, (std::vector<int>{1, 2, 2, 3}));
  EXPECT_TRUE(restrict_family(c.families[0], c.window).is_simple());
  EXPECT_EQ(c.window.size(), 2u * 4 + 2u * 3);
}

TEST(Simplify, SimpleWindowIsLeftAlone) {
  std::mt19937_64 rng(7);
  auto g = PermGroup(4, {P({1, 0, 2, 3})});
  auto p = PPartition::from_class_of({0, 0, 1, 1});
  PStringFamily x(p, {PString{0, {1, 1}}, PString{1, {0, 1}}, PString{1, {1, 0}}});
  auto chain = chain_through(g, p);
  auto res = simplify_on_window(g, p, {x, x}, {0, 1}, chain, certified_degree(chain, g));
  EXPECT_TRUE(res.identity);
  ASSERT_EQ(res.classes.size(), 1u);
  EXPECT_EQ(res.classes[0].families[0], x);
  EXPECT_EQ(res.classes[0].lambda[1], Perm::identity(4));
}

TEST(Simplify, DifferentOccupancyGivesDifferentClasses) {
  auto g = PermGroup::trivial(4);
  auto p = PPartition::from_class_of({0, 0, 0, 0});
  PStringFamily x(p, {PString{0, {0, 0, 0, 0}}, PString{0, {0, 0, 1, 1}}});
  PStringFamily y(p, {PString{0, {0, 0, 0, 0}}, PString{0, {1, 0, 0, 0}}, PString{0, {0, 0, 1, 1}}});
  auto chain = chain_through(g, p);
  auto res = simplify_on_window(g, p, {x, y}, {2, 3}, chain, 2);
  EXPECT_FALSE(res.identity);
  EXPECT_EQ(res.classes.size(), 2u);
}

TEST(Simplify, RejectsBadInput) {
  auto g = PermGroup(4, {P({1, 0, 2, 3})});
  auto p = PPartition::from_class_of({0, 0, 1, 1});
  auto chain = chain_through(g, p);
  PStringFamily x(p, {PString{0, {0, 0}}, PString{0, {1, 1}}, PString{1, {0, 0}}});
  PStringFamily y(p, {PString{0, {0, 0}}, PString{1, {0, 0}}});
  EXPECT_THROW(simplify_on_window(g, p, {x, y}, {0, 1}, chain, 2), std::invalid_argument);
  PStringFamily z(p, {PString{0, {0, 1}}, PString{1, {0, 0}}});
  EXPECT_THROW(simplify_on_window(g, p, {z}, {0, 1}, chain, 2), std::invalid_argument);
  EXPECT_THROW(simplify_on_window(g, p, {x}, {0, 2}, chain, 2), std::invalid_argument);
}

TEST(Simplify, RandomInstancesKeepIsomorphismsAndShrink) {
  std::mt19937_64 rng(2024);
  int nontrivial = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const int n = 3 + static_cast<int>(rng() % 6);
    auto in = random_instance(n, 3, rng);
    if (in.g.order() > 1000)
      continue;
    auto chain = chain_through(in.g, in.p);
    const int d = certified_degree(chain, in.g);
    auto res = simplify_on_window(in.g, in.p, in.fams, in.w, chain, d);
    if (!res.identity)
      ++nontrivial;
    std::vector<int> class_of(in.fams.size(), -1), pos(in.fams.size(), -1);
    for (std::size_t ci = 0; ci < res.classes.size(); ++ci)
      for (std::size_t t = 0; t < res.classes[ci].members.size(); ++t) {
        class_of[res.classes[ci].members[t]] = static_cast<int>(ci);
        pos[res.classes[ci].members[t]] = static_cast<int>(t);
      }
    auto all = sorted_elements(in.g);
    for (const auto& c : res.classes) {
      for (std::size_t t = 0; t < c.members.size(); ++t) {
        const auto& xs = c.families[t];
        const auto& x = in.fams[c.members[t]];
        auto ws = on_support(xs, c.window);
        EXPECT_TRUE(ws.empty() || restrict_family(xs, ws).is_simple()) << iter;
        EXPECT_LE(virtual_size(xs, {d}), virtual_size(x, {d})) << iter;
        EXPECT_LE(vsize_outside(xs, c.window, d), vsize_outside(x, in.w, d)) << iter;
        EXPECT_TRUE(in.g.contains(c.lambda[t])) << iter;
      }
    }
    for (std::size_t i = 0; i < in.fams.size(); ++i)
      for (std::size_t j = 0; j < in.fams.size(); ++j) {
        auto expect = as_set(oracle::iso_families(all, in.fams[i], in.fams[j]));
        if (class_of[i] != class_of[j]) {
          EXPECT_TRUE(expect.empty()) << iter;
          continue;
        }
        const auto& c = res.classes[class_of[i]];
        auto star = oracle::iso_families(sorted_elements(c.group), c.families[pos[i]], c.families[pos[j]]);
        std::set<Perm> got;
        for (const auto& e : star)
          got.insert(c.lambda[pos[i]].inverse() * c.phi(e) * c.lambda[pos[j]]);
        EXPECT_EQ(got, expect) << iter << " " << i << " " << j;
        IsoCoset cs;
        if (!star.empty())
          cs = Coset{c.group, star[0]};
        if (!star.empty()) {
          std::vector<Perm> aut_gens;
          for (const auto& e : oracle::iso_families(sorted_elements(c.group), c.families[pos[i]],
                                                    c.families[pos[i]]))
            aut_gens.push_back(e);
          cs = Coset{PermGroup(c.n, aut_gens), star[0]};
          EXPECT_EQ(as_set(c.pull_back(cs, pos[i], pos[j])), expect) << iter;
        }
      }
  }
  EXPECT_GT(nontrivial, 40);
}
