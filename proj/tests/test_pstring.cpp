#include "setiso/pstring.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace setiso;
using namespace setiso::testing;

TEST(PStringTest, MakeFamilyExamples) {
  auto f = make_family(PPartition::trivial(3), {{0, {0, 1, 0}}, {0, {1, 1, 0}}});
  EXPECT_EQ(f.multiplicity(0), 2);
  auto s = make_family(PPartition::singletons(3), {{0, {4}}, {1, {5}}, {2, {4}}});
  EXPECT_TRUE(s.is_simple());
  auto part = PPartition::from_class_of({0, 0, 1});
  auto padded = make_family(part, {{0, {2, 3}}});
  EXPECT_TRUE(padded.completely_occupied());
  EXPECT_EQ(padded.multiplicity(1), 1);
  ASSERT_TRUE(padded.sentinel().has_value());
  EXPECT_EQ(*padded.sentinel(), 4);
  EXPECT_THROW(make_family(part, {{0, {1}}}), std::invalid_argument);
  EXPECT_THROW(make_family(part, {{0, {1, 1}}, {0, {1, 1}}}), std::invalid_argument);
}

TEST(PStringTest, PairPaddingSharesSentinel) {
  auto part = PPartition::from_class_of({0, 1});
  auto [x, y] = make_family_pair(part, {{0, {7}}}, {{0, {2}}});
  EXPECT_EQ(x.sentinel(), y.sentinel());
  EXPECT_EQ(*x.sentinel(), 8);
}

TEST(PStringTest, RestrictExamples) {
  auto part = PPartition::from_class_of({0, 0, 0, 1});
  auto f = make_family(part, {{0, {1, 2, 3}}, {0, {1, 2, 4}}, {1, {0}}});
  EXPECT_EQ(restrict_family(f, {0, 1, 2, 3}), f);
  auto r = restrict_family(f, {0, 1, 3});
  EXPECT_EQ(r.multiplicity(0), 1); // strings differing only at point 2 collapse
  EXPECT_EQ(r.size(), 2u);
  auto only = restrict_family(f, {0, 1});
  EXPECT_EQ(only.partition().classes.size(), 1u);
  EXPECT_THROW(restrict_family(f, {}), std::invalid_argument);
}

TEST(PStringTest, VirtualSizeExamples) {
  auto part = PPartition::from_class_of({0, 0, 1, 1, 1});
  auto f = make_family(part, {{0, {0, 1}}, {0, {1, 0}}, {1, {0, 0, 0}}});
  EXPECT_EQ(virtual_size(f, {2}), 11);
  EXPECT_EQ(funcnorm(2), 1);
  EXPECT_EQ(funcnorm(1), 1);
  EXPECT_EQ(funcnorm(5), 3);
  auto s = make_family(PPartition::singletons(4), {{0, {1}}, {1, {1}}, {2, {1}}, {3, {1}}});
  EXPECT_EQ(virtual_size(s, {16}), 4);
  std::mt19937_64 rng(3);
  auto bp = PPartition::from_class_of({0, 0, 1, 1, 2, 2});
  auto bal = make_family(bp, balanced_members(bp, 3, 2, rng));
  ASSERT_TRUE(bal.is_balanced());
  EXPECT_EQ(virtual_size(bal, {4}), 6 * 27);
}

TEST(PStringTest, VirtualSizeInequalities) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 300; ++t) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto part = random_partition(n, rng);
    auto f = make_family(part, random_members(part, 8, 3, rng));
    VirtualSizeConfig cfg{1 + static_cast<int>(rng() % 8)};
    std::vector<int> w1, w2;
    for (int a = 0; a < n; ++a)
      (rng() % 2 ? w1 : w2).push_back(a);
    auto vs = [&](const std::vector<int>& w) { return w.empty() ? BigInt(0) : virtual_size(restrict_family(f, w), cfg); };
    EXPECT_LE(vs(w1) + vs(w2), virtual_size(f, cfg));
    if (!w1.empty() && !w2.empty()) {
      std::vector<int> bigger = w1;
      bigger.push_back(w2[0]);
      std::sort(bigger.begin(), bigger.end());
      EXPECT_LT(vs(w1), vs(bigger));
    }
  }
}

TEST(PStringTest, BalancedBound) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 200; ++t) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto part = random_partition(n, rng);
    auto f = make_family(part, balanced_members(part, 1 + static_cast<int>(rng() % 3), 3, rng));
    if (!f.is_balanced())
      continue;
    std::vector<int> w;
    for (int a = 0; a < n; ++a)
      if (rng() % 2)
        w.push_back(a);
    if (w.empty())
      continue;
    VirtualSizeConfig cfg{2};
    EXPECT_LE(virtual_size(restrict_family(f, w), cfg) * n, BigInt(w.size()) * virtual_size(f, cfg));
  }
}

TEST(PStringTest, HypergraphRoundTrip) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + static_cast<int>(rng() % 7);
    std::set<std::vector<int>> es;
    int m = static_cast<int>(rng() % 6);
    for (int i = 0; i < m; ++i) {
      std::vector<int> e;
      for (int a = 0; a < n; ++a)
        if (rng() % 2)
          e.push_back(a);
      es.insert(e);
    }
    auto h = Hypergraph::make(n, {es.begin(), es.end()});
    EXPECT_EQ(characteristic_to_hypergraph(hypergraph_to_family(h)), h);
  }
}

TEST(PStringTest, StringsToHypergraphCommutesWithAction) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    int n = 1 + static_cast<int>(rng() % 6);
    auto f = PStringFamily(PPartition::trivial(n), random_members(PPartition::trivial(n), 5, 3, rng), false);
    Perm g = random_perm(n, rng);
    std::vector<int> alphabet{0, 1, 2};
    auto lhs = strings_to_hypergraph(f.apply(g), alphabet);
    auto rhs = strings_to_hypergraph(f, alphabet).apply(lift_to_pairs(g, 3));
    EXPECT_EQ(lhs, rhs);
  }
}
