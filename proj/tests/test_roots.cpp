#include <gtest/gtest.h>

#include "uptri/roots.hpp"
#include "uptri/unigroup.hpp"

using namespace uptri;

TEST(Roots, AddRoots) {
  EXPECT_EQ(add_roots({1, 2}, {3, 4}), (Root{1, 4}));
  EXPECT_EQ(add_roots({3, 4}, {1, 2}), (Root{1, 4}));
  EXPECT_FALSE(add_roots({1, 2}, {2, 3}));
  EXPECT_EQ(add_roots({1, 1}, {2, 2}), (Root{1, 2}));
}

TEST(Roots, ArmLegHook) {
  EXPECT_EQ(arm({1, 4}, 6), RootSet(6, {{1, 1}, {1, 2}, {1, 3}}));
  EXPECT_TRUE(arm({3, 3}, 6).empty());
  EXPECT_TRUE(leg({3, 3}, 6).empty());
  EXPECT_EQ(leg({1, 4}, 6), RootSet(6, {{2, 4}, {3, 4}, {4, 4}}));
  EXPECT_EQ(hook({2, 3}, 5), RootSet(5, {{2, 2}, {2, 3}, {3, 3}}));
}

TEST(Roots, Closure) {
  EXPECT_TRUE(is_closed(RootSet::positive(4)));
  EXPECT_FALSE(is_closed(RootSet(4, {{1, 1}, {2, 2}})));
  EXPECT_TRUE(is_closed(RootSet(4, {{1, 1}, {2, 2}, {1, 2}})));
}

TEST(Roots, PositiveCount) {
  for (int n = 2; n <= kMaxN; ++n) EXPECT_EQ(RootSet::positive(n).size(), static_cast<std::size_t>(n * (n - 1) / 2));
}

TEST(Roots, Orders) {
  EXPECT_EQ(cmp_r({2, 3}, {1, 4}), PartialOrdering::less);
  EXPECT_EQ(cmp_b({1, 4}, {2, 3}), PartialOrdering::less);
  EXPECT_EQ(cmp_r({1, 3}, {2, 3}), PartialOrdering::incomparable);
  EXPECT_EQ(cmp_b({2, 3}, {2, 5}), PartialOrdering::incomparable);
}

TEST(Roots, TextForm) {
  EXPECT_EQ(parse_root("1-4"), (Root{1, 4}));
  auto list = parse_root_list("1-4, 2-5,5-6");
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[1], (Root{2, 5}));
  EXPECT_EQ(to_string(list), "1-4,2-5,5-6");
  try {
    parse_root_list("1-4,2x5");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_root("-3"), ParseError);
  EXPECT_THROW(parse_root_list("1-2,,3-4"), ParseError);
}

TEST(Roots, CollectionOrder) {
  auto r = RootSet::positive(4).roots();
  ASSERT_EQ(r.size(), 6u);
  EXPECT_EQ(r[0], (Root{1, 1}));
  EXPECT_EQ(r[3], (Root{1, 2}));
  EXPECT_EQ(r[5], (Root{1, 3}));
}

// add_roots agrees with the support of [x_a(1), x_b(1)] computed by matrix arithmetic.
TEST(Roots, AdditionMatchesCommutatorSupport) {
  for (int q : {2, 3}) {
    Fq F = Fq::from_order(q);
    for (int n = 2; n <= 8; ++n) {
      auto all = RootSet::positive(n).roots();
      for (const auto& a : all)
        for (const auto& b : all) {
          UniMatrix c = commutator(F, root_element(n, a, 1), root_element(n, b, 1));
          RootSet expect(n);
          if (auto s = add_roots(a, b)) expect.insert(*s);
          ASSERT_EQ(c.support(), expect) << to_string(a) << " " << to_string(b);
        }
    }
  }
}
