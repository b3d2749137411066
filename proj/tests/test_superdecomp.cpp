#include <gtest/gtest.h>

#include <map>
#include <set>

#include "uptri/superdecomp.hpp"

using namespace uptri;

namespace {

constexpr std::uint64_t kBudget = 1u << 20;

const std::vector<Root> kU13 = {{1, 4}, {2, 5}, {5, 6}, {6, 7}, {7, 8}, {3, 9}, {4, 10}, {8, 11}, {9, 12}};

std::shared_ptr<const Fq> field(int q) { return std::make_shared<const Fq>(Fq::from_order(q)); }

PhiAssignment ones(const BasicSet& D) { return PhiAssignment(static_cast<std::size_t>(D.k()), 1); }

// Independent census: decompose xi_{D,phi} against the character table of all of U and
// bucket constituents by (degree exponent, multiplicity exponent).
std::map<std::pair<int, int>, std::uint64_t> census_from_full_table(std::shared_ptr<const PatternQuotient> U, GroupPtr G,
                                                                     const CharacterTable& T, const BasicSet& D,
                                                                     const PhiAssignment& phi) {
  std::map<std::pair<int, int>, std::uint64_t> out;
  const int q = U->field().q();
  for (const auto& c : decompose(induce(lambda_D(U, D, phi), G), T)) {
    const auto deg = static_cast<std::uint64_t>(T.irr[c.index].degree().numerator());
    ++out[{detail::log_q(deg, q), detail::log_q(static_cast<std::uint64_t>(c.multiplicity), q)}];
  }
  return out;
}

std::map<std::pair<int, int>, std::uint64_t> buckets(const ConstituentCensus& c) {
  std::map<std::pair<int, int>, std::uint64_t> out;
  for (const auto& r : c.records) out[{r.degree_exp, r.mult_exp}] += r.count;
  return out;
}

}  // namespace

TEST(Reduce, SingleRootHasTrivialR) {
  BasicSet D(3, {{1, 2}});
  auto P = reduce(D, {1}, field(2));
  EXPECT_TRUE(P.R.empty());
  EXPECT_EQ(P.index_exp, 1);
  auto c = census(D, {1}, 2);
  ASSERT_EQ(c.records.size(), 1u);
  EXPECT_EQ(c.records[0], (CensusRecord{1, 0, 1, true}));
  EXPECT_EQ(c.provenance, Strategy::structural);
}

TEST(Reduce, ThirteenSample) {
  BasicSet D(13, kU13);
  auto P = reduce(D, ones(D), field(2));
  EXPECT_EQ(P.index_exp, 12);
  EXPECT_EQ(P.arm_exp, 27);
  EXPECT_EQ(P.R.size(), 30u);
  EXPECT_EQ(P.Vc.size(), 15u);
  EXPECT_EQ(P.Kc.size(), 10u);
  EXPECT_EQ(P.mu_roots.size(), 5u);
  EXPECT_EQ(P.quotient()->rank(), 20);
  EXPECT_EQ(P.norm_exp, 15);
}

TEST(Reduce, RejectsBadPhi) {
  BasicSet D(4, {{1, 2}, {2, 3}});
  EXPECT_THROW(reduce(D, {1}, field(3)), std::invalid_argument);
  EXPECT_THROW(reduce(D, {1, 0}, field(3)), std::invalid_argument);
  EXPECT_THROW(reduce(D, {1, 3}, field(3)), std::invalid_argument);
}

TEST(Census, FirstFamilyIsSpecial) {
  for (auto [k, n, q] : std::vector<std::tuple<int, int, int>>{{2, 5, 2}, {2, 5, 3}, {3, 7, 2}, {2, 6, 4}}) {
    const BasicSet D = d1_family(k, n);
    auto c = census(D, ones(D), q);
    EXPECT_EQ(c.provenance, Strategy::special);
    ASSERT_EQ(c.records.size(), 1u);
    EXPECT_EQ(c.records[0].count, 1u);
    EXPECT_EQ(c.records[0].mult_exp, k - 1);
    EXPECT_EQ(c.records[0].degree_exp, (k - 1) + c.index_exp);
    EXPECT_EQ(census(D, ones(D), q, Strategy::oracle).records, c.records);

    auto P = reduce(D, ones(D), field(q));
    auto Rbar = P.quotient();
    EXPECT_TRUE(P.Kc.empty());
    Group R(Rbar, kBudget);
    EXPECT_EQ(is_special(R, kBudget), k - 1);
    // V cap R is the root subgroup of alpha_{1,k}, which is the centre.
    EXPECT_EQ(P.Vc, localize(D, RootSet(n, {{1, k}})));
    EXPECT_EQ(center(R, kBudget), Group::pattern(Rbar, P.Vc, kBudget));
  }
}

TEST(Census, FirstFamilyDegreeReport) {
  auto r = d1_degree_report(3, 7, 2);
  EXPECT_EQ(r.computed_exp, 6);
  EXPECT_EQ(r.additive_reading_exp, 2u + 16u);
}

TEST(Census, SecondFamilyHasOneConstituent) {
  for (auto [m, n, q] : std::vector<std::tuple<int, int, int>>{{1, 3, 2}, {1, 3, 3}, {2, 5, 2}, {2, 5, 3}, {3, 7, 2}, {4, 9, 2}}) {
    const BasicSet D = d2_family(m, n);
    auto c = census(D, ones(D), q);
    EXPECT_EQ(c.total(), 1u) << m;
    if (m >= 3) {
      EXPECT_EQ(c.provenance, Strategy::recursion);
    }
    if (m <= 3) {
      EXPECT_EQ(census(D, ones(D), q, Strategy::oracle).records, c.records) << m;
    }
  }
  const BasicSet D = d2_family(3, 7);
  EXPECT_EQ(census(D, ones(D), 2, Strategy::recursion).records, census(D, ones(D), 2, Strategy::oracle).records);
  EXPECT_THROW(census(d1_family(3, 7), {1, 1, 1, 1}, 2, Strategy::recursion), std::invalid_argument);
}

TEST(Census, EmptyGammaIsIrreducible) {
  for (const auto& D : all_basic_sets(5))
    if (gamma_set(D).empty()) {
      auto c = census(D, ones(D), 3);
      ASSERT_EQ(c.records.size(), 1u);
      EXPECT_EQ(c.records[0].mult_exp, 0);
      EXPECT_EQ(c.records[0].count, 1u);
    }
}

// Shortcut strategies agree with the oracle on the reduced problem.
TEST(Census, AutomaticAgreesWithOracle) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{4, 2}, {4, 3}, {5, 2}, {5, 3}, {6, 2}, {7, 2}}) {
    auto F = field(q);
    for (const auto& D : all_basic_sets(n)) {
      auto a = census(D, ones(D), F);
      auto o = census(D, ones(D), F, Strategy::oracle);
      ASSERT_EQ(a.records, o.records) << to_string(D);
      ASSERT_TRUE(a.invariants_hold());
    }
  }
}

// The reduced census against a decomposition in the character table of U itself.
TEST(Census, AgreesWithFullGroupTable) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{4, 2}, {4, 3}, {5, 2}}) {
    auto F = field(q);
    auto U = std::make_shared<const PatternQuotient>(F, PatternGroup::full(n));
    auto G = EnumeratedGroup::make(Group(U, kBudget), Budgets{});
    const CharacterTable T = character_table(G);
    for (const auto& D : all_basic_sets(n))
      for (const auto& phi : all_phis(*F, D.k())) ASSERT_EQ(buckets(census(D, phi, F)), census_from_full_table(U, G, T, D, phi)) << to_string(D);
  }
}

TEST(Census, BudgetErrorCarriesNorm) {
  BasicSet D(13, kU13);
  Budgets tiny;
  tiny.table_order = 1024;
  try {
    census(D, ones(D), 2, Strategy::oracle, tiny);
    FAIL();
  } catch (const CensusBudgetError& e) {
    EXPECT_EQ(e.norm_exp(), 15);
  }
  EXPECT_THROW(census(D, ones(D), 2, Strategy::automatic, tiny), CensusBudgetError);
}

TEST(Ladder, SingleArmRoot) {
  auto F = field(2);
  auto U = std::make_shared<const PatternQuotient>(F, PatternGroup::full(3));
  BasicSet D(3, {{1, 2}});
  auto chis = vr_constituents(U, D, {1});
  ASSERT_EQ(chis.size(), 1u);
  auto cert = ladder_induce(chis[0], D, {1});
  ASSERT_EQ(cert.steps.size(), 1u);
  EXPECT_EQ(cert.steps[0].beta, (Root{1, 1}));
  EXPECT_EQ(cert.steps[0].delta, (Root{2, 2}));
  EXPECT_EQ(cert.induced.degree(), Rational(2));
}

// Certificates for every constituent of every supercharacter, checked against the oracle.
TEST(Ladder, AgreesWithOracle) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{4, 2}, {4, 3}, {5, 2}}) {
    auto F = field(q);
    auto U = std::make_shared<const PatternQuotient>(F, PatternGroup::full(n));
    auto G = EnumeratedGroup::make(Group(U, kBudget), Budgets{});
    const CharacterTable T = character_table(G);
    for (const auto& D : all_basic_sets(n)) {
      const PhiAssignment phi = ones(D);
      const int steps = reduce(D, phi, F).index_exp;
      std::set<std::size_t> from_ladder, from_oracle;
      for (const auto& chi : vr_constituents(U, D, phi)) {
        auto cert = ladder_induce(chi, D, phi, Budgets{}, G);
        ASSERT_EQ(static_cast<int>(cert.steps.size()), steps);
        std::optional<std::size_t> hit;
        for (std::size_t i = 0; i < T.size(); ++i)
          if (T.irr[i] == cert.induced) hit = i;
        ASSERT_TRUE(hit) << to_string(D);
        EXPECT_TRUE(from_ladder.insert(*hit).second) << "two constituents induce to the same character";
      }
      for (const auto& c : decompose(induce(lambda_D(U, D, phi), G), T)) from_oracle.insert(c.index);
      EXPECT_EQ(from_ladder, from_oracle) << to_string(D);
    }
  }
}

TEST(Ladder, RejectsForeignCharacters) {
  auto F = field(2);
  auto U = std::make_shared<const PatternQuotient>(F, PatternGroup::full(4));
  BasicSet D(4, {{1, 2}});
  auto VR = EnumeratedGroup::make(Group::pattern(U, vr_pattern(D), kBudget), Budgets{});
  EXPECT_THROW(ladder_induce(ClassFunction::trivial(VR), D, {1}), std::invalid_argument);
  auto G = EnumeratedGroup::make(Group(U, kBudget), Budgets{});
  EXPECT_THROW(ladder_induce(ClassFunction::trivial(G), D, {1}), std::invalid_argument);
}

TEST(Partition, SmallGroups) {
  for (auto [n, q, irr] : std::vector<std::tuple<int, int, std::size_t>>{{3, 2, 5}, {4, 2, 16}, {4, 3, 0}}) {
    auto r = partition_check(n, field(q));
    EXPECT_TRUE(r.ok()) << n << " " << q;
    if (irr) {
      EXPECT_EQ(r.irreducibles, irr);
    }
    EXPECT_EQ(r.covered_once + 1, r.irreducibles);
  }
}

TEST(PhiIndependence, Examples) {
  EXPECT_TRUE(phi_independence_check(BasicSet(3, {{1, 2}}), field(3)));
  EXPECT_TRUE(phi_independence_check(d1_family(2, 5), field(3)));
  EXPECT_TRUE(phi_independence_check(BasicSet(5, {{1, 2}, {2, 4}}), field(2)));
  for (const auto& D : all_basic_sets(5)) EXPECT_TRUE(phi_independence_check(D, field(3))) << to_string(D);
}
