#include <gtest/gtest.h>

#include "u13_oracle.hpp"
#include "uptri/u13.hpp"

using namespace uptri;
using namespace uptri::u13;

namespace {

template <class T>
std::vector<T> sorted(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

const Branch& branch(const std::vector<Branch>& L, const std::string& label) {
  for (const Branch& b : L)
    if (b.label == label) return b;
  throw std::out_of_range(label);
}

}  // namespace

TEST(PolyQ, Arithmetic) {
  const PolyQ q = PolyQ::q();
  EXPECT_EQ((q - 1) * (q + 1), q.pow(2) - 1);
  EXPECT_EQ(PolyQ::monomial_form(2, 3).eval(3), 4 * 27);
  EXPECT_EQ((PolyQ(4) * q.pow(4) - PolyQ(3) * q.pow(3)).to_string(), "4q^4 - 3q^3");
  EXPECT_EQ(PolyQ(-1).to_string(), "-1");
  EXPECT_EQ(PolyQ().to_string(), "0");
  EXPECT_EQ(factored_string(4, 1), "(q-1)^4 q");
  EXPECT_EQ(factored_string(0, 0), "1");
  EXPECT_THROW(q.pow(70).eval(2), std::overflow_error);
}

TEST(Sample, Shape) {
  for (int q : {2, 3}) {
    const ReducedProblem P = sample2_problem(field(q));
    EXPECT_EQ(P.R.size(), 30u);
    EXPECT_EQ(P.Kc.size(), 10u);
    EXPECT_EQ(P.Vc.size(), 15u);
    EXPECT_EQ(P.quotient()->rank(), 20);
    EXPECT_EQ(P.quotient()->rank() - static_cast<int>(star_roots().size()), 15);
    EXPECT_EQ(P.index_exp, 12);
    EXPECT_EQ(P.mu_roots, star_roots());
  }
  EXPECT_EQ(w_matrix(sample_set()).perm, (std::vector<int>{1, 2, 5, 6, 7, 3, 4, 8, 9}));
}

// The nine roots listed as central are central only after alpha_{1,3} and alpha_{3,8} are
// factored out; in R/Kc itself alpha_{1,2} brackets with alpha_3 onto alpha_{1,3}, and so on.
TEST(Sample, Centers) {
  const ReducedProblem P = sample2_problem(field(2));
  std::vector<Root> seven = star_roots();
  seven.push_back(al(1, 3));
  seven.push_back(al(3, 8));
  EXPECT_EQ(sorted(sample_quotient(P, {})->central_roots().roots()), sorted(seven));
  std::vector<Root> nine = star_roots();
  nine.insert(nine.end(), case4_roots().begin(), case4_roots().end());
  EXPECT_EQ(sorted(sample_quotient(P, lambda1_roots())->central_roots().roots()), sorted(nine));

  const auto Rbar = sample_quotient(P, {});
  for (auto [c, g, s] : std::vector<std::tuple<Root, Root, Root>>{{al(1, 2), al(3), al(1, 3)},
                                                                  {al(2, 3), al(1), al(1, 3)},
                                                                  {al(3, 7), al(8), al(3, 8)},
                                                                  {al(4, 8), al(3), al(3, 8)}})
    EXPECT_EQ(Rbar->commutator(Rbar->element(c, 1), Rbar->element(g, 1)), Rbar->element(s, 1)) << to_string(c);
}

TEST(Sample, SpecialSubgroupsFormACycle) {
  const ReducedProblem P = sample2_problem(field(3));
  const auto S = special_subgroups(*sample_quotient(P, lambda1_roots()));
  ASSERT_EQ(S.size(), 9u);
  const auto& cyc = cycle_roots();
  for (std::size_t i = 0; i < 9; ++i) {
    const Root &a = cyc[i], &b = cyc[(i + 1) % 9];
    EXPECT_EQ(std::count_if(S.begin(), S.end(), [&](const SpecialSubgroup& s) {
                return (s.left == a && s.right == b) || (s.left == b && s.right == a);
              }),
              1);
  }
}

TEST(Sample, NilpotencyClass) {
  for (int q : {2, 3}) {
    const ReducedProblem P = sample2_problem(field(q));
    const auto Rbar = sample_quotient(P, {});
    const auto G4 = sample_quotient(P, lambda1_roots());
    EXPECT_EQ(root_nilpotency_class(*Rbar), 3);
    EXPECT_EQ(measured_nilpotency_class(*Rbar), 3);
    EXPECT_EQ(root_nilpotency_class(*G4), 2);
    EXPECT_EQ(measured_nilpotency_class(*G4), 2);
  }
}

TEST(Ledger, Coverage) {
  for (int q : {2, 3, 4}) {
    const auto rep = ledger_coverage(case_ledger(), *field(q));
    EXPECT_TRUE(rep.ok()) << q;
    EXPECT_EQ(rep.assignments, static_cast<std::uint64_t>(q * q * q * q * q * q));
  }
  EXPECT_EQ(ledger_coverage(case_ledger(), *field(2)).lambda1_sum, PolyQ::q().pow(2));
  // A representative stands in for several decision patterns, so coverage has gaps.
  EXPECT_FALSE(ledger_coverage(case_ledger(Variants::representative), *field(2)).ok());
}

TEST(Ledger, BranchShapes) {
  const auto L = case_ledger();
  EXPECT_EQ(L.size(), 5u + 16u);
  const Branch& one = branch(L, "1");
  EXPECT_EQ(one.T.size(), 15u);
  EXPECT_EQ(one.free_params(), 8);
  EXPECT_EQ(one.C, (std::vector<Root>{al(1), al(3), al(6), al(8), al(2, 4)}));
  EXPECT_EQ(sorted(branch(L, "2a").C), sorted(std::vector<Root>{al(1), al(3), al(5), al(7), al(4, 7)}));
  EXPECT_EQ(sorted(branch(L, "3a").C), sorted(std::vector<Root>{al(2), al(3), al(6), al(8), al(2, 4)}));
  const Branch& e = branch(L, "4e[1-2,2-3,3-7,4-8]");
  EXPECT_EQ(e.inertia_exp, 1);
  EXPECT_EQ(e.count(), PolyQ::monomial_form(4, 1));
  EXPECT_EQ(e.degree_exp(), 4);
}

TEST(Ledger, MassIdentity) {
  EXPECT_EQ(census_symbolic().mass(), PolyQ::q().pow(15));
  EXPECT_EQ(census_symbolic(Variants::representative).mass(), PolyQ::q().pow(15));
  EXPECT_EQ(expected_closed_forms().mass(), PolyQ::q().pow(15));
}

TEST(Ledger, ClosedFormsAtTwo) {
  EXPECT_EQ(expected_closed_forms().counts_at(2), (std::vector<std::int64_t>{40, 54, 16}));
  EXPECT_EQ(expected_closed_forms().total().eval(2), 110);
}

// Reusing the alpha_{1,2} chain for every variant of subcase b reproduces the closed forms.
TEST(Ledger, SymmetryShortcutReproducesClosedForms) {
  const SymbolicCensus rep = census_symbolic(Variants::representative);
  EXPECT_EQ(rep.records, expected_closed_forms().records);
  EXPECT_NO_THROW(require_closed_forms(rep));
}

// Running every variant: alpha_{2,3} or alpha_{3,7} alone leaves one odd path in the cycle,
// so those variants give q constituents of degree q^4 rather than q^3 of degree q^3.
TEST(Ledger, ExplicitVariantsDifferFromClosedForms) {
  const PolyQ q = PolyQ::q();
  const SymbolicCensus c = census_symbolic();
  ASSERT_EQ(c.records.size(), 3u);
  EXPECT_EQ(c.records[0].count, q.pow(3) * (PolyQ(2) * q - 1));
  EXPECT_EQ(c.records[1].count, q * (q - 1) * (PolyQ(3) * q.pow(3) + q.pow(2) + q - 1));
  EXPECT_EQ(c.records[2].count, expected_closed_forms().records[2].count);
  EXPECT_EQ(c.counts_at(2), (std::vector<std::int64_t>{24, 58, 16}));
  EXPECT_THROW(require_closed_forms(c), InconsistencyError);

  std::map<std::string, int> deg;
  for (const auto& v : subcase_degrees("4b")) deg[v.label] = v.degree_exp;
  EXPECT_EQ(deg, (std::map<std::string, int>{{"4b[1-2]", 3}, {"4b[2-3]", 4}, {"4b[3-7]", 4}, {"4b[4-8]", 3}}));
  for (const std::string fam : {"4c", "4d"})
    for (const auto& v : subcase_degrees(fam)) EXPECT_EQ(v.degree_exp, 4) << v.label;
}

// Independent of the ledger: irreducible counts of the case-4 quotient over each central
// character at q = 2, from class translation.
TEST(Oracle, CaseFourCountsAtTwo) {
  const auto F = field(2);
  const ReducedProblem P = sample2_problem(F);
  std::vector<Root> Z = star_roots();
  Z.insert(Z.end(), case4_roots().begin(), case4_roots().end());
  const auto counts = oracle::counts_over_central(sample_quotient(P, lambda1_roots()), Z);
  const unsigned stars = (1u << star_roots().size()) - 1;
  long long total = 0;
  for (const Branch& b : case_ledger()) {
    if (b.family[0] != '4') continue;
    unsigned nu = stars;
    for (std::size_t i = 0; i < case4_roots().size(); ++i)
      if (b.decisions.at(case4_roots()[i]) == Decision::nonzero) nu |= 1u << (star_roots().size() + i);
    EXPECT_EQ(counts.at(nu), b.count().eval(2)) << b.label;
    total += counts.at(nu);
  }
  EXPECT_EQ(total, 50);
}

TEST(Verify, AllBranchesAtTwoExhaustive) {
  const CaseReport rep = verify_cases(2);
  for (const auto& f : rep.failures()) ADD_FAILURE() << f.subject << ": " << f.claim << ": " << f.detail;
  EXPECT_TRUE(rep.ok());
  for (const auto& b : rep.branches) EXPECT_TRUE(b.exhaustive) << b.label;
  EXPECT_EQ(rep.branches.size(), 21u);
}

TEST(Verify, AllBranchesAtThreeSampled) {
  VerifyOptions o;
  o.samples = 128;
  o.seed = 7;
  const CaseReport rep = verify_cases(3, o);
  for (const auto& f : rep.failures()) ADD_FAILURE() << f.subject << ": " << f.claim << ": " << f.detail;
  for (const auto& b : rep.branches) EXPECT_GE(b.lambdas, 100u) << b.label;
}

TEST(Verify, AllBranchesAtFour) {
  VerifyOptions o;
  o.samples = 32;
  const CaseReport rep = verify_cases(4, o);
  for (const auto& f : rep.failures()) ADD_FAILURE() << f.subject << ": " << f.claim << ": " << f.detail;
  EXPECT_THROW(verify_cases(5), std::invalid_argument);
}

// A chain that is not abelian modulo the kernel is reported, not accepted.
TEST(Verify, X7ChainFailsInSubcaseB) {
  const ReducedProblem P = sample2_problem(field(2));
  Branch b = branch(case_ledger(), "4b[1-2]");
  std::replace(b.T.begin(), b.T.end(), al(4, 7), al(7));
  std::replace(b.C.begin(), b.C.end(), al(7), al(4, 7));
  const BranchReport r = verify_branch(b, P);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(std::any_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.claim == "[T,T] = 1" && !c.ok; }));
}

TEST(Inertia, Element) {
  const auto F = field(3);
  RootValues s;
  for (const Root& r : star_roots()) s[r] = 2;
  for (const Root& r : case4_roots()) s[r] = 1;
  EXPECT_TRUE(inertia_element(*F, s, 0).is_identity());
  const UniMatrix x = inertia_element(*F, s, 1);
  EXPECT_EQ(x.support().size(), 5u + 1u);  // five factors plus the alpha_{2,3} entry of x_2 x_3
  RootValues bad = s;
  bad[al(3, 7)] = 0;
  EXPECT_THROW(inertia_element(*F, bad, 1), std::invalid_argument);
  bad.erase(al(3, 7));
  EXPECT_THROW(inertia_element(*F, bad, 1), std::invalid_argument);
}

// Over F_4 the s-values need not square to 1, which separates s67/s78 from its inverse.
TEST(Inertia, SquareOverF4) {
  const auto F = field(4);
  RootValues s;
  Elem v = 1;
  for (const Root& r : star_roots()) s[r] = v = v % 3 + 1;
  for (const Root& r : case4_roots()) s[r] = v = v % 3 + 1;
  const Elem c = square_coefficient(*F, s);
  ASSERT_NE(c, 0u);
  for (Elem a = 1; a < 4; ++a) {
    const UniMatrix x = inertia_element(*F, s, a);
    EXPECT_EQ(mul(*F, x, x), root_element(9, al(2, 3), F->mul(c, F->mul(a, a)))) << a;
  }
}

// [I : Q_3] = q, and I has order q^{14} while the pattern group on its support is larger.
TEST(Inertia, IndexOverQ3AndNotPattern) {
  for (int q : {2, 3}) {
    const auto F = field(q);
    const ReducedProblem P = sample2_problem(F);
    const auto G = sample_quotient(P, lambda1_roots());
    const auto L = case_ledger();
    const Branch& e = L.back();
    RootValues s;
    for (const Root& r : e.T) s[r] = 1;
    std::vector<Code> gens;
    for (const Root& r : e.T)
      for (Elem b : F->additive_basis()) gens.push_back(G->element(r, b));
    for (Elem b : F->additive_basis()) gens.push_back(G->encode(inertia_element(*F, s, b)));
    const Group I = Group::generated(G, gens, 1u << 26);
    EXPECT_EQ(I.order(), uptri::detail::q_pow(q, static_cast<int>(e.T.size()) + 1));
    RootSet supp(9);
    for (std::uint64_t k = 0; k < I.order(); ++k) supp = supp | G->decode(I.element(k)).support();
    EXPECT_GT(supp.size(), e.T.size() + 1);
  }
}

TEST(Irrational, PairAtTwo) {
  const IrrationalPairReport r = irrational_pair(1);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.u_degree_exp, 16);
  EXPECT_EQ(r.pair_count, 2u);
  EXPECT_EQ(r.nonreal_constituents, 2u);
  EXPECT_EQ(r.not_well_induced_total, 2u);
  EXPECT_EQ(r.extensions, 2u);
  EXPECT_EQ(sorted(r.mu4_exponents), (std::vector<int>{1, 3}));
  EXPECT_TRUE(r.nonreal);
  EXPECT_TRUE(r.conjugate_pair);
}

TEST(Irrational, SquareIdentityAtFour) {
  const IrrationalPairReport r = irrational_pair(2);
  EXPECT_TRUE(r.square_identity);
  EXPECT_TRUE(r.order_four);
  EXPECT_EQ(r.mu3_at_square, 1);
  EXPECT_FALSE(r.constructed);  // Q_3 <x(a)> has order 4^14, beyond the enumeration budget
  EXPECT_EQ(r.not_well_induced_total, static_cast<std::uint64_t>(PolyQ::monomial_form(13, 1).eval(4)));
}

TEST(CensusAt, LiftsToU) {
  const ConstituentCensus c = census_at(2);
  EXPECT_TRUE(c.invariants_hold());
  EXPECT_EQ(c.total(), 98u);
  EXPECT_EQ(census_at(2, Variants::representative).total(), 110u);
  std::uint64_t irrational = 0;
  for (const auto& r : c.records) irrational += r.rational ? 0 : r.count;
  EXPECT_EQ(irrational, 2u);
  for (const auto& r : census_at(3).records) EXPECT_TRUE(r.rational);
  EXPECT_EQ(c.records.front().degree_exp, 15);
}
