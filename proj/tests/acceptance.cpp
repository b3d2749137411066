// Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "uptri/basicset.hpp"
#include "uptri/charfn.hpp"
#include "uptri/superdecomp.hpp"
#include "uptri/tables.hpp"
#include "uptri/u13.hpp"

using namespace uptri;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::shared_ptr<const Fq> field(int q) { return std::make_shared<const Fq>(Fq::from_order(q)); }

std::shared_ptr<const PatternQuotient> full_group(int n, int q) {
  return std::make_shared<const PatternQuotient>(field(q), PatternGroup::full(n));
}

GroupPtr whole(std::shared_ptr<const PatternQuotient> U) {
  return EnumeratedGroup::make(Group(std::move(U), Budgets{}.enumeration), Budgets{});
}

PhiAssignment ones(const BasicSet& D) { return PhiAssignment(static_cast<std::size_t>(D.k()), 1); }

std::uint64_t q_pow(int q, std::size_t e) {
  std::uint64_t o = 1;
  for (std::size_t i = 0; i < e; ++i) o *= static_cast<std::uint64_t>(q);
  return o;
}

// 1. w_D and the derived sets of the two worked examples.
Outcome combinatorics() {
  Outcome o;
  const BasicSet D(6, {{2, 3}, {1, 4}, {3, 5}});
  o.require(w_matrix(D).perm == std::vector<int>{2, 1, 3}, "w_D of {2-3,1-4,3-5} is [[0,1,0],[1,0,0],[0,0,1]]");
  const BasicSet E(7, {{1, 2}, {3, 4}, {4, 5}, {2, 6}});
  const auto ds = derived_sets(E);
  o.require(ds.gamma_set == RootSet(7, {{1, 1}, {1, 2}, {1, 3}, {3, 3}}), "Gamma_D = {1-1,1-2,1-3,3-3}");
  o.require(ds.lambda_set == RootSet(7, {{2, 2}, {2, 3}}), "Lambda_D = {2-2,2-3}");
  return o;
}

// 2. Property suite over random basic sets.
Outcome derived_set_properties() {
  Outcome o;
  std::mt19937_64 rng(20240613);
  int sets = 0, failures = 0;
  for (; sets < 1200; ++sets) {
    const int n = 2 + static_cast<int>(rng() % 11);
    const BasicSet D = random_basic_set(n, rng);
    const int k = D.k();
    const auto ds = derived_sets(D);
    bool ok = is_closed(ds.gamma_set) && is_closed(ds.lambda_set) && is_closed(ds.delta) &&
              ds.delta.size() == static_cast<std::size_t>(k * (k - 1) / 2);
    if (k >= 2) {
      ok = ok && localize(D, ds.delta) == RootSet::positive(k) &&
           localize(D, ds.gamma_set) == intersect_conjugate(k, w_matrix(D)) &&
           antidiagonal_flip(k, localize(D, ds.lambda_set)) == intersect_conjugate(k, MonomialPerm::longest(k) * w_matrix(D));
    }
    const RootSet V = v_pattern(D);
    for (const auto& g : ds.gamma_set.roots())
      for (const auto& b : V.roots())
        if (auto s = add_roots(g, b)) ok = ok && V.contains(*s);
    if (!ok) {
      ++failures;
      o.note("counterexample: n=" + std::to_string(n) + " D=" + to_string(D));
    }
  }
  o.require(failures == 0, std::to_string(failures) + " of " + std::to_string(sets) + " random basic sets");
  o.note(std::to_string(sets) + " random basic sets, n <= 12");
  return o;
}

// 3. <xi_{D,phi}, xi_{D',phi'}> = [V_D R_D : V_D] on the diagonal, 0 off it.
Outcome orthogonality() {
  Outcome o;
  for (auto [n, q] : {std::pair{4, 2}, std::pair{4, 3}, std::pair{5, 2}}) {
    const auto U = full_group(n, q);
    const GroupPtr G = whole(U);
    std::vector<std::pair<BasicSet, ClassFunction>> xis;
    for (const auto& D : all_basic_sets(n))
      for (const auto& phi : all_phis(U->field(), D.k())) xis.emplace_back(D, induce(lambda_D(U, D, phi), G));
    std::size_t bad = 0;
    for (std::size_t a = 0; a < xis.size(); ++a)
      for (std::size_t b = a; b < xis.size(); ++b) {
        const BasicSet& D = xis[a].first;
        const Rational want = a == b ? Rational(static_cast<std::int64_t>(q_pow(q, vr_pattern(D).size() - v_pattern(D).size())))
                                     : Rational(0);
        bad += inner(xis[a].second, xis[b].second) != want;
      }
    o.require(bad == 0, "U_" + std::to_string(n) + "(" + std::to_string(q) + "): " + std::to_string(bad) + " inner products");
    o.note("U_" + std::to_string(n) + "(" + std::to_string(q) + "): " + std::to_string(xis.size()) + " supercharacters");
  }
  return o;
}

// 4. Every nonprincipal irreducible lies in exactly one supercharacter.
Outcome partition() {
  Outcome o;
  for (auto [n, q] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{4, 3}, std::pair{5, 2}}) {
    const PartitionReport r = partition_check(n, field(q));
    o.require(r.ok(), "U_" + std::to_string(n) + "(" + std::to_string(q) + "): uncovered " + std::to_string(r.uncovered) +
                          ", overlapping " + std::to_string(r.covered_twice_or_more));
    o.note("U_" + std::to_string(n) + "(" + std::to_string(q) + "): " + std::to_string(r.irreducibles) + " irreducibles");
  }
  return o;
}

// 5. Tables from the character-table oracle are self-consistent.
Outcome oracle_consistency() {
  Outcome o;
  auto check = [&](const std::string& name, GroupPtr G, int q) {
    const CharacterTable T = character_table(G);
    std::uint64_t sq = 0;
    for (const auto& chi : T.irr) {
      const auto d = static_cast<std::uint64_t>(chi.degree().numerator());
      sq += d * d;
    }
    o.require(check_orthogonality(T), name + " row and column orthogonality");
    o.require(sq == G->order(), name + " sum of squared degrees");
    o.require(degrees_are_powers_of(T, static_cast<std::uint64_t>(q)), name + " degrees are powers of q");
    return T.size();
  };
  const std::vector<std::size_t> expected{5, 16, 61};
  for (int n = 3; n <= 5; ++n) {
    const std::size_t classes = check("U_" + std::to_string(n) + "(2)", whole(full_group(n, 2)), 2);
    o.require(classes == expected[n - 3], "U_" + std::to_string(n) + "(2) has " + std::to_string(expected[n - 3]) + " classes");
  }
  check("U_3(3)", whole(full_group(3, 3)), 3);
  check("U_4(3)", whole(full_group(4, 3)), 3);
  check("U_3(4)", whole(full_group(3, 4)), 4);
  std::mt19937_64 rng(7);
  int patterns = 0;
  for (int t = 0; t < 12; ++t) {
    const int n = 4 + t % 3, q = t % 4 == 3 ? 3 : 2;
    const BasicSet D = random_basic_set(n, rng);
    for (const RootSet& S : {v_pattern(D), vr_pattern(D)}) {
      if (q_pow(q, S.size()) > 4096) continue;
      auto P = std::make_shared<const PatternQuotient>(field(q), PatternGroup(n, S));
      check("pattern " + to_string(S), whole(P), q);
      ++patterns;
    }
  }
  o.note("U_n(2) class counts 5, 16, 61; " + std::to_string(patterns) + " further pattern groups");
  return o;
}

// 6. The two families of the first sample.
Outcome sample_one() {
  Outcome o;
  for (auto [k, n, q] : std::vector<std::tuple<int, int, int>>{{2, 5, 2}, {2, 5, 3}, {3, 7, 2}}) {
    const BasicSet D = d1_family(k, n);
    const std::string name = "d1_family(" + std::to_string(k) + "," + std::to_string(n) + ") q=" + std::to_string(q);
    const ConstituentCensus c = census(D, ones(D), q, Strategy::special);
    o.require(c.records.size() == 1 && c.records[0].count == 1 && c.records[0].mult_exp == k - 1, name + ": one constituent, multiplicity q^(k-1)");
    try {
      o.require(census(D, ones(D), q, Strategy::oracle).records == c.records, name + ": oracle agrees");
    } catch (const BudgetError& e) {
      o.note(name + ": oracle skipped, " + e.what());
    }
  }
  for (auto [m, n, q] : std::vector<std::tuple<int, int, int>>{{1, 3, 2}, {1, 3, 3}, {2, 5, 2}}) {
    const BasicSet D = d2_family(m, n);
    o.require(census(D, ones(D), q).total() == 1,
              "d2_family(" + std::to_string(m) + "," + std::to_string(n) + ") q=" + std::to_string(q) + ": count 1");
  }
  return o;
}

// 7. Ledger-assembled polynomials against the closed forms.
Outcome u13_symbolic() {
  Outcome o;
  const PolyQ q = PolyQ::q();
  const u13::SymbolicCensus c = u13::census_symbolic();
  const std::vector<PolyQ> want{q.pow(3) * (PolyQ(4) * q - 3), q * (q - 1) * (PolyQ(3) * q.pow(3) + q.pow(2) + q - 3),
                                q.pow(2) * (q + 2) * (q - 1).pow(2)};
  o.require(c.records.size() == want.size(), "three degrees");
  for (std::size_t i = 0; i < std::min(c.records.size(), want.size()); ++i) {
    o.require(c.records[i].count == want[i], "degree q^" + std::to_string(c.records[i].degree_exp) + ": ledger " +
                                                 c.records[i].count.to_string() + ", expected " + want[i].to_string());
  }
  o.require(c.mass() == q.pow(15), "mass identity");
  o.require(c.counts_at(2) == std::vector<std::int64_t>{40, 54, 16}, "counts at q=2 are (40, 54, 16)");
  std::ostringstream s;
  for (auto v : c.counts_at(2)) s << ' ' << v;
  o.note("ledger counts at q=2:" + s.str() + "; mass q^15 " + (c.mass() == q.pow(15) ? "holds" : "fails"));
  const u13::SymbolicCensus rep = u13::census_symbolic(u13::Variants::representative);
  o.note(std::string("reusing the alpha_{1,2} chain for every single-nonzero variant ") +
         (rep.records == u13::expected_closed_forms().records ? "reproduces" : "does not reproduce") + " the expected forms");
  for (const auto& v : u13::subcase_degrees("4b"))
    o.note("  " + v.label + ": degree q^" + std::to_string(v.degree_exp) + ", count " + v.count);
  return o;
}

// 8. Every branch checked on concrete groups.
Outcome u13_concrete() {
  Outcome o;
  for (int q : {2, 3}) {
    u13::VerifyOptions opt;
    opt.samples = 128;
    const u13::CaseReport r = u13::verify_cases(q, opt);
    for (const auto& f : r.failures()) o.require(false, "q=" + std::to_string(q) + " " + f.subject + ": " + f.claim + ": " + f.detail);
    std::uint64_t fewest = UINT64_MAX;
    bool exhaustive = true;
    for (const auto& b : r.branches) {
      fewest = std::min(fewest, b.lambdas);
      exhaustive = exhaustive && b.exhaustive;
    }
    if (q == 2) o.require(exhaustive, "q=2 enumerates every lambda");
    else o.require(fewest >= 100, "q=3 samples at least 100 lambda per branch");
    o.note("q=" + std::to_string(q) + ": " + std::to_string(r.branches.size()) + " branches, " + std::to_string(r.structure.size()) +
           " structural checks, at least " + std::to_string(fewest) + " lambda per branch" + (exhaustive ? " (all)" : ""));
  }
  return o;
}

// 9. The irrational pair of U_13(2).
Outcome irrational() {
  Outcome o;
  const u13::IrrationalPairReport r = u13::irrational_pair(1);
  o.require(r.ok(), "pair constructed with conjugate non-real values");
  o.require(r.nonreal_constituents == 2, "exactly 2 non-real constituents");
  o.require(r.u_degree_exp == 16, "degree 2^16");
  o.require(r.not_well_induced_total == 2, "(q-1)^13 q = 2");
  std::vector<int> ex = r.mu4_exponents;
  std::sort(ex.begin(), ex.end());
  o.require(ex == std::vector<int>{1, 3}, "extensions take zeta_4 and zeta_4^3 at x(a_0)");
  o.note("values " + r.value_plus + " and " + r.value_minus + " at " + r.witness);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"combinatorics exactness", combinatorics},
      {"derived-set property suite", derived_set_properties},
      {"supercharacter orthogonality", orthogonality},
      {"partition of irreducibles", partition},
      {"oracle self-consistency", oracle_consistency},
      {"first sample families", sample_one},
      {"U_13 symbolic census", u13_symbolic},
      {"U_13 concrete verification", u13_concrete},
      {"U_13 irrational pair", irrational},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << " (" << std::fixed
              << std::setprecision(2) << secs << " s)\n";
    for (const auto& n : o.notes) std::cout << "       " << n << "\n";
    std::cout.flush();
    failed += !o.pass;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
