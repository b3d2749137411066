#pragma once

// The nine-root basic set in U_13: constituent census of lambda_D^{V_D R_D} via a ledger of
// extension branches over R/Kc, with concrete verification of every branch at small q.
//
// All roots here are local U_9 roots. R/Kc has 20 coordinates: five star roots carrying mu,
// the six "decision" roots whose character values split the census into branches, and the
// nine roots alpha_1, alpha_2, alpha_3, alpha_{4,7}, alpha_8, alpha_7, alpha_6, alpha_5,
// alpha_{2,4}. Modulo alpha_{1,3} and alpha_{3,8} those nine form a cycle in which neighbours
// bracket onto the nine central roots.

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "uptri/poly.hpp"
#include "uptri/superdecomp.hpp"

namespace uptri::u13 {

inline Root al(int i) { return Root{i, i}; }
inline Root al(int i, int j) { return Root{i, j}; }

inline BasicSet sample_set() {
  return BasicSet(13, {{1, 4}, {2, 5}, {5, 6}, {6, 7}, {7, 8}, {3, 9}, {4, 10}, {8, 11}, {9, 12}});
}

inline const std::vector<Root>& star_roots() {
  static const std::vector<Root> v{al(1, 4), al(2, 5), al(5, 6), al(6, 7), al(7, 8)};
  return v;
}

/// Central in R/Kc; their values fix lambda_1.
inline const std::vector<Root>& lambda1_roots() {
  static const std::vector<Root> v{al(1, 3), al(3, 8)};
  return v;
}

/// Central once alpha_{1,3} and alpha_{3,8} are in the kernel.
inline const std::vector<Root>& case4_roots() {
  static const std::vector<Root> v{al(1, 2), al(2, 3), al(3, 7), al(4, 8)};
  return v;
}

inline const std::vector<Root>& decision_roots() {
  static const std::vector<Root> v{al(1, 3), al(3, 8), al(1, 2), al(2, 3), al(3, 7), al(4, 8)};
  return v;
}

/// v_1..v_9 in cycle order; v_i and v_{i+1} bracket onto the i-th central root
/// alpha_{1,2}, alpha_{2,3}, alpha_{3,7}, alpha_{4,8}, then the five stars in reverse.
inline const std::vector<Root>& cycle_roots() {
  static const std::vector<Root> v{al(1), al(2), al(3), al(4, 7), al(8), al(7), al(6), al(5), al(2, 4)};
  return v;
}

inline bool contains(const std::vector<Root>& v, const Root& r) { return std::find(v.begin(), v.end(), r) != v.end(); }

inline std::shared_ptr<const Fq> field(int q) { return std::make_shared<const Fq>(Fq::from_order(q)); }

/// Reduced problem for the sample with checks on its shape.
inline ReducedProblem sample2_problem(std::shared_ptr<const Fq> F, PhiAssignment phi = {}) {
  const BasicSet D = sample_set();
  if (phi.empty()) phi.assign(static_cast<std::size_t>(D.k()), 1);
  ReducedProblem P = reduce(D, phi, std::move(F));
  if (P.R.size() != 30 || P.Kc.size() != 10 || P.Vc.size() != 15)
    throw InconsistencyError("unexpected R, Kc or Vc size for the thirteen-dimensional sample");
  if (P.mu_roots != star_roots()) throw InconsistencyError("mu is not carried by the five star roots");
  return P;
}

/// R/Kc with further central roots in the kernel.
inline std::shared_ptr<const PatternQuotient> sample_quotient(const ReducedProblem& P, const std::vector<Root>& extra_kernel) {
  RootSet K = P.Kc;
  for (const Root& r : extra_kernel) K.insert(r);
  return std::make_shared<const PatternQuotient>(P.field, PatternGroup(P.local_n(), P.R), K);
}

// ---------------------------------------------------------------------------
// Ledger

enum class Decision { zero, nonzero, free };

enum class Chain { given, corrected, search };

inline std::string to_string(Chain c) {
  switch (c) {
    case Chain::given: return "given";
    case Chain::corrected: return "corrected";
    case Chain::search: return "search";
  }
  return "?";
}

/// One extension branch: a pattern of decision values, an abelian normal subgroup T of
/// (R/Kc)/(zero decision roots) carrying the extensions, and the complement roots C.
/// The constituents of the branch have degree q^{|C| - e}, where q^e = [I(lambda) : T].
struct Branch {
  std::string family;  // 1, 2a, 2b, 3a, 3b, 4a .. 4e
  std::string label;
  std::map<Root, Decision> decisions;
  std::vector<Root> T;
  std::vector<Root> C;
  int inertia_exp = 0;
  Chain chain = Chain::given;
  int weight = 1;  // > 1 only for representatives standing in for symmetric variants
  std::string note;

  std::vector<Root> zero_roots() const {
    std::vector<Root> z;
    for (const Root& r : decision_roots())
      if (decisions.at(r) == Decision::zero) z.push_back(r);
    return z;
  }
  int nonzero() const {
    int c = 0;
    for (const auto& [r, d] : decisions) c += d == Decision::nonzero;
    return c;
  }
  int free_params() const { return static_cast<int>(T.size() - star_roots().size()) - nonzero(); }
  int degree_exp() const { return static_cast<int>(C.size()) - inertia_exp; }
  int count_q_exp() const { return free_params() - static_cast<int>(C.size()) + 2 * inertia_exp; }
  PolyQ count() const { return PolyQ(weight) * PolyQ::monomial_form(nonzero(), count_q_exp()); }
  std::string count_string() const {
    std::string s = factored_string(nonzero(), count_q_exp());
    return weight == 1 ? s : std::to_string(weight) + " " + s;
  }
  bool matches(const std::map<Root, Elem>& values) const {
    for (const auto& [r, d] : decisions) {
      const Elem v = values.at(r);
      if ((d == Decision::zero && v != 0) || (d == Decision::nonzero && v == 0)) return false;
    }
    return true;
  }
};

/// Largest subset of the cycle roots with no bracket onto a live central root; ties go to
/// the first subset in mask order.
inline std::vector<Root> isotropic_search(const std::vector<Root>& live) {
  const auto& cyc = cycle_roots();
  const unsigned N = static_cast<unsigned>(cyc.size());
  unsigned best = 0;
  int best_size = -1;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    bool ok = true;
    for (unsigned a = 0; a < N && ok; ++a)
      for (unsigned b = a + 1; b < N && ok; ++b)
        if ((mask >> a & 1u) && (mask >> b & 1u))
          if (auto s = add_roots(cyc[a], cyc[b]); s && contains(live, *s)) ok = false;
    if (ok && std::popcount(mask) > best_size) {
      best = mask;
      best_size = std::popcount(mask);
    }
  }
  std::vector<Root> out;
  for (unsigned a = 0; a < N; ++a)
    if (best >> a & 1u) out.push_back(cyc[a]);
  return out;
}

enum class Variants { explicit_all, representative };

namespace detail {

inline const std::vector<Root>& quotient_coords() {
  static const std::vector<Root> v = [] {
    return sample_quotient(sample2_problem(field(2)), {})->coords();
  }();
  return v;
}

inline Branch make_branch(std::string family, std::string label, std::map<Root, Decision> dec,
                          const std::vector<Root>& extra, Chain chain, std::string note, int inertia_exp = 0) {
  Branch b{std::move(family), std::move(label), std::move(dec), {}, {}, inertia_exp, chain, 1, std::move(note)};
  for (const Root& r : quotient_coords()) {
    const bool decision = contains(decision_roots(), r);
    if (decision && b.decisions.at(r) == Decision::zero) continue;
    if (contains(star_roots(), r) || decision || contains(extra, r)) b.T.push_back(r);
    else b.C.push_back(r);
  }
  return b;
}

inline std::map<Root, Decision> decide(Decision a13, Decision a38, Decision a12, Decision a23, Decision a37,
                                       Decision a48) {
  return {{al(1, 3), a13}, {al(3, 8), a38}, {al(1, 2), a12}, {al(2, 3), a23}, {al(3, 7), a37}, {al(4, 8), a48}};
}

inline std::string root_list(const std::vector<Root>& v) {
  std::string s;
  for (const Root& r : v) s += (s.empty() ? "" : ",") + to_string(r);
  return s;
}

}  // namespace detail

/// The extension branches. Cases 1-3 and the named representatives of case 4 use the
/// given chains (with the corrections noted on each branch); the remaining case-4
/// variants use isotropic_search. In representative mode each of subcases b, c, d is a
/// single representative weighted by the number of variants.
inline std::vector<Branch> case_ledger(Variants mode = Variants::explicit_all) {
  using D = Decision;
  using detail::make_branch;
  using detail::decide;
  const D Z = D::zero, N = D::nonzero, F = D::free;
  std::vector<Branch> L;
  L.push_back(make_branch("1", "1", decide(N, N, F, F, F, F), {al(2), al(5), al(7), al(4, 7)}, Chain::corrected,
                          "alpha_{1,2} added to L_2; without it the extension count is q^7 and L_2 X_1 X_3 X_6 X_8 X_{2,4} misses a coordinate"));
  L.push_back(make_branch("2a", "2a", decide(N, Z, F, F, F, N), {al(2), al(6), al(8), al(2, 4)}, Chain::corrected,
                          "complement is X_1 X_3 X_5 X_7 X_{4,7}, not X_{3,7}, which already lies in H_3"));
  L.push_back(make_branch("2b", "2b", decide(N, Z, F, F, F, Z), {al(2), al(6), al(8), al(2, 4), al(4, 7)}, Chain::given, ""));
  L.push_back(make_branch("3a", "3a", decide(Z, N, N, F, F, F), {al(1), al(5), al(7), al(4, 7)}, Chain::corrected,
                          "the quotient is by X_{1,3}, not X_{1,8}"));
  L.push_back(make_branch("3b", "3b", decide(Z, N, Z, F, F, F), {al(1), al(2), al(5), al(7), al(4, 7)}, Chain::corrected,
                          "the quotient is by X_{1,3}, not X_{1,8}"));

  const auto& c4 = case4_roots();
  std::map<std::string, int> seen;
  for (unsigned mask = 0; mask < 16u; ++mask) {
    std::vector<Root> live = star_roots(), nz;
    std::map<Root, Decision> dec{{al(1, 3), Z}, {al(3, 8), Z}};
    for (unsigned i = 0; i < 4; ++i) {
      const bool on = mask >> i & 1u;
      dec[c4[i]] = on ? N : Z;
      if (on) {
        live.push_back(c4[i]);
        nz.push_back(c4[i]);
      }
    }
    const char sub = "abcde"[nz.size()];
    const std::string family = std::string("4") + sub;
    const std::string label = family + "[" + detail::root_list(nz) + "]";
    const bool a12 = dec[al(1, 2)] == N;
    std::optional<Branch> b;
    if (sub == 'a') {
      b = make_branch(family, label, dec, {al(2), al(3), al(4, 7), al(7), al(5), al(1)}, Chain::given, "");
    } else if (sub == 'b' && a12) {
      b = make_branch(family, label, dec, {al(3), al(4, 7), al(2), al(2, 4), al(6), al(8)}, Chain::corrected,
                      "T_3 uses X_{4,7} in place of X_7; with X_7 the roots alpha_6, alpha_7, alpha_8 bracket onto live stars");
    } else if (sub == 'd' && !a12) {
      b = make_branch(family, label, dec, {al(1), al(5), al(7), al(4, 7), al(2)}, Chain::corrected,
                      "mu_3 is an extension to T_3, not T_2");
    } else if (sub == 'e') {
      b = make_branch(family, label, dec, {al(1), al(5), al(7), al(4, 7)}, Chain::given,
                      "inertia group Q_3 <x(a)> is not a pattern subgroup", 1);
    } else {
      b = make_branch(family, label, dec, isotropic_search(live), Chain::search, "");
    }
    if (mode == Variants::representative && (sub == 'b' || sub == 'c' || sub == 'd')) {
      const bool rep = sub == 'c' ? seen[family] == 0 : b->chain != Chain::search;
      ++seen[family];
      if (!rep) continue;
      b->weight = sub == 'c' ? 6 : 4;
      b->note += std::string(b->note.empty() ? "" : "; ") + "stands in for all variants of subcase " + sub;
    }
    L.push_back(std::move(*b));
  }
  return L;
}

// ---------------------------------------------------------------------------
// Symbolic census

struct SymbolicRecord {
  int degree_exp = 0;  // local, in R/Kc
  int mult_exp = 0;
  PolyQ count;

  friend bool operator==(const SymbolicRecord&, const SymbolicRecord&) = default;
};

struct SymbolicCensus {
  std::vector<SymbolicRecord> records;  // by increasing degree

  PolyQ total() const {
    PolyQ t;
    for (const auto& r : records) t += r.count;
    return t;
  }
  /// sum count * q^deg * q^mult.
  PolyQ mass() const {
    PolyQ m;
    for (const auto& r : records) m += r.count * PolyQ::q().pow(r.degree_exp + r.mult_exp);
    return m;
  }
  std::vector<std::int64_t> counts_at(std::int64_t q) const {
    std::vector<std::int64_t> out;
    for (const auto& r : records) out.push_back(r.count.eval(q));
    return out;
  }
};

inline SymbolicCensus census_symbolic(const std::vector<Branch>& ledger) {
  std::map<int, PolyQ> by_degree;
  for (const Branch& b : ledger) by_degree[b.degree_exp()] += b.count();
  SymbolicCensus c;
  for (const auto& [d, p] : by_degree) c.records.push_back({d, d, p});
  return c;
}

inline SymbolicCensus census_symbolic(Variants mode = Variants::explicit_all) { return census_symbolic(case_ledger(mode)); }

/// The three closed forms stated for this sample.
inline SymbolicCensus expected_closed_forms() {
  const PolyQ q = PolyQ::q();
  return {{{3, 3, q.pow(3) * (PolyQ(4) * q - 3)},
           {4, 4, q * (q - 1) * (PolyQ(3) * q.pow(3) + q.pow(2) + q - 3)},
           {5, 5, q.pow(2) * (q + 2) * (q - 1).pow(2)}}};
}

/// Throws InconsistencyError naming each family whose ledger sum differs from the closed form.
inline void require_closed_forms(const SymbolicCensus& c) {
  const SymbolicCensus want = expected_closed_forms();
  std::string diff;
  std::map<int, PolyQ> got;
  for (const auto& r : c.records) got[r.degree_exp] = r.count;
  for (const auto& r : want.records)
    if (got[r.degree_exp] != r.count)
      diff += " degree q^" + std::to_string(r.degree_exp) + ": ledger " + got[r.degree_exp].to_string() + ", closed form " +
              r.count.to_string() + ";";
  if (c.records.size() != want.records.size()) diff += " different number of degree families;";
  if (!diff.empty()) throw InconsistencyError("ledger disagrees with the closed forms:" + diff);
}

/// The census at a concrete q in U-level units. Constituents from branches with a nontrivial
/// inertia extension take values outside Q(zeta_p) when p = 2.
inline ConstituentCensus census_at(int q, Variants mode = Variants::explicit_all) {
  const auto F = field(q);
  const ReducedProblem P = sample2_problem(F);
  std::vector<CensusRecord> local;
  for (const Branch& b : case_ledger(mode))
    local.push_back({b.degree_exp(), b.degree_exp(), static_cast<std::uint64_t>(b.count().eval(q)),
                     !(b.inertia_exp > 0 && F->p() == 2)});
  return uptri::detail::lift(P, Strategy::structural, local);
}

// ---------------------------------------------------------------------------
// Ledger completeness

struct CoverageReport {
  std::uint64_t assignments = 0, uncovered = 0, overlapping = 0;
  bool free_roots_in_T = true;
  PolyQ lambda1_sum;  // sum over cases of the number of lambda_1
  bool ok() const { return uncovered == 0 && overlapping == 0 && free_roots_in_T && lambda1_sum == PolyQ::q().pow(2); }
};

/// Every assignment of field values to the decision roots is matched by exactly one branch.
inline CoverageReport ledger_coverage(const std::vector<Branch>& ledger, const Fq& F) {
  CoverageReport rep;
  const auto& dr = decision_roots();
  std::vector<Elem> v(dr.size(), 0);
  for (;;) {
    std::map<Root, Elem> values;
    for (std::size_t i = 0; i < dr.size(); ++i) values[dr[i]] = v[i];
    int hits = 0;
    for (const Branch& b : ledger) hits += b.matches(values);
    ++rep.assignments;
    rep.uncovered += hits == 0;
    rep.overlapping += hits > 1;
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == F.q()) v[i++] = 0;
    if (i == v.size()) break;
  }
  std::set<std::pair<Decision, Decision>> cases;
  for (const Branch& b : ledger) {
    for (const auto& [r, d] : b.decisions)
      if (d == Decision::free && !contains(b.T, r)) rep.free_roots_in_T = false;
    cases.insert({b.decisions.at(al(1, 3)), b.decisions.at(al(3, 8))});
  }
  for (auto [a, c] : cases) rep.lambda1_sum += PolyQ::monomial_form((a == Decision::nonzero) + (c == Decision::nonzero), 0);
  return rep;
}

// ---------------------------------------------------------------------------
// The inertia element of subcase e

using RootValues = std::map<Root, Elem>;

namespace detail {

inline Elem sv(const RootValues& s, const Root& r) {
  auto it = s.find(r);
  if (it == s.end() || it->second == 0) throw std::invalid_argument("s-value at " + to_string(r) + " must be nonzero");
  return it->second;
}

}  // namespace detail

/// x(a) = x_2(-s14/s12 a) x_6(s25/s56 a) x_8(s25 s67/(s56 s78) a) x_3(s25 s48 s67/(s37 s56 s78) a) x_{2,4}(a).
/// The x_7 and x_{4,7} brackets force s67/s78 in the last two factors; s78/s67 agrees with it only
/// when every s-value squares to 1, as over F_2 and F_3.
inline UniMatrix inertia_element(const Fq& F, const RootValues& s, Elem a) {
  using detail::sv;
  const Elem s12 = sv(s, al(1, 2)), s14 = sv(s, al(1, 4)), s25 = sv(s, al(2, 5)), s56 = sv(s, al(5, 6));
  const Elem s67 = sv(s, al(6, 7)), s78 = sv(s, al(7, 8)), s37 = sv(s, al(3, 7)), s48 = sv(s, al(4, 8));
  sv(s, al(2, 3));
  const Elem c2 = F.neg(F.mul(F.div(s14, s12), a));
  const Elem c6 = F.mul(F.div(s25, s56), a);
  const Elem c8 = F.mul(F.div(F.mul(s25, s67), F.mul(s56, s78)), a);
  const Elem c3 = F.mul(F.div(F.mul(F.mul(s25, s48), s67), F.mul(F.mul(s37, s56), s78)), a);
  UniMatrix x = identity_matrix(9);
  for (auto [r, c] : std::vector<std::pair<Root, Elem>>{{al(2), c2}, {al(6), c6}, {al(8), c8}, {al(3), c3}, {al(2, 4), a}})
    x = mul(F, x, root_element(9, r, c));
  return x;
}

/// The coefficient of alpha_{2,3} in x(a)^2 / a^2 when p = 2.
inline Elem square_coefficient(const Fq& F, const RootValues& s) {
  using detail::sv;
  const Elem num = F.mul(F.mul(sv(s, al(1, 4)), sv(s, al(2, 5))), F.mul(sv(s, al(4, 8)), sv(s, al(6, 7))));
  const Elem den = F.mul(F.mul(sv(s, al(1, 2)), sv(s, al(3, 7))), F.mul(sv(s, al(5, 6)), sv(s, al(7, 8))));
  return F.div(num, den);
}

// ---------------------------------------------------------------------------
// Concrete verification

struct Check {
  std::string subject;
  std::string claim;
  bool ok = true;
  std::string detail;
};

struct BranchReport {
  std::string label;
  std::uint64_t lambdas = 0;
  bool exhaustive = false;
  std::vector<Check> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
  }
};

struct VerifyOptions {
  std::uint64_t exhaustive_limit = 4096;  // enumerate all lambda when there are at most this many
  std::uint64_t samples = 128;
  std::uint64_t seed = 1;
};

namespace detail {

inline std::string elem_list(const Fq& F, const std::vector<Elem>& v) {
  std::string s;
  for (Elem e : v) s += (s.empty() ? "" : ",") + F.to_string(e);
  return s;
}

/// Values on the roots of T: nonzero on stars and nonzero decisions, arbitrary elsewhere.
class LambdaSource {
 public:
  LambdaSource(const Branch& b, const Fq& F, const VerifyOptions& o) : F_(F), rng_(o.seed) {
    for (const Root& r : b.T) {
      const bool nz = contains(star_roots(), r) || (b.decisions.count(r) && b.decisions.at(r) == Decision::nonzero);
      nonzero_.push_back(nz);
    }
    long double total = 1;
    for (bool nz : nonzero_) total *= nz ? F.q() - 1 : F.q();
    exhaustive_ = total <= static_cast<long double>(o.exhaustive_limit);
    remaining_ = exhaustive_ ? static_cast<std::uint64_t>(total) : o.samples;
    cur_.assign(nonzero_.size(), 0);
    for (std::size_t i = 0; i < cur_.size(); ++i) cur_[i] = nonzero_[i] ? 1 : 0;
  }

  bool exhaustive() const { return exhaustive_; }

  bool next(std::vector<Elem>& out) {
    if (remaining_ == 0) return false;
    --remaining_;
    if (exhaustive_) {
      out = cur_;
      for (std::size_t i = 0; i < cur_.size(); ++i) {
        if (++cur_[i] < F_.q()) break;
        cur_[i] = nonzero_[i] ? 1 : 0;
      }
      return true;
    }
    out.resize(nonzero_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::uniform_int_distribution<int> d(nonzero_[i] ? 1 : 0, F_.q() - 1);
      out[i] = static_cast<Elem>(d(rng_));
    }
    return true;
  }

 private:
  const Fq& F_;
  std::mt19937_64 rng_;
  std::vector<bool> nonzero_;
  std::vector<Elem> cur_;
  bool exhaustive_ = false;
  std::uint64_t remaining_ = 0;
};

/// Exponent of zeta_p of lambda at an element of T, given T-coordinates.
inline int lambda_exp(const Fq& F, const std::vector<Elem>& s, const std::vector<Elem>& digits) {
  int e = 0;
  for (std::size_t i = 0; i < s.size(); ++i) e += F.trace(F.mul(s[i], digits[i]));
  return e % F.p();
}

}  // namespace detail

/// Checks one branch at a concrete field: the kernel quotient exists, T is abelian and
/// normal, (R/Kc)/N = T X_{c_1}...X_{c_m}, and for every sampled extension lambda the
/// stabilizer of lambda has index q^e over T. For a branch with e = 1 the stabilizer is
/// matched against the cosets of x(a) and [I, I] is checked to lie in ker lambda.
inline BranchReport verify_branch(const Branch& b, const ReducedProblem& P, const VerifyOptions& opt = {}) {
  const Fq& F = *P.field;
  BranchReport rep{b.label, 0, false, {}};
  auto fail = [&](const std::string& claim, const std::string& why) { rep.checks.push_back({b.label, claim, false, why}); };
  auto pass = [&](const std::string& claim) { rep.checks.push_back({b.label, claim, true, ""}); };

  std::shared_ptr<const PatternQuotient> G, Q;
  try {
    G = sample_quotient(P, b.zero_roots());
  } catch (const std::invalid_argument& e) {
    fail("zero decision roots span a normal subgroup", e.what());
    return rep;
  }
  pass("zero decision roots span a normal subgroup");

  // Root brackets inside T must vanish modulo the kernel.
  std::string bad;
  for (const Root& x : b.T)
    for (const Root& y : b.T)
      if (auto s = add_roots(x, y); s && P.R.contains(*s) && !G->kernel().contains(*s) && bad.empty())
        bad = to_string(x) + " + " + to_string(y) + " = " + to_string(*s);
  std::vector<std::pair<Root, Code>> tgens;
  for (const Root& r : b.T)
    for (Elem e : F.additive_basis()) tgens.emplace_back(r, G->element(r, e));
  for (std::size_t i = 0; i < tgens.size() && bad.empty(); ++i)
    for (std::size_t j = i + 1; j < tgens.size() && bad.empty(); ++j)
      if (G->commutator(tgens[i].second, tgens[j].second) != PatternQuotient::identity())
        bad = "commutator of " + to_string(tgens[i].first) + " and " + to_string(tgens[j].first) + " is nontrivial";
  if (bad.empty()) pass("[T,T] = 1");
  else fail("[T,T] = 1", bad);

  RootSet TK = G->kernel();
  for (const Root& r : b.T) TK.insert(r);
  try {
    Q = std::make_shared<const PatternQuotient>(P.field, PatternGroup(P.local_n(), P.R), TK);
  } catch (const std::invalid_argument& e) {
    fail("T is normal", e.what());
    return rep;
  }
  pass("T is normal");

  // Products over the complement in collection order hit every coset of T exactly once.
  std::vector<Code> reps;
  std::set<Code> images;
  {
    std::vector<Elem> a(b.C.size(), 0);
    for (;;) {
      UniMatrix m = identity_matrix(P.local_n());
      for (std::size_t i = 0; i < a.size(); ++i) m = mul(F, m, root_element(P.local_n(), b.C[i], a[i]));
      reps.push_back(G->encode(m));
      images.insert(Q->encode(m));
      std::size_t i = 0;
      while (i < a.size() && ++a[i] == F.q()) a[i++] = 0;
      if (i == a.size()) break;
    }
  }
  if (images.size() == reps.size() && images.size() == Q->order()) pass("R = T * prod X_c");
  else fail("R = T * prod X_c", std::to_string(images.size()) + " cosets reached, " + std::to_string(Q->order()) + " expected");

  // T-coordinates of [t, g] for each generator t and complement product g.
  std::vector<int> tpos;
  for (const Root& r : b.T) tpos.push_back(*G->coord_index(r));
  auto t_digits = [&](Code c, std::vector<Elem>& out) {
    out.assign(tpos.size(), 0);
    for (std::size_t k = 0; k < tpos.size(); ++k) out[k] = G->digit(c, tpos[k]);
    for (const Root& r : b.C)
      if (G->digit(c, *G->coord_index(r)) != 0) return false;
    return true;
  };
  std::vector<std::vector<std::vector<Elem>>> brackets(reps.size());
  bool normal_ok = true;
  for (std::size_t g = 0; g < reps.size(); ++g)
    for (const auto& [r, t] : tgens) {
      std::vector<Elem> d;
      if (!t_digits(G->commutator(t, reps[g]), d)) normal_ok = false;
      brackets[g].push_back(std::move(d));
    }
  if (!normal_ok) fail("T is normal", "a commutator [t, g] leaves T");

  // Stabilizers of sampled lambda. A lambda value is listed per root of T; the generator
  // x_r(e) has value trace(s_r e).
  detail::LambdaSource src(b, F, opt);
  rep.exhaustive = src.exhaustive();
  std::vector<Elem> s;
  const std::uint64_t want = uptri::detail::q_pow(F.q(), b.inertia_exp);
  std::string inertia_bad, xa_bad, ext_bad;
  while (src.next(s)) {
    ++rep.lambdas;
    std::vector<std::size_t> stab;
    for (std::size_t g = 0; g < reps.size(); ++g) {
      bool fixes = true;
      for (const auto& d : brackets[g])
        if (detail::lambda_exp(F, s, d) != 0) {
          fixes = false;
          break;
        }
      if (fixes) stab.push_back(g);
    }
    if (stab.size() != want && inertia_bad.empty())
      inertia_bad = "lambda = (" + detail::elem_list(F, s) + "): stabilizer index " + std::to_string(stab.size()) +
                    " over T, expected " + std::to_string(want);
    if (b.inertia_exp == 0) continue;

    RootValues sv;
    for (std::size_t k = 0; k < b.T.size(); ++k) sv[b.T[k]] = s[k];
    std::set<Code> from_x, from_stab;
    std::vector<Code> xs;
    for (Elem a = 0; a < F.q(); ++a) {
      const UniMatrix x = inertia_element(F, sv, a);
      from_x.insert(Q->encode(x));
      xs.push_back(G->encode(x));
    }
    for (std::size_t g : stab) from_stab.insert(Q->encode(G->decode(reps[g])));
    if (from_x != from_stab && xa_bad.empty()) xa_bad = "lambda = (" + detail::elem_list(F, s) + "): x(a) cosets differ from the stabilizer";
    // [I, I] in ker lambda: brackets of x(a) with T and with x(b).
    auto check = [&](Code c, const std::string& what) {
      std::vector<Elem> d;
      if ((!t_digits(c, d) || detail::lambda_exp(F, s, d) != 0) && ext_bad.empty())
        ext_bad = "lambda = (" + detail::elem_list(F, s) + "): " + what + " not in ker lambda";
    };
    for (std::size_t a = 0; a < xs.size(); ++a) {
      for (const auto& [r, t] : tgens) check(G->commutator(t, xs[a]), "[x_" + to_string(r) + ", x(a)]");
      for (std::size_t c = 0; c < xs.size(); ++c) check(G->commutator(xs[a], xs[c]), "[x(a), x(b)]");
    }
  }
  if (inertia_bad.empty()) pass("I(lambda) = T" + std::string(b.inertia_exp ? " <x(a)>" : ""));
  else fail("I(lambda) = T" + std::string(b.inertia_exp ? " <x(a)>" : ""), inertia_bad);
  if (b.inertia_exp) {
    if (xa_bad.empty()) pass("x(a) generates I(lambda) over T");
    else fail("x(a) generates I(lambda) over T", xa_bad);
    if (ext_bad.empty()) pass("[I, I] in ker lambda");
    else fail("[I, I] in ker lambda", ext_bad);
  }
  return rep;
}

struct SpecialSubgroup {
  Root left, centre, right;
};

/// Triples (a, a+b, b) with a, b non-central and a+b central in the given quotient.
inline std::vector<SpecialSubgroup> special_subgroups(const PatternQuotient& G) {
  const RootSet Z = G.central_roots();
  std::vector<SpecialSubgroup> out;
  const auto& coords = G.coords();
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = i + 1; j < coords.size(); ++j) {
      const Root &a = coords[i], &b = coords[j];
      if (Z.contains(a) || Z.contains(b)) continue;
      if (auto s = add_roots(a, b); s && Z.contains(*s)) out.push_back({a, *s, b});
    }
  return out;
}

/// Lower central series on roots: the number of nontrivial terms.
inline int root_nilpotency_class(const PatternQuotient& G) {
  RootSet term(G.n()), all(G.n());
  for (const Root& r : G.coords()) {
    term.insert(r);
    all.insert(r);
  }
  int c = 0;
  while (!term.empty()) {
    ++c;
    RootSet next(G.n());
    for (const Root& a : term.roots())
      for (const Root& b : all.roots())
        if (auto s = add_roots(a, b); s && all.contains(*s)) next.insert(*s);
    term = next;
  }
  return c;
}

/// Nilpotency class from left-normed commutators of root generators.
inline int measured_nilpotency_class(const PatternQuotient& G) {
  const auto gens = G.root_generators();
  std::set<Code> layer(gens.begin(), gens.end());
  int c = 0;
  while (!layer.empty()) {
    ++c;
    std::set<Code> next;
    for (Code x : layer)
      for (Code g : gens)
        if (Code y = G.commutator(x, g); y != PatternQuotient::identity()) next.insert(y);
    layer = std::move(next);
  }
  return c;
}

struct CaseReport {
  int q = 0;
  std::vector<BranchReport> branches;
  std::vector<Check> structure;
  CoverageReport coverage;
  std::vector<Root> center_rbar;   // root-level center of R/Kc
  std::vector<Root> center_case4;  // after alpha_{1,3}, alpha_{3,8}
  int class_rbar = 0, class_case4 = 0;  // measured on generators
  int root_class_rbar = 0, root_class_case4 = 0;

  bool ok() const {
    return coverage.ok() && std::all_of(branches.begin(), branches.end(), [](const BranchReport& b) { return b.ok(); }) &&
           std::all_of(structure.begin(), structure.end(), [](const Check& c) { return c.ok; });
  }
  std::vector<Check> failures() const {
    std::vector<Check> out;
    for (const auto& b : branches)
      for (const auto& c : b.checks)
        if (!c.ok) out.push_back(c);
    for (const auto& c : structure)
      if (!c.ok) out.push_back(c);
    return out;
  }
};

/// Every branch of the explicit ledger plus the structural facts of case 4 at a small field.
inline CaseReport verify_cases(int q, const VerifyOptions& opt = {}) {
  if (q != 2 && q != 3 && q != 4) throw std::invalid_argument("verify_cases supports q in {2, 3, 4}");
  const auto F = field(q);
  const ReducedProblem P = sample2_problem(F);
  CaseReport rep;
  rep.q = q;
  const auto ledger = case_ledger(Variants::explicit_all);
  rep.coverage = ledger_coverage(ledger, *F);
  for (const Branch& b : ledger) rep.branches.push_back(verify_branch(b, P, opt));

  auto note = [&](const std::string& subject, const std::string& claim, bool ok, const std::string& detail = "") {
    rep.structure.push_back({subject, claim, ok, ok ? "" : detail});
  };
  const auto Rbar = sample_quotient(P, {});
  const auto G4 = sample_quotient(P, lambda1_roots());
  rep.center_rbar = Rbar->central_roots().roots();
  rep.center_case4 = G4->central_roots().roots();
  rep.class_rbar = measured_nilpotency_class(*Rbar);
  rep.class_case4 = measured_nilpotency_class(*G4);
  rep.root_class_rbar = root_nilpotency_class(*Rbar);
  rep.root_class_case4 = root_nilpotency_class(*G4);

  {
    std::vector<Root> want(star_roots());
    want.insert(want.end(), lambda1_roots().begin(), lambda1_roots().end());
    std::vector<Root> got = rep.center_rbar;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    note("R/Kc", "alpha_{1,3}, alpha_{3,8} and the stars are central", got == want, "center is " + detail::root_list(rep.center_rbar));
  }
  {
    std::vector<Root> want = star_roots();
    want.insert(want.end(), case4_roots().begin(), case4_roots().end());
    std::vector<Root> got = rep.center_case4;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    note("case 4 quotient", "center is the nine listed roots", got == want, "center is " + detail::root_list(rep.center_case4));
  }

  // S_1..S_9 around the cycle; consecutive ones meet in one cycle root.
  const auto S = special_subgroups(*G4);
  const auto& cyc = cycle_roots();
  bool cyc_ok = S.size() == 9;
  for (std::size_t i = 0; i < 9 && cyc_ok; ++i) {
    const Root &a = cyc[i], &b = cyc[(i + 1) % 9];
    const auto it = std::find_if(S.begin(), S.end(), [&](const SpecialSubgroup& s) {
      return (s.left == a && s.right == b) || (s.left == b && s.right == a);
    });
    if (it == S.end()) cyc_ok = false;
  }
  for (const Root& r : cyc) {
    int hits = 0;
    for (const auto& s : S) hits += s.left == r || s.right == r;
    cyc_ok = cyc_ok && hits == 2;
  }
  note("case 4 quotient", "nine special subgroups q^{1+2}, each non-central root in exactly two", cyc_ok,
       std::to_string(S.size()) + " found");
  bool special_ok = true;
  for (const auto& s : S)
    for (Elem x : F->nonzero())
      for (Elem y : F->nonzero()) {
        const Code c = G4->commutator(G4->element(s.left, x), G4->element(s.right, y));
        const Code sgn = G4->element(s.centre, F->mul(x, y));
        const Code neg = G4->element(s.centre, F->neg(F->mul(x, y)));
        special_ok = special_ok && (c == sgn || c == neg);
      }
  note("case 4 quotient", "[X_a, X_b] = X_{a+b} in each special subgroup", special_ok, "bracket not on the centre root");

  // The displayed commutator [x_1(s1), x(a)] = x_{1,4}(a s1) x_{1,2}(-(s14/s12) a s1).
  {
    detail::LambdaSource src(ledger.back(), *F, opt);
    const Branch& e = ledger.back();
    bool ok = e.family == "4e";
    std::vector<Elem> s;
    std::string why;
    while (ok && src.next(s)) {
      RootValues sv;
      for (std::size_t k = 0; k < e.T.size(); ++k) sv[e.T[k]] = s[k];
      for (Elem a = 0; a < q && ok; ++a)
        for (Elem s1 = 0; s1 < q && ok; ++s1) {
          const Code lhs = G4->commutator(G4->element(al(1), s1), G4->encode(inertia_element(*F, sv, a)));
          const Elem c12 = F->neg(F->mul(F->div(sv[al(1, 4)], sv[al(1, 2)]), F->mul(a, s1)));
          const Code rhs = G4->mul(G4->element(al(1, 4), F->mul(a, s1)), G4->element(al(1, 2), c12));
          if (lhs != rhs) {
            ok = false;
            why = "fails at a=" + F->to_string(a) + ", s1=" + F->to_string(s1);
          }
        }
    }
    note("subcase e", "[x_1(s1), x(a)] = x_{1,4}(a s1) x_{1,2}(-(s14/s12) a s1)", ok, why);
  }
  {
    RootValues sv;
    for (const Root& r : star_roots()) sv[r] = 1;
    for (const Root& r : case4_roots()) sv[r] = 1;
    note("subcase e", "x(0) = 1", inertia_element(*F, sv, 0).is_identity());
    // I = Q_3 <x(a)> is not the pattern group on its support: that support has q^5 cosets of Q_3.
    RootSet supp = inertia_element(*F, sv, 1).support();
    note("subcase e", "I(mu_3) is not a pattern subgroup", supp.size() > 1, "x(1) is a root element");
  }
  note("ledger", "every decision assignment lies in exactly one branch", rep.coverage.ok(),
       std::to_string(rep.coverage.uncovered) + " uncovered, " + std::to_string(rep.coverage.overlapping) + " overlapping");
  return rep;
}

/// Subcase-b symmetry: the degree each variant actually gives. The usual representative
/// has alpha_{1,2} live; the other variants are not images of it under a
/// symmetry of the cycle.
struct VariantDegree {
  std::string label;
  int degree_exp = 0;
  std::string count;
};

inline std::vector<VariantDegree> subcase_degrees(const std::string& family) {
  std::vector<VariantDegree> out;
  for (const Branch& b : case_ledger(Variants::explicit_all))
    if (b.family == family) out.push_back({b.label, b.degree_exp(), b.count_string()});
  return out;
}

// ---------------------------------------------------------------------------
// The irrational pair at q = 2^f

struct IrrationalPairReport {
  int f = 0, q = 0;
  bool square_identity = true;  // x(a)^2 = x_{2,3}(c a^2) for a != 0
  bool order_four = true;
  Elem a0 = 0;
  int mu3_at_square = 0;  // exponent of zeta_2 at x(a0)^2
  int u_degree_exp = 0;
  std::uint64_t pair_count = 0;            // constituents of the branch, (q-1)^4 q
  std::uint64_t not_well_induced_total = 0;  // over all phi, (q-1)^13 q
  std::uint64_t nonreal_constituents = 0;
  bool constructed = false;  // extensions and induced values computed
  std::uint64_t extensions = 0;
  std::vector<int> mu4_exponents;  // zeta_4 exponent at x(a0), one per extension
  std::string witness;
  std::string value_plus, value_minus;
  bool conjugate_pair = false;
  bool nonreal = false;
  bool irreducible_by_inertia = false;

  bool ok() const {
    return square_identity && order_four && mu3_at_square == 1 && constructed && extensions == static_cast<std::uint64_t>(q) &&
           conjugate_pair && nonreal && irreducible_by_inertia;
  }
};

inline IrrationalPairReport irrational_pair(int f, const Budgets& budgets = {}) {
  if (f < 1 || f > 8) throw std::invalid_argument("f must be between 1 and 8");
  IrrationalPairReport rep;
  rep.f = f;
  rep.q = 1 << f;
  const auto F = field(rep.q);
  const ReducedProblem P = sample2_problem(F);
  const auto G = sample_quotient(P, lambda1_roots());
  const auto ledger = case_ledger();
  const Branch& e = ledger.back();
  rep.u_degree_exp = e.degree_exp() + P.index_exp;
  rep.pair_count = static_cast<std::uint64_t>(e.count().eval(rep.q));
  rep.not_well_induced_total = static_cast<std::uint64_t>((PolyQ::monomial_form(9, 0) * e.count()).eval(rep.q));
  for (const Branch& b : ledger)
    if (b.inertia_exp > 0) rep.nonreal_constituents += static_cast<std::uint64_t>(b.count().eval(rep.q));

  RootValues sv;
  for (const Root& r : star_roots()) sv[r] = 1;
  for (const Root& r : case4_roots()) sv[r] = 1;
  const Elem c = square_coefficient(*F, sv);
  std::vector<Code> x(rep.q);
  for (Elem a = 0; a < rep.q; ++a) x[a] = G->encode(inertia_element(*F, sv, a));
  for (Elem a = 1; a < rep.q; ++a) {
    const Code sq = G->power(x[a], 2);
    rep.square_identity = rep.square_identity && sq == G->element(al(2, 3), F->mul(c, F->mul(a, a)));
    rep.order_four = rep.order_four && sq != PatternQuotient::identity() && G->power(x[a], 4) == PatternQuotient::identity();
  }
  // mu_3 on Q_3 with the chosen s-values and zero on the free roots.
  std::vector<int> tpos;
  std::vector<Elem> svec;
  for (const Root& r : e.T) {
    tpos.push_back(*G->coord_index(r));
    svec.push_back(sv.count(r) ? sv[r] : 0);
  }
  auto mu3 = [&](Code t) {
    std::vector<Elem> d;
    for (int k : tpos) d.push_back(G->digit(t, k));
    return detail::lambda_exp(*F, svec, d);
  };
  for (Elem a = 1; a < rep.q; ++a)
    if (mu3(G->power(x[a], 2)) == 1) {
      rep.a0 = a;
      rep.mu3_at_square = 1;
      break;
    }
  if (rep.a0 == 0) return rep;

  // I = Q_3 <x(a)>.
  std::vector<Code> gens;
  std::vector<int> base_exp;
  for (std::size_t k = 0; k < e.T.size(); ++k)
    for (Elem b : F->additive_basis()) {
      gens.push_back(G->element(e.T[k], b));
      base_exp.push_back(2 * detail::lambda_exp(*F, {svec[k]}, {b}));
    }
  const auto basis = F->additive_basis();
  for (Elem b : basis) gens.push_back(x[b]);
  const std::uint64_t I_order = uptri::detail::q_pow(rep.q, static_cast<int>(e.T.size()) + 1);
  if (I_order > budgets.enumeration) return rep;
  auto I = std::make_shared<const Group>(Group::generated(G, gens, budgets.enumeration));
  if (I->order() != I_order) return rep;

  // Extensions of mu_3: choose zeta_4 exponents for each x(b); from_generators rejects the
  // choices that are not homomorphisms.
  std::vector<LinearChar> exts;
  const std::size_t nb = basis.size();
  for (std::uint64_t code = 0; code < (1ull << (2 * nb)); ++code) {
    std::vector<int> exps = base_exp;
    for (std::size_t i = 0; i < nb; ++i) exps.push_back(static_cast<int>(code >> (2 * i) & 3u));
    try {
      exts.push_back(LinearChar::from_generators(I, gens, exps, 4));
    } catch (const InconsistencyError&) {
    }
  }
  rep.extensions = exts.size();
  if (exts.size() < 2) return rep;
  for (const auto& lam : exts) rep.mu4_exponents.push_back(lam.exponent(x[rep.a0]));

  // Left transversal of I from X_2 X_3 X_6 X_8.
  std::vector<Code> T;
  {
    std::vector<Elem> a(4, 0);
    for (;;) {
      UniMatrix m = identity_matrix(9);
      const Root rs[4] = {al(2), al(3), al(6), al(8)};
      for (int i = 0; i < 4; ++i) m = mul(*F, m, root_element(9, rs[i], a[i]));
      T.push_back(G->encode(m));
      std::size_t i = 0;
      while (i < 4 && ++a[i] == rep.q) a[i++] = 0;
      if (i == 4) break;
    }
  }
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = i + 1; j < T.size(); ++j)
      if (I->contains(G->mul(G->inv(T[i]), T[j]))) return rep;
  if (T.size() * I->order() != G->order()) return rep;

  // Induced values chi(g) = sum over the transversal of mu_4(r^{-1} g r) when it lies in I.
  auto induced = [&](const LinearChar& lam, Code g) {
    CycloValue v(4);
    for (Code r : T) {
      const Code y = G->conjugate(g, r);
      if (I->contains(y)) v = v + lam(y);
    }
    return v;
  };
  // Pick the pair of extensions with conjugate values at x(a0).
  std::size_t ip = 0, im = 1;
  for (std::size_t i = 0; i < exts.size(); ++i)
    for (std::size_t j = 0; j < exts.size(); ++j)
      if (exts[i].exponent(x[rep.a0]) == 1 && exts[j].exponent(x[rep.a0]) == 3) {
        ip = i;
        im = j;
      }
  const LinearChar &lp = exts[ip], &lm = exts[im];
  rep.conjugate_pair = true;
  std::optional<Code> witness;
  for (std::uint64_t k = 0; k < I->order(); ++k) {
    const Code g = I->element(k);
    const CycloValue a = induced(lp, g), b = induced(lm, g);
    if (b != a.conj()) rep.conjugate_pair = false;
    if (!witness && !a.is_real()) {
      witness = g;
      rep.value_plus = a.to_string();
      rep.value_minus = b.to_string();
    }
  }
  rep.nonreal = witness.has_value();
  if (witness) rep.witness = to_string(G->decode(*witness));
  rep.constructed = true;
  // mu_4 extends mu_3 and I is the full inertia group of mu_3 (verify_branch), so each
  // induced character is irreducible. Check the inertia statement directly here.
  {
    VerifyOptions o;
    o.exhaustive_limit = 1;
    o.samples = 4;
    const BranchReport br = verify_branch(e, P, o);
    rep.irreducible_by_inertia = br.ok();
  }
  return rep;
}

}  // namespace uptri::u13
