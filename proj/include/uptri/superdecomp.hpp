#pragma once

// Decomposition of supercharacters: reduction of lambda_D^U to the local problem
// mu^{R_D} inside U_k(q), constituent censuses by structural shortcuts or the
// character-table oracle, and the arm-induction irreducibility certificate.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "uptri/basicset.hpp"
#include "uptri/charfn.hpp"
#include "uptri/errors.hpp"
#include "uptri/tables.hpp"
#include "uptri/unigroup.hpp"

namespace uptri {

/// lambda_D^{V_D R_D} reduced to R_D, in local U_k coordinates (rank k-1 roots).
struct ReducedProblem {
  BasicSet D;
  PhiAssignment phi;
  std::shared_ptr<const Fq> field;
  RootSet R;   // Gamma_D
  RootSet Vc;  // V_D cap R_D
  RootSet Kc;  // K_D cap R_D
  std::vector<Root> mu_roots;  // D cap Gamma_D
  PhiAssignment mu_phi;
  int index_exp = 0;  // [U : V_D R_D]
  int arm_exp = 0;    // [U : V_D]
  int norm_exp = 0;   // [V_D R_D : V_D] = <mu^R, mu^R>

  int k() const { return D.k(); }
  int local_n() const { return std::max(D.k(), 2); }

  /// R_D / (K_D cap R_D).
  std::shared_ptr<const PatternQuotient> quotient() const {
    return std::make_shared<const PatternQuotient>(field, PatternGroup(local_n(), R), Kc);
  }

  /// mu as a character of the image of V_D cap R_D in `Rbar`.
  LinearChar mu(std::shared_ptr<const PatternQuotient> Rbar) const {
    return root_coefficient_char(std::move(Rbar), Vc, mu_roots, mu_phi);
  }
};

inline ReducedProblem reduce(const BasicSet& D, const PhiAssignment& phi, std::shared_ptr<const Fq> F) {
  if (static_cast<int>(phi.size()) != D.k()) throw std::invalid_argument("phi must have one entry per root of D");
  for (auto s : phi)
    if (s == 0 || s >= F->q()) throw std::invalid_argument("phi entries must be nonzero field elements");
  const RootSet gam = gamma_set(D), V = v_pattern(D), K = k_pattern(D);
  ReducedProblem P{D, phi, F, localize(D, gam), localize(D, gam & V), localize(D, gam & K), {}, {}, 0, 0, 0};
  for (int i = 1; i <= D.k(); ++i)
    if (gam.contains(D.tau(i))) {
      P.mu_roots.push_back(*to_local(D, D.tau(i)));
      P.mu_phi.push_back(phi[i - 1]);
    }
  const int n = D.n();
  P.index_exp = n * (n - 1) / 2 - static_cast<int>(vr_pattern(D).size());
  P.arm_exp = arm_total(D);
  P.norm_exp = static_cast<int>(vr_pattern(D).size() - V.size());
  if (P.norm_exp != static_cast<int>(P.R.size() - P.Vc.size()) || P.arm_exp != P.index_exp + P.norm_exp)
    throw InconsistencyError("index bookkeeping for V_D R_D does not close up");
  if (!is_normal_in(P.Kc, P.R)) throw InconsistencyError("K_D cap R_D is not normal in R_D");
  // The image of V_D cap R_D must be central in the quotient, checked on root brackets.
  const RootSet central = P.quotient()->central_roots();
  for (const Root& r : (P.Vc - P.Kc).roots())
    if (!central.contains(r)) throw InconsistencyError("image of V_D cap R_D is not central: " + to_string(r));
  return P;
}

enum class Strategy { automatic, structural, special, recursion, oracle };

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::automatic: return "auto";
    case Strategy::structural: return "structural";
    case Strategy::special: return "special";
    case Strategy::recursion: return "recursion";
    case Strategy::oracle: return "oracle";
  }
  return "?";
}

inline Strategy parse_strategy(const std::string& s) {
  for (Strategy t : {Strategy::automatic, Strategy::structural, Strategy::special, Strategy::recursion, Strategy::oracle})
    if (to_string(t) == s) return t;
  throw ParseError("unknown strategy '" + s + "'");
}

/// Constituents chi^U sharing a degree q^degree_exp and a multiplicity q^mult_exp.
/// `rational` marks values in Q(zeta_p), which is Q itself when p = 2.
struct CensusRecord {
  int degree_exp = 0;
  int mult_exp = 0;
  std::uint64_t count = 0;
  bool rational = true;

  friend auto operator<=>(const CensusRecord&, const CensusRecord&) = default;
};

struct ConstituentCensus {
  int q = 2;
  Strategy provenance = Strategy::automatic;
  int index_exp = 0;
  int arm_exp = 0;
  int norm_exp = 0;
  std::vector<CensusRecord> records;

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (const auto& r : records) s += r.count;
    return s;
  }

  /// Sum of count * multiplicity * degree, which must be xi(1) = q^arm_exp.
  long double mass() const {
    long double s = 0;
    for (const auto& r : records) s += static_cast<long double>(r.count) * std::pow(static_cast<long double>(q), r.mult_exp + r.degree_exp);
    return s;
  }

  /// Sum of count * multiplicity^2, which must be [V_D R_D : V_D] = q^norm_exp.
  long double norm() const {
    long double s = 0;
    for (const auto& r : records) s += static_cast<long double>(r.count) * std::pow(static_cast<long double>(q), 2 * r.mult_exp);
    return s;
  }

  bool invariants_hold() const {
    const long double qq = q;
    return mass() == std::pow(qq, arm_exp) && norm() == std::pow(qq, norm_exp) &&
           std::all_of(records.begin(), records.end(), [](const CensusRecord& r) { return r.count > 0; });
  }
};

/// Raised when no strategy fits its budget. The norm <mu^R, mu^R> is known regardless.
class CensusBudgetError : public BudgetError {
 public:
  CensusBudgetError(const BudgetError& e, int norm_exp)
      : BudgetError("census: " + e.subject(), e.requested(), e.budget()), norm_exp_(norm_exp) {}
  int norm_exp() const noexcept { return norm_exp_; }

 private:
  int norm_exp_;
};

namespace detail {

inline std::vector<CensusRecord> merge_records(const std::vector<CensusRecord>& in) {
  std::map<std::tuple<int, int, bool>, std::uint64_t> acc;
  for (const auto& r : in) acc[{r.degree_exp, r.mult_exp, r.rational}] += r.count;
  std::vector<CensusRecord> out;
  for (const auto& [key, c] : acc) out.push_back({std::get<0>(key), std::get<1>(key), c, std::get<2>(key)});
  return out;
}

inline int log_q(std::uint64_t v, int q) {
  int e = 0;
  while (v % static_cast<std::uint64_t>(q) == 0 && v > 1) {
    v /= static_cast<std::uint64_t>(q);
    ++e;
  }
  if (v != 1) throw InconsistencyError("value is not a power of q");
  return e;
}

inline std::uint64_t q_pow(int q, int e) {
  std::uint64_t v = 1;
  for (int i = 0; i < e; ++i) v *= static_cast<std::uint64_t>(q);
  return v;
}

/// Local records (degree = multiplicity = q^d in Irr(R_D, mu)) lifted to U.
inline ConstituentCensus lift(const ReducedProblem& P, Strategy s, const std::vector<CensusRecord>& local) {
  ConstituentCensus c{P.field->q(), s, P.index_exp, P.arm_exp, P.norm_exp, {}};
  for (auto r : local) {
    if (r.degree_exp != r.mult_exp) throw InconsistencyError("local multiplicity differs from local degree");
    r.degree_exp += P.index_exp;
    c.records.push_back(r);
  }
  c.records = merge_records(c.records);
  if (!c.invariants_hold()) throw InconsistencyError("census violates the mass or norm identity");
  return c;
}

}  // namespace detail

/// R_D / (K_D cap R_D) trivial or abelian: every extension of mu is linear.
inline std::optional<std::vector<CensusRecord>> census_structural(const ReducedProblem& P) {
  auto Rbar = P.quotient();
  if (!Rbar->is_abelian_by_roots()) return std::nullopt;
  const int free = Rbar->rank() - static_cast<int>((P.Vc - P.Kc).size());
  const std::uint64_t n = detail::q_pow(P.field->q(), free);
  // Linear characters of an elementary abelian p-group take values in Q(zeta_p).
  return std::vector<CensusRecord>{{0, 0, n, true}};
}

/// R_D / (K_D cap R_D) special of type q^{1+2t} with centre the image of V_D cap R_D:
/// mu is faithful on the centre, so there is exactly one constituent, of degree q^t.
inline std::optional<std::vector<CensusRecord>> census_special(const ReducedProblem& P, const Budgets& b) {
  auto Rbar = P.quotient();
  const RootSet vbar = P.Vc - P.Kc;
  if (vbar.size() != 1 || !(Rbar->central_roots() == vbar)) return std::nullopt;
  Group G(Rbar, b.enumeration);
  auto t = is_special(G, b.enumeration);
  if (!t) return std::nullopt;
  // The centre is generated by the root subgroup of vbar.
  if (!(center(G, b.enumeration) == Group::pattern(Rbar, vbar, b.enumeration)))
    throw InconsistencyError("centre of the special quotient is not the image of V_D cap R_D");
  return std::vector<CensusRecord>{{*t, *t, 1, true}};
}

ConstituentCensus census(const BasicSet& D, const PhiAssignment& phi, std::shared_ptr<const Fq> F,
                         Strategy strategy = Strategy::automatic, const Budgets& b = {});

/// D = d2_family(m, n) with m >= 2: R_D is U_{2m-1}(q) and mu^{R_D} = q xi' for the
/// supercharacter xi' of d2_family(m-1, 2m-1). Local degrees are the U_{2m-1} degrees.
inline std::optional<std::vector<CensusRecord>> census_recursion(const ReducedProblem& P, const Budgets& b) {
  const auto m = as_d2_family(P.D);
  if (!m || *m < 2) return std::nullopt;
  const BasicSet Dp = d2_family(*m - 1, 2 * *m - 1);
  const PhiAssignment phip(P.phi.begin(), P.phi.begin() + Dp.k());
  if (!(P.R == RootSet::positive(2 * *m - 1)) || P.mu_roots != Dp.roots() || P.mu_phi != phip)
    throw InconsistencyError("reduced data of d2_family do not match the smaller family");
  const ConstituentCensus sub = census(Dp, phip, P.field, Strategy::automatic, b);
  if (sub.index_exp != 1) throw InconsistencyError("recursion step expects [U' : V' R'] = q");
  std::vector<CensusRecord> local;
  for (const auto& r : sub.records) local.push_back({r.degree_exp, r.mult_exp + 1, r.count, r.rational});
  return local;
}

/// Character table of R_D / (K_D cap R_D) and the decomposition of mu induced to it.
inline std::vector<CensusRecord> census_oracle(const ReducedProblem& P, const Budgets& b) {
  auto Rbar = P.quotient();
  if (Rbar->order() > b.table_order) throw BudgetError("oracle quotient order", Rbar->order(), b.table_order);
  auto G = EnumeratedGroup::make(Group(Rbar, b.enumeration), b);
  const CharacterTable T = character_table(G, b);
  const ClassFunction ind = induce(P.mu(Rbar), G);
  std::vector<CensusRecord> local;
  for (const auto& c : decompose(ind, T)) {
    const std::int64_t deg = T.irr[c.index].degree().numerator();
    if (c.multiplicity != deg) throw InconsistencyError("constituent multiplicity differs from its degree");
    const int d = detail::log_q(static_cast<std::uint64_t>(deg), P.field->q());
    local.push_back({d, d, 1, T.irr[c.index].values_in_order(P.field->p())});
  }
  return detail::merge_records(local);
}

inline ConstituentCensus census(const BasicSet& D, const PhiAssignment& phi, std::shared_ptr<const Fq> F,
                                Strategy strategy, const Budgets& b) {
  const ReducedProblem P = reduce(D, phi, F);
  auto attempt = [&](Strategy s) -> std::optional<std::vector<CensusRecord>> {
    switch (s) {
      case Strategy::structural: return census_structural(P);
      case Strategy::special: return census_special(P, b);
      case Strategy::recursion: return census_recursion(P, b);
      case Strategy::oracle: return census_oracle(P, b);
      case Strategy::automatic: break;
    }
    return std::nullopt;
  };
  if (strategy != Strategy::automatic) {
    try {
      auto r = attempt(strategy);
      if (!r) throw std::invalid_argument("strategy " + to_string(strategy) + " does not apply to D = " + to_string(D));
      return detail::lift(P, strategy, *r);
    } catch (const CensusBudgetError&) {
      throw;
    } catch (const BudgetError& e) {
      throw CensusBudgetError(e, P.norm_exp);
    }
  }
  std::optional<BudgetError> last;
  for (Strategy s : {Strategy::structural, Strategy::special, Strategy::recursion, Strategy::oracle}) {
    try {
      if (auto r = attempt(s)) return detail::lift(P, s, *r);
    } catch (const CensusBudgetError&) {
      throw;
    } catch (const BudgetError& e) {
      last = e;
    }
  }
  if (last) throw CensusBudgetError(*last, P.norm_exp);
  throw InconsistencyError("no census strategy applied");
}

inline ConstituentCensus census(const BasicSet& D, const PhiAssignment& phi, int q, Strategy s = Strategy::automatic,
                                const Budgets& b = {}) {
  return census(D, phi, std::make_shared<const Fq>(Fq::from_order(q)), s, b);
}

/// Degree exponent of the single d1_family constituent, alongside the exponent obtained by
/// adding the index [U : V_D R_D] itself (not its exponent) to k - 1.
struct D1DegreeReport {
  int computed_exp;
  std::uint64_t additive_reading_exp;
};

inline D1DegreeReport d1_degree_report(int k, int n, int q) {
  const BasicSet D = d1_family(k, n);
  const ReducedProblem P = reduce(D, PhiAssignment(static_cast<std::size_t>(D.k()), 1), std::make_shared<const Fq>(Fq::from_order(q)));
  return {(k - 1) + P.index_exp, static_cast<std::uint64_t>(k - 1) + detail::q_pow(q, P.index_exp)};
}

// ---------------------------------------------------------------------------
// Arm-induction certificate

struct LadderStep {
  Root tau;
  Root beta;   // arm root adjoined at this step
  Root delta;  // leg root with beta + delta = tau, in the kernel of the current character
};

struct LadderCertificate {
  std::vector<LadderStep> steps;
  ClassFunction induced;  // chi^U
};

/// Induces chi from V_D R_D to U along the arms of D in column order, checking at each step
/// that no nonidentity element of X_beta fixes the current character (via a witness in
/// X_delta) and that the induced character stays irreducible. The last step lands on
/// `whole` when given, so the result is comparable with that group's class functions.
inline LadderCertificate ladder_induce(const ClassFunction& chi, const BasicSet& D, const PhiAssignment& phi,
                                       const Budgets& b = {}, GroupPtr whole = nullptr) {
  const auto amb = chi.group()->group().ambient_ptr();
  const Fq& F = amb->field();
  const int n = D.n();
  if (amb->n() != n || !amb->kernel().empty() || !(amb->pattern().support == RootSet::positive(n)))
    throw std::invalid_argument("ladder_induce needs a character of a subgroup of U_n");
  const RootSet vr = vr_pattern(D);
  if (!(chi.group()->group() == Group::pattern(amb, vr, b.enumeration)))
    throw std::invalid_argument("character does not live on V_D R_D");
  if (inner(chi, chi) != Rational(1)) throw std::invalid_argument("character is not irreducible");
  if (inner(chi, induce(lambda_D(amb, D, phi), chi.group())) == Rational(0))
    throw std::invalid_argument("character does not lie over lambda_D");

  LadderCertificate cert;
  RootSet support = vr;
  ClassFunction cur = chi;
  for (int i = 1; i <= D.k(); ++i) {
    const Root tau = D.tau(i);
    std::vector<Root> A;
    for (const Root& a : arm(tau, n).roots())
      if (!vr.contains(a)) A.push_back(a);
    std::sort(A.begin(), A.end(), [](const Root& x, const Root& y) { return x.j > y.j; });
    for (const Root& beta : A) {
      const Root delta{beta.j + 1, tau.j};
      if (!support.contains(delta)) throw InconsistencyError("witness root is missing from the current group");
      // X_delta must lie in the kernel of the current character.
      for (Elem d = 1; d < F.q(); ++d)
        if (cur.at(amb->element(delta, d)) != cur[0]) throw InconsistencyError("X_delta is not in the kernel");
      for (Elem a = 1; a < F.q(); ++a) {
        const Code x = amb->element(beta, a);
        const ClassFunction moved = conj_by(cur, amb->inv(x));  // y -> cur(x^{-1} y x)
        bool witnessed = false;
        for (Elem d = 1; d < F.q() && !witnessed; ++d) {
          const Code y = amb->element(delta, d);
          witnessed = moved.at(y) != cur.at(y);
        }
        if (!witnessed) throw InconsistencyError("inertia group exceeds the current step at " + to_string(beta));
      }
      support.insert(beta);
      if (!is_closed(support)) throw InconsistencyError("ladder step left the pattern subgroups");
      auto next = whole && support == RootSet::positive(n) ? whole
                                                           : EnumeratedGroup::make(Group::pattern(amb, support, b.enumeration), b);
      cur = induce(cur, next);
      if (inner(cur, cur) != Rational(1)) throw InconsistencyError("ladder step produced a reducible character");
      cert.steps.push_back({tau, beta, delta});
    }
  }
  if (!(support == RootSet::positive(n))) throw InconsistencyError("ladder did not reach U");
  if (whole && cur.group() != whole) cur = induce(cur, whole);
  cert.induced = cur;
  return cert;
}

/// Irr(V_D R_D, lambda_D) from the character table of V_D R_D.
inline std::vector<ClassFunction> vr_constituents(std::shared_ptr<const PatternQuotient> U, const BasicSet& D,
                                                  const PhiAssignment& phi, const Budgets& b = {}) {
  auto VR = EnumeratedGroup::make(Group::pattern(U, vr_pattern(D), b.enumeration), b);
  const CharacterTable T = character_table(VR, b);
  const ClassFunction ind = induce(lambda_D(U, D, phi), VR);
  std::vector<ClassFunction> out;
  for (const auto& c : decompose(ind, T)) out.push_back(T.irr[c.index]);
  return out;
}

// ---------------------------------------------------------------------------
// Whole-group checks

struct PartitionReport {
  int n = 0;
  int q = 0;
  std::size_t irreducibles = 0;
  std::size_t supercharacters = 0;
  std::size_t covered_once = 0;
  std::size_t uncovered = 0;
  std::size_t covered_twice_or_more = 0;
  bool principal_excluded = true;

  bool ok() const { return principal_excluded && uncovered == 0 && covered_twice_or_more == 0 && covered_once + 1 == irreducibles; }
};

/// Every nonprincipal irreducible of U_n(q) lies in exactly one supercharacter.
inline PartitionReport partition_check(int n, std::shared_ptr<const Fq> F, const Budgets& b = {}) {
  auto U = std::make_shared<const PatternQuotient>(F, PatternGroup::full(n));
  if (U->order() > b.table_order) throw BudgetError("partition check group order", U->order(), b.table_order);
  auto G = EnumeratedGroup::make(Group(U, b.enumeration), b);
  const CharacterTable T = character_table(G, b);
  PartitionReport rep{n, F->q(), T.size(), 0, 0, 0, 0, true};
  std::vector<int> hits(T.size(), 0);
  for (const auto& D : all_basic_sets(n))
    for (const auto& phi : all_phis(*F, D.k())) {
      ++rep.supercharacters;
      for (const auto& c : decompose(induce(lambda_D(U, D, phi), G), T)) ++hits[c.index];
    }
  rep.principal_excluded = hits[0] == 0;
  for (std::size_t i = 1; i < T.size(); ++i) {
    if (hits[i] == 0) ++rep.uncovered;
    else if (hits[i] == 1) ++rep.covered_once;
    else ++rep.covered_twice_or_more;
  }
  return rep;
}

/// True when every phi in E(D) yields the same census.
inline bool phi_independence_check(const BasicSet& D, std::shared_ptr<const Fq> F, Strategy s = Strategy::oracle,
                                   const Budgets& b = {}) {
  std::optional<std::vector<CensusRecord>> first;
  for (const auto& phi : all_phis(*F, D.k())) {
    auto c = census(D, phi, F, s, b).records;
    if (!first) first = c;
    else if (*first != c) return false;
  }
  return true;
}

}  // namespace uptri
