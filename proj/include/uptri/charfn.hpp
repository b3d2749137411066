#pragma once

// Class functions on enumerated groups with exact cyclotomic values, and linear
// characters given either by root coefficients or by generator values.

#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "uptri/basicset.hpp"
#include "uptri/errors.hpp"
#include "uptri/scalars.hpp"
#include "uptri/unigroup.hpp"

namespace uptri {

/// p^e with p^e >= n (at least p): the exponent bound of U_n(q), shared by every
/// group living in the same ambient so that all their class functions share one ring.
inline int ambient_cyclo_order(const PatternQuotient& amb) {
  const int p = amb.field().p();
  int m = p;
  while (m < amb.n()) m *= p;
  return m;
}

/// A group together with its conjugacy classes and the cyclotomic order its values need.
class EnumeratedGroup {
 public:
  EnumeratedGroup(Group G, const Budgets& budgets) : G_(std::move(G)), cd_(conjugacy_classes(G_, budgets.enumeration)) {
    exponent_ = 1;
    for (Code r : cd_.reps) exponent_ = std::max(exponent_, element_order(G_, r));
    cyclo_ = ambient_cyclo_order(G_.ambient());
    if (cyclo_ % exponent_) throw InconsistencyError("group exponent exceeds the ambient bound");
    for (std::size_t c = 0; c < cd_.count(); ++c) {
      if (cd_.sizes[c] == 0) throw InconsistencyError("empty class");
      const auto p = static_cast<std::uint64_t>(G_.ambient().field().p());
      std::uint64_t s = cd_.sizes[c];
      while (s % p == 0) s /= p;
      if (s != 1) throw InconsistencyError("class size is not a power of p");
    }
  }

  static std::shared_ptr<const EnumeratedGroup> make(Group G, const Budgets& b) {
    return std::make_shared<const EnumeratedGroup>(std::move(G), b);
  }

  const Group& group() const noexcept { return G_; }
  const ClassData& classes() const noexcept { return cd_; }
  std::size_t class_count() const noexcept { return cd_.count(); }
  std::uint64_t order() const noexcept { return G_.order(); }
  std::uint64_t exponent() const noexcept { return exponent_; }
  int cyclo_order() const noexcept { return cyclo_; }
  const Fq& field() const { return G_.ambient().field(); }

  std::optional<std::uint32_t> class_of(Code c) const {
    auto idx = G_.index_of(c);
    if (!idx) return std::nullopt;
    return cd_.class_of[*idx];
  }

  std::uint32_t class_of_member(Code c) const {
    auto k = class_of(c);
    if (!k) throw std::invalid_argument("element not in the group");
    return *k;
  }

  /// Class of rep(c)^s.
  std::uint32_t power_class(std::size_t c, std::uint64_t s) const {
    return class_of_member(G_.ambient().power(cd_.reps[c], s));
  }

  std::uint32_t inverse_class(std::size_t c) const { return class_of_member(G_.inv(cd_.reps[c])); }

 private:
  Group G_;
  ClassData cd_;
  std::uint64_t exponent_ = 1;
  int cyclo_ = 1;
};

using GroupPtr = std::shared_ptr<const EnumeratedGroup>;

class ClassFunction {
 public:
  ClassFunction() = default;
  ClassFunction(GroupPtr G, std::vector<CycloValue> values) : G_(std::move(G)), v_(std::move(values)) {
    if (v_.size() != G_->class_count()) throw std::invalid_argument("one value per class required");
    for (auto& x : v_)
      if (x.order() != G_->cyclo_order()) x = x.embed(G_->cyclo_order());
  }

  static ClassFunction trivial(GroupPtr G) {
    return ClassFunction(G, std::vector<CycloValue>(G->class_count(), CycloValue::rational(G->cyclo_order(), 1)));
  }

  /// The regular character.
  static ClassFunction regular(GroupPtr G) {
    std::vector<CycloValue> v(G->class_count(), CycloValue(G->cyclo_order()));
    v[0] = CycloValue::rational(G->cyclo_order(), static_cast<std::int64_t>(G->order()));
    return ClassFunction(G, v);
  }

  const GroupPtr& group() const noexcept { return G_; }
  const std::vector<CycloValue>& values() const noexcept { return v_; }
  const CycloValue& operator[](std::size_t c) const { return v_[c]; }

  CycloValue at(Code g) const { return v_[G_->class_of_member(g)]; }

  Rational degree() const {
    auto r = v_[0].as_rational();
    if (!r) throw InconsistencyError("value at the identity is not rational");
    return *r;
  }

  /// True iff every value lies in Q(zeta_m): fixed by each zeta -> zeta^a with a = 1 mod m.
  bool values_in_order(int m) const {
    for (const auto& x : v_) {
      const int L = std::lcm(m, x.order());
      const CycloValue y = x.embed(L);
      for (int a = 1 + m; a < L; a += m) {
        if (std::gcd(a, L) != 1) continue;
        std::vector<Rational> c(L, Rational(0));
        for (int k = 0; k < L; ++k) c[(static_cast<long>(k) * a) % L] += y.coeffs()[k];
        if (CycloValue::from_coeffs(L, std::move(c)) != y) return false;
      }
    }
    return true;
  }

  bool is_real() const {
    return std::all_of(v_.begin(), v_.end(), [](const CycloValue& x) { return x.is_real(); });
  }

  ClassFunction conj() const {
    std::vector<CycloValue> v;
    for (const auto& x : v_) v.push_back(x.conj());
    return ClassFunction(G_, v);
  }

  ClassFunction& operator+=(const ClassFunction& o) {
    same(o);
    for (std::size_t c = 0; c < v_.size(); ++c) v_[c] += o.v_[c];
    return *this;
  }
  ClassFunction& operator-=(const ClassFunction& o) {
    same(o);
    for (std::size_t c = 0; c < v_.size(); ++c) v_[c] -= o.v_[c];
    return *this;
  }
  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
  friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) { return a -= b; }

  ClassFunction scaled(Rational r) const {
    ClassFunction out = *this;
    for (auto& x : out.v_) x = x.scaled(r);
    return out;
  }

  friend bool operator==(const ClassFunction& a, const ClassFunction& b) { return a.G_ == b.G_ && a.v_ == b.v_; }

  void same(const ClassFunction& o) const {
    if (o.G_ != G_) throw std::invalid_argument("class functions live on different groups");
  }

 private:
  GroupPtr G_;
  std::vector<CycloValue> v_;
};

/// (1/|G|) sum over classes of size * chi * conj(psi).
inline Rational inner(const ClassFunction& chi, const ClassFunction& psi) {
  chi.same(psi);
  const auto& G = *chi.group();
  CycloValue acc(G.cyclo_order());
  for (std::size_t c = 0; c < G.class_count(); ++c) {
    if (chi[c].is_zero() || psi[c].is_zero()) continue;
    acc += (chi[c] * psi[c].conj()).scaled(Rational(static_cast<std::int64_t>(G.classes().sizes[c])));
  }
  auto r = acc.as_rational();
  if (!r) throw InconsistencyError("inner product is not rational: " + acc.to_string());
  return *r / Rational(static_cast<std::int64_t>(G.order()));
}

inline ClassFunction tensor(const ClassFunction& a, const ClassFunction& b) {
  a.same(b);
  std::vector<CycloValue> v;
  for (std::size_t c = 0; c < a.values().size(); ++c) v.push_back(a[c] * b[c]);
  return ClassFunction(a.group(), v);
}

/// Values on H's classes; H must be a subgroup of G in the same ambient.
inline ClassFunction restrict_to(const ClassFunction& chi, GroupPtr H) {
  const auto& G = *chi.group();
  if (&G.group().ambient() != &H->group().ambient()) throw std::invalid_argument("restriction across ambients");
  std::vector<CycloValue> v;
  for (Code r : H->classes().reps) {
    auto c = G.class_of(r);
    if (!c) throw std::invalid_argument("restriction target is not a subgroup");
    v.push_back(chi[*c]);
  }
  return ClassFunction(H, v);
}

/// Converts integer counts on powers of zeta_m into a value scaled by `scale`.
inline CycloValue from_counts(int m, const std::vector<std::int64_t>& counts, Rational scale) {
  std::vector<Rational> c(m, Rational(0));
  for (int k = 0; k < m; ++k) c[k] = Rational(counts[k]) * scale;
  return CycloValue::from_coeffs(m, std::move(c));
}

/// (chi^G)(g) = (|G| / (|H| |g^G|)) * sum of chi over g^G cap H.
inline ClassFunction induce(const ClassFunction& chi, GroupPtr G) {
  const auto& H = *chi.group();
  if (&H.group().ambient() != &G->group().ambient()) throw std::invalid_argument("induction across ambients");
  if (!G->group().contains(H.group())) throw std::invalid_argument("induction source is not a subgroup");
  const int m = G->cyclo_order();
  if (m % H.cyclo_order()) throw std::invalid_argument("subgroup values need a larger cyclotomic order");
  std::vector<CycloValue> out;
  for (std::size_t c = 0; c < G->class_count(); ++c) {
    std::vector<std::int64_t> hits(H.class_count(), 0);
    bool any = false;
    for (Code y : G->classes().members[c])
      if (auto hc = H.class_of(y)) {
        ++hits[*hc];
        any = true;
      }
    CycloValue acc(m);
    if (any)
      for (std::size_t hc = 0; hc < hits.size(); ++hc)
        if (hits[hc]) acc += chi[hc].embed(m).scaled(Rational(hits[hc]));
    const Rational scale(static_cast<std::int64_t>(G->order()),
                         static_cast<std::int64_t>(H.order() * G->classes().sizes[c]));
    out.push_back(acc.scaled(scale));
  }
  return ClassFunction(G, out);
}

/// Lifts a class function of the quotient Q = P/N to G = P/K (K inside N), along the
/// projection given by re-encoding coset representatives.
inline ClassFunction inflate(const ClassFunction& chi, GroupPtr G) {
  const auto& Q = *chi.group();
  const auto& qa = Q.group().ambient();
  const auto& ga = G->group().ambient();
  if (!(qa.pattern().support == ga.pattern().support) || !ga.kernel().subset_of(qa.kernel()))
    throw std::invalid_argument("inflation needs a quotient of the same pattern group by a larger kernel");
  std::vector<CycloValue> v;
  for (Code r : G->classes().reps) {
    auto c = Q.class_of(qa.encode(ga.decode(r)));
    if (!c) throw std::invalid_argument("image of G is not inside the quotient group");
    v.push_back(chi[*c]);
  }
  if (G->cyclo_order() % Q.cyclo_order()) throw std::invalid_argument("quotient values need a larger order");
  return ClassFunction(G, v);
}

/// (^g chi)(x) = chi(g x g^{-1}); g must normalize the group of chi.
inline ClassFunction conj_by(const ClassFunction& chi, Code g) {
  const auto& H = *chi.group();
  const auto& amb = H.group().ambient();
  const Code ginv = amb.inv(g);
  std::vector<CycloValue> v;
  for (Code r : H.classes().reps) {
    auto c = H.class_of(amb.mul(amb.mul(g, r), ginv));
    if (!c) throw std::invalid_argument("conjugating element does not normalize the group");
    v.push_back(chi[*c]);
  }
  return ClassFunction(chi.group(), v);
}

// ---------------------------------------------------------------------------
// Linear characters

/// A linear character with values in the m-th roots of unity, stored as the exponent
/// of zeta_m at each element of its domain.
class LinearChar {
 public:
  using ExponentFn = std::function<int(Code)>;

  LinearChar(std::shared_ptr<const PatternQuotient> amb, RootSet support, int m, ExponentFn fn)
      : amb_(std::move(amb)), support_(std::move(support)), m_(m), fn_(std::move(fn)) {}

  LinearChar(std::shared_ptr<const Group> domain, int m, ExponentFn fn)
      : amb_(domain->ambient_ptr()), support_(RootSet(amb_->n())), domain_(std::move(domain)), m_(m), fn_(std::move(fn)) {}

  /// Extends generator values multiplicatively over the generated group, and throws if
  /// the result is not a well-defined homomorphism.
  static LinearChar from_generators(std::shared_ptr<const Group> domain, const std::vector<Code>& gens,
                                    const std::vector<int>& exps, int m) {
    auto table = std::make_shared<std::unordered_map<Code, int>>();
    (*table)[PatternQuotient::identity()] = 0;
    std::vector<Code> frontier{PatternQuotient::identity()};
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      const Code x = frontier[k];
      for (std::size_t s = 0; s < gens.size(); ++s) {
        const Code y = domain->mul(x, gens[s]);
        const int e = static_cast<int>(detail::mod((*table)[x] + exps[s], m));
        auto [it, fresh] = table->emplace(y, e);
        if (fresh) frontier.push_back(y);
        else if (it->second != e) throw InconsistencyError("generator values do not define a homomorphism");
      }
    }
    if (table->size() != domain->order()) throw std::invalid_argument("generators do not generate the domain");
    return LinearChar(domain, m, [table](Code c) { return table->at(c); });
  }

  const PatternQuotient& ambient() const { return *amb_; }
  std::shared_ptr<const PatternQuotient> ambient_ptr() const { return amb_; }
  int order() const noexcept { return m_; }
  bool is_pattern() const noexcept { return domain_ == nullptr; }
  const RootSet& support() const noexcept { return support_; }

  bool contains(Code c) const {
    if (domain_) return domain_->contains(c);
    const auto q = static_cast<Code>(amb_->field().q());
    for (const Root& r : amb_->coords()) {
      if (c % q && !support_.contains(r)) return false;
      c /= q;
    }
    return true;
  }

  std::uint64_t domain_order() const {
    if (domain_) return domain_->order();
    std::uint64_t o = 1;
    for (const Root& r : amb_->coords())
      if (support_.contains(r)) o *= static_cast<std::uint64_t>(amb_->field().q());
    return o;
  }

  /// Exponent of zeta_m at c; c must lie in the domain.
  int exponent(Code c) const { return fn_(c); }
  CycloValue operator()(Code c) const { return CycloValue::zeta(m_, exponent(c)); }

  /// (^g lambda)(x) = lambda(g x g^{-1}).
  LinearChar conj_by(Code g) const {
    auto amb = amb_;
    auto fn = fn_;
    const Code ginv = amb_->inv(g);
    LinearChar out = *this;
    out.fn_ = [amb, fn, g, ginv](Code x) { return fn(amb->mul(amb->mul(g, x), ginv)); };
    return out;
  }

  /// The enumerated domain (pattern domains are enumerated on demand).
  std::shared_ptr<const Group> domain(std::uint64_t budget) const {
    if (domain_) return domain_;
    return std::make_shared<const Group>(Group::pattern(amb_, support_, budget));
  }

 private:
  std::shared_ptr<const PatternQuotient> amb_;
  RootSet support_;
  std::shared_ptr<const Group> domain_;
  int m_ = 1;
  ExponentFn fn_;
};

/// phi_{a,s} on X_a inside U_n(q): x_a(d) -> additive_char(d s).
inline LinearChar phi_alpha_s(std::shared_ptr<const PatternQuotient> U, const Root& a, Fq::Elem s) {
  if (s == 0) throw std::invalid_argument("phi_{alpha,s} needs s != 0");
  const auto idx = U->coord_index(a);
  if (!idx) throw std::invalid_argument("root is not a coordinate of the ambient group");
  const Fq* F = &U->field();
  auto amb = U;
  const int k = *idx;
  return LinearChar(U, RootSet(U->n(), {a}), F->p(), [amb, F, k, s](Code c) {
    return F->trace(F->mul(amb->digit(c, k), s));
  });
}

/// lambda_D on the pattern subgroup `support` of the ambient: the product over tau in D of
/// additive_char(s_tau * coordinate at tau). `D_roots` are in the ambient's coordinates.
inline LinearChar root_coefficient_char(std::shared_ptr<const PatternQuotient> amb, RootSet support,
                                        const std::vector<Root>& D_roots, const PhiAssignment& phi) {
  if (D_roots.size() != phi.size()) throw std::invalid_argument("one scalar per root of D required");
  std::vector<std::pair<int, Fq::Elem>> terms;
  for (std::size_t t = 0; t < D_roots.size(); ++t) {
    if (phi[t] == 0) throw std::invalid_argument("E(D) assignments must be nonzero");
    if (!support.contains(D_roots[t])) continue;
    auto idx = amb->coord_index(D_roots[t]);
    if (!idx) continue;
    terms.emplace_back(*idx, phi[t]);
  }
  const Fq* F = &amb->field();
  auto a = amb;
  return LinearChar(amb, support, F->p(), [a, F, terms](Code c) {
    int e = 0;
    for (auto [k, s] : terms) e += F->trace(F->mul(a->digit(c, k), s));
    return e % F->p();
  });
}

inline LinearChar lambda_D(std::shared_ptr<const PatternQuotient> U, const BasicSet& D, const PhiAssignment& phi) {
  if (static_cast<int>(phi.size()) != D.k()) throw std::invalid_argument("phi must have one entry per root of D");
  if (U->n() != D.n() || !U->kernel().empty()) throw std::invalid_argument("lambda_D lives in U_n");
  return root_coefficient_char(std::move(U), v_pattern(D), D.roots(), phi);
}

/// Restriction of a linear character to an enumerated subgroup of its domain.
inline ClassFunction as_class_function(const LinearChar& lam, GroupPtr H) {
  const int m = H->cyclo_order();
  if (m % lam.order()) throw std::invalid_argument("character needs a larger cyclotomic order");
  std::vector<CycloValue> v;
  for (Code r : H->classes().reps) {
    if (!lam.contains(r)) throw std::invalid_argument("group is not inside the character's domain");
    v.push_back(CycloValue::zeta(lam.order(), lam.exponent(r)).embed(m));
  }
  return ClassFunction(H, v);
}

/// Induction of a linear character from its domain H to G.
inline ClassFunction induce(const LinearChar& lam, GroupPtr G) {
  if (&lam.ambient() != &G->group().ambient()) throw std::invalid_argument("induction across ambients");
  const int m = G->cyclo_order();
  if (m % lam.order()) throw std::invalid_argument("character needs a larger cyclotomic order");
  const int step = m / lam.order();
  const auto Horder = static_cast<std::int64_t>(lam.domain_order());
  if (G->order() % static_cast<std::uint64_t>(Horder)) throw std::invalid_argument("domain order does not divide |G|");
  std::vector<CycloValue> out;
  std::vector<std::int64_t> counts(m);
  for (std::size_t c = 0; c < G->class_count(); ++c) {
    std::fill(counts.begin(), counts.end(), 0);
    for (Code y : G->classes().members[c])
      if (lam.contains(y)) ++counts[lam.exponent(y) * step];
    const Rational scale(static_cast<std::int64_t>(G->order()),
                         Horder * static_cast<std::int64_t>(G->classes().sizes[c]));
    out.push_back(from_counts(m, counts, scale));
  }
  return ClassFunction(G, out);
}

/// Checks lambda(xy) = lambda(x) lambda(y) on `trials` random pairs of domain elements.
template <class Rng>
bool is_homomorphism(const LinearChar& lam, const Group& domain, int trials, Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, domain.order() - 1);
  for (int t = 0; t < trials; ++t) {
    const Code x = domain.element(pick(rng)), y = domain.element(pick(rng));
    if ((lam.exponent(domain.mul(x, y)) - lam.exponent(x) - lam.exponent(y)) % lam.order() != 0) return false;
  }
  return true;
}

}  // namespace uptri
