#pragma once

// Unitriangular matrices over F_q, pattern subgroups and their quotients, and
// exact enumeration of subgroups with conjugacy-class data.

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "uptri/errors.hpp"
#include "uptri/roots.hpp"
#include "uptri/scalars.hpp"

namespace uptri {

using Elem = Fq::Elem;

/// n x n upper unitriangular matrix; row-major on a fixed 16 x 16 grid, 1-based accessors.
class UniMatrix {
 public:
  explicit UniMatrix(int n = 2) : n_(n) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("matrix size out of range: " + std::to_string(n));
    a_.fill(0);
    for (int i = 1; i <= n; ++i) at(i, i) = 1;
  }

  int n() const noexcept { return n_; }
  Elem operator()(int i, int j) const { return a_[(i - 1) * kMaxN + (j - 1)]; }
  Elem& at(int i, int j) { return a_[(i - 1) * kMaxN + (j - 1)]; }

  Elem entry(const Root& r) const { return (*this)(r.i, r.j + 1); }
  void set(const Root& r, Elem c) { at(r.i, r.j + 1) = c; }

  bool is_identity() const {
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j)
        if ((*this)(i, j)) return false;
    return true;
  }

  /// Roots at which the matrix has a nonzero entry.
  RootSet support() const {
    RootSet s(std::max(n_, 2));
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j)
        if ((*this)(i, j)) s.insert(Root::at_entry(i, j));
    return s;
  }

  friend bool operator==(const UniMatrix& x, const UniMatrix& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

 private:
  int n_;
  std::array<Elem, kMaxN * kMaxN> a_{};
};

inline UniMatrix identity_matrix(int n) { return UniMatrix(n); }

/// I + c e_{i,j+1}.
inline UniMatrix root_element(int n, const Root& r, Elem c) {
  if (!r.valid_for(n)) throw std::invalid_argument("root " + to_string(r) + " invalid for n=" + std::to_string(n));
  UniMatrix m(n);
  m.set(r, c);
  return m;
}

inline void check_same_size(const UniMatrix& x, const UniMatrix& y) {
  if (x.n() != y.n())
    throw std::invalid_argument("matrix size mismatch: " + std::to_string(x.n()) + " vs " + std::to_string(y.n()));
}

inline UniMatrix mul(const Fq& F, const UniMatrix& x, const UniMatrix& y) {
  check_same_size(x, y);
  const int n = x.n();
  UniMatrix z(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Elem s = F.add(x(i, j), y(i, j));
      for (int k = i + 1; k < j; ++k)
        if (x(i, k) && y(k, j)) s = F.add(s, F.mul(x(i, k), y(k, j)));
      z.at(i, j) = s;
    }
  return z;
}

inline UniMatrix inv(const Fq& F, const UniMatrix& x) {
  const int n = x.n();
  UniMatrix b(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Elem s = x(i, j);
      for (int k = i + 1; k < j; ++k)
        if (b(i, k) && x(k, j)) s = F.add(s, F.mul(b(i, k), x(k, j)));
      b.at(i, j) = F.neg(s);
    }
  return b;
}

/// x^{-1} y^{-1} x y.
inline UniMatrix commutator(const Fq& F, const UniMatrix& x, const UniMatrix& y) {
  return mul(F, mul(F, inv(F, x), inv(F, y)), mul(F, x, y));
}

/// y^{-1} x y.
inline UniMatrix conjugate(const Fq& F, const UniMatrix& x, const UniMatrix& y) {
  return mul(F, mul(F, inv(F, y), x), y);
}

inline UniMatrix power(const Fq& F, const UniMatrix& x, std::uint64_t e) {
  UniMatrix r(x.n()), b = x;
  while (e) {
    if (e & 1) r = mul(F, r, b);
    b = mul(F, b, b);
    e >>= 1;
  }
  return r;
}

/// Rows separated by ';', entries by ','. Entries are field element codes.
inline std::string to_string(const UniMatrix& m) {
  std::string s;
  for (int i = 1; i <= m.n(); ++i) {
    if (i > 1) s += ";";
    for (int j = 1; j <= m.n(); ++j) {
      if (j > 1) s += ",";
      s += std::to_string(static_cast<int>(m(i, j)));
    }
  }
  return s;
}

inline UniMatrix parse_matrix(const Fq& F, const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::size_t pos = 0;
  for (;;) {
    auto semi = text.find(';', pos);
    std::string row = text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    std::vector<int> vals;
    std::size_t p = 0;
    for (;;) {
      auto comma = row.find(',', p);
      std::string cell = row.substr(p, comma == std::string::npos ? std::string::npos : comma - p);
      try {
        std::size_t used = 0;
        vals.push_back(std::stoi(cell, &used));
        if (cell.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument("junk");
      } catch (const std::logic_error&) {
        throw ParseError("bad matrix entry '" + cell + "'", pos + p);
      }
      if (comma == std::string::npos) break;
      p = comma + 1;
    }
    rows.push_back(vals);
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  const int n = static_cast<int>(rows.size());
  UniMatrix m(n);
  for (int i = 1; i <= n; ++i) {
    if (static_cast<int>(rows[i - 1].size()) != n) throw ParseError("matrix is not square", 0);
    for (int j = 1; j <= n; ++j) {
      const int v = rows[i - 1][j - 1];
      if (v < 0 || v >= F.q()) throw ParseError("entry out of field range", 0);
      if (j < i && v != 0) throw ParseError("entry below the diagonal", 0);
      if (j == i && v != 1) throw ParseError("diagonal entry is not 1", 0);
      m.at(i, j) = static_cast<Elem>(v);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Pattern groups

struct PatternGroup {
  int n = 2;
  RootSet support;

  PatternGroup(int n_, RootSet s) : n(n_), support(std::move(s)) {
    if (support.n() != n) throw std::invalid_argument("support built for a different n");
    if (!is_closed(support)) throw std::invalid_argument("pattern support is not closed: " + to_string(support));
  }

  static PatternGroup full(int n) { return PatternGroup(n, RootSet::positive(n)); }

  bool contains(const UniMatrix& g) const {
    if (g.n() != n) throw std::invalid_argument("matrix size mismatch");
    return g.support().subset_of(support);
  }
};

/// Left-coset representative of g K with zero entries on K's support, by peeling
/// K positions in collection order (height, then row).
inline UniMatrix normal_form(const Fq& F, UniMatrix g, const RootSet& K) {
  for (const Root& b : K.roots()) {
    const Elem c = g.entry(b);
    if (!c) continue;
    // g <- g x_b(-c): column (j+1) -= c * column i.
    const Elem nc = F.neg(c);
    const int r = b.i, s = b.j + 1;
    for (int i = 1; i <= r; ++i)
      if (g(i, r)) g.at(i, s) = F.add(g(i, s), F.mul(g(i, r), nc));
  }
  return g;
}

/// Scalars c_b with g = prod_b x_b(c_b), product taken over `support` in collection order.
inline std::vector<Elem> collect(const Fq& F, UniMatrix g, const RootSet& support) {
  std::vector<Elem> out;
  for (const Root& b : support.roots()) {
    const Elem c = g.entry(b);
    out.push_back(c);
    if (!c) continue;
    // g <- x_b(-c) g: row i -= c * row (j+1).
    const int r = b.i, s = b.j + 1;
    for (int t = s; t <= g.n(); ++t)
      if (g(s, t)) g.at(r, t) = F.sub(g(r, t), F.mul(c, g(s, t)));
  }
  if (!g.is_identity()) throw std::invalid_argument("matrix is not supported on the given roots");
  return out;
}

/// The quotient P/K of a pattern group by a normal pattern subgroup (K may be empty).
/// Elements are coded in base q by their entries on the roots of P outside K.
class PatternQuotient {
 public:
  using Code = std::uint64_t;

  PatternQuotient(std::shared_ptr<const Fq> F, PatternGroup P, RootSet K)
      : F_(std::move(F)), P_(std::move(P)), K_(std::move(K)) {
    if (!K_.subset_of(P_.support)) throw std::invalid_argument("kernel support not inside the pattern group");
    if (!is_closed(K_)) throw std::invalid_argument("kernel support is not closed");
    if (!is_normal_in(K_, P_.support)) throw std::invalid_argument("kernel is not normal in the pattern group");
    coords_ = (P_.support - K_).roots();
    long double ord = 1;
    for (std::size_t i = 0; i < coords_.size(); ++i) ord *= F_->q();
    if (ord > 1.8e19L) throw BudgetError("quotient order does not fit a 64-bit code", ~0ull, ~0ull);
    order_ = 1;
    for (std::size_t i = 0; i < coords_.size(); ++i) order_ *= static_cast<Code>(F_->q());
  }

  PatternQuotient(std::shared_ptr<const Fq> F, PatternGroup P)
      : PatternQuotient(std::move(F), P, RootSet(P.n)) {}

  const Fq& field() const noexcept { return *F_; }
  std::shared_ptr<const Fq> field_ptr() const noexcept { return F_; }
  int n() const noexcept { return P_.n; }
  const PatternGroup& pattern() const noexcept { return P_; }
  const RootSet& kernel() const noexcept { return K_; }
  const std::vector<Root>& coords() const noexcept { return coords_; }
  Code order() const noexcept { return order_; }
  int rank() const noexcept { return static_cast<int>(coords_.size()); }

  std::optional<int> coord_index(const Root& r) const {
    for (std::size_t k = 0; k < coords_.size(); ++k)
      if (coords_[k] == r) return static_cast<int>(k);
    return std::nullopt;
  }

  UniMatrix decode(Code c) const {
    UniMatrix m(P_.n);
    const Code q = static_cast<Code>(F_->q());
    for (const Root& r : coords_) {
      m.set(r, static_cast<Elem>(c % q));
      c /= q;
    }
    return m;
  }

  /// Code of the coset of g; g must lie in P.
  Code encode(const UniMatrix& g) const {
    UniMatrix h = normal_form(*F_, g, K_);
    Code c = 0;
    const Code q = static_cast<Code>(F_->q());
    for (auto it = coords_.rbegin(); it != coords_.rend(); ++it) c = c * q + h.entry(*it);
    return c;
  }

  Code element(const Root& r, Elem c) const { return encode(root_element(P_.n, r, c)); }

  Code mul(Code a, Code b) const { return encode(uptri::mul(*F_, decode(a), decode(b))); }
  Code inv(Code a) const { return encode(uptri::inv(*F_, decode(a))); }
  Code commutator(Code a, Code b) const { return encode(uptri::commutator(*F_, decode(a), decode(b))); }
  /// b^{-1} a b.
  Code conjugate(Code a, Code b) const { return encode(uptri::conjugate(*F_, decode(a), decode(b))); }
  Code power(Code a, std::uint64_t e) const { return encode(uptri::power(*F_, decode(a), e)); }
  static constexpr Code identity() noexcept { return 0; }

  /// Digit of coordinate k.
  Elem digit(Code c, int k) const {
    const Code q = static_cast<Code>(F_->q());
    for (int i = 0; i < k; ++i) c /= q;
    return static_cast<Elem>(c % q);
  }

  /// Root elements x_b(e) for b a coordinate root and e in an F_p-basis of F_q.
  std::vector<Code> root_generators() const {
    std::vector<Code> gens;
    for (const Root& r : coords_)
      for (Elem e : F_->additive_basis()) gens.push_back(element(r, e));
    return gens;
  }

  /// Center test on roots: coordinate roots whose brackets with all coordinate roots vanish mod K.
  RootSet central_roots() const {
    RootSet out(P_.n);
    for (const Root& a : coords_) {
      bool central = true;
      for (const Root& b : coords_)
        if (auto s = add_roots(a, b); s && P_.support.contains(*s) && !K_.contains(*s)) central = false;
      if (central) out.insert(a);
    }
    return out;
  }

  bool is_abelian_by_roots() const {
    for (const Root& a : coords_)
      for (const Root& b : coords_)
        if (auto s = add_roots(a, b); s && !K_.contains(*s)) return false;
    return true;
  }

 private:
  std::shared_ptr<const Fq> F_;
  PatternGroup P_;
  RootSet K_;
  std::vector<Root> coords_;
  Code order_ = 1;
};

using Code = PatternQuotient::Code;

// ---------------------------------------------------------------------------
// Enumerated groups

/// A subgroup of a pattern quotient, held by its generators and, once enumerated,
/// the sorted list of its element codes. The whole quotient is held implicitly.
class Group {
 public:
  /// The whole quotient.
  Group(std::shared_ptr<const PatternQuotient> amb, std::uint64_t budget)
      : amb_(std::move(amb)), whole_(true), order_(amb_->order()) {
    if (order_ > budget) throw BudgetError("group enumeration", order_, budget);
    gens_ = amb_->root_generators();
  }

  /// Closure of `gens` under multiplication, by breadth-first search.
  static Group generated(std::shared_ptr<const PatternQuotient> amb, std::vector<Code> gens, std::uint64_t budget) {
    Group g(std::move(amb));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    gens.erase(std::remove(gens.begin(), gens.end(), PatternQuotient::identity()), gens.end());
    g.gens_ = gens;
    std::unordered_set<Code> seen{PatternQuotient::identity()};
    std::deque<Code> todo{PatternQuotient::identity()};
    while (!todo.empty()) {
      const Code x = todo.front();
      todo.pop_front();
      for (Code s : gens) {
        const Code y = g.amb_->mul(x, s);
        if (seen.insert(y).second) {
          if (seen.size() > budget) throw BudgetError("subgroup enumeration", seen.size(), budget);
          todo.push_back(y);
        }
      }
    }
    g.elems_.assign(seen.begin(), seen.end());
    std::sort(g.elems_.begin(), g.elems_.end());
    g.order_ = g.elems_.size();
    return g;
  }

  /// The pattern subgroup of the quotient on a closed set of coordinate roots.
  static Group pattern(std::shared_ptr<const PatternQuotient> amb, const RootSet& roots, std::uint64_t budget) {
    std::vector<Code> gens;
    for (const Root& r : roots.roots()) {
      if (!amb->coord_index(r)) continue;
      for (Elem e : amb->field().additive_basis()) gens.push_back(amb->element(r, e));
    }
    return generated(std::move(amb), std::move(gens), budget);
  }

  const PatternQuotient& ambient() const noexcept { return *amb_; }
  std::shared_ptr<const PatternQuotient> ambient_ptr() const noexcept { return amb_; }
  std::uint64_t order() const noexcept { return order_; }
  bool is_whole() const noexcept { return whole_; }
  const std::vector<Code>& generators() const noexcept { return gens_; }

  Code element(std::uint64_t idx) const { return whole_ ? idx : elems_[idx]; }

  std::optional<std::uint64_t> index_of(Code c) const {
    if (whole_) return c < order_ ? std::optional<std::uint64_t>(c) : std::nullopt;
    auto it = std::lower_bound(elems_.begin(), elems_.end(), c);
    if (it == elems_.end() || *it != c) return std::nullopt;
    return static_cast<std::uint64_t>(it - elems_.begin());
  }

  bool contains(Code c) const { return index_of(c).has_value(); }

  bool contains(const Group& h) const {
    if (h.amb_.get() != amb_.get()) throw std::invalid_argument("groups live in different ambients");
    for (std::uint64_t i = 0; i < h.order(); ++i)
      if (!contains(h.element(i))) return false;
    return true;
  }

  Code mul(Code a, Code b) const { return amb_->mul(a, b); }
  Code inv(Code a) const { return amb_->inv(a); }

  friend bool operator==(const Group& a, const Group& b) {
    return a.amb_.get() == b.amb_.get() && a.order_ == b.order_ && a.contains(b);
  }

 private:
  explicit Group(std::shared_ptr<const PatternQuotient> amb) : amb_(std::move(amb)), whole_(false) {}

  std::shared_ptr<const PatternQuotient> amb_;
  bool whole_ = false;
  std::uint64_t order_ = 1;
  std::vector<Code> gens_;
  std::vector<Code> elems_;
};

/// Conjugacy classes of an enumerated group. Class 0 is the identity; classes are
/// ordered by their representative, which is the least code in the class.
struct ClassData {
  std::vector<Code> reps;
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint32_t> class_of;  // by element index
  std::vector<std::vector<Code>> members;

  std::size_t count() const noexcept { return reps.size(); }
};

inline ClassData conjugacy_classes(const Group& G, std::uint64_t budget) {
  if (G.order() > budget) throw BudgetError("conjugacy class enumeration", G.order(), budget);
  const std::uint64_t N = G.order();
  constexpr std::uint32_t kUnset = ~0u;
  std::vector<std::uint32_t> raw(N, kUnset);
  std::vector<std::vector<Code>> orbits;
  std::vector<Code> ginv;
  for (Code g : G.generators()) ginv.push_back(G.inv(g));
  for (std::uint64_t start = 0; start < N; ++start) {
    if (raw[start] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(orbits.size());
    std::vector<Code> orbit{G.element(start)};
    raw[start] = id;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (std::size_t s = 0; s < G.generators().size(); ++s) {
        const Code y = G.mul(G.mul(ginv[s], orbit[k]), G.generators()[s]);
        const auto idx = G.index_of(y);
        if (!idx) throw InconsistencyError("conjugate left the group");
        if (raw[*idx] == kUnset) {
          raw[*idx] = id;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  // Orbits were discovered in element order, so the first member of each is minimal
  // and orbits are already sorted by representative.
  ClassData cd;
  cd.class_of = std::move(raw);
  for (auto& o : orbits) {
    cd.reps.push_back(o.front());
    cd.sizes.push_back(o.size());
    if (N % o.size()) throw InconsistencyError("class size does not divide the group order");
    cd.members.push_back(std::move(o));
  }
  return cd;
}

/// Smallest e with g^e = 1, for a p-group element.
inline std::uint64_t element_order(const Group& G, Code g) {
  std::uint64_t o = 1;
  Code x = g;
  const auto p = static_cast<std::uint64_t>(G.ambient().field().p());
  while (x != PatternQuotient::identity()) {
    x = G.ambient().power(x, p);
    o *= p;
  }
  return o;
}

inline Group center(const Group& G, const ClassData& cd, std::uint64_t budget) {
  std::vector<Code> gens;
  for (std::size_t k = 0; k < cd.count(); ++k)
    if (cd.sizes[k] == 1) gens.push_back(cd.reps[k]);
  return Group::generated(G.ambient_ptr(), gens, budget);
}

inline Group center(const Group& G, std::uint64_t budget) { return center(G, conjugacy_classes(G, budget), budget); }

/// Smallest normal subgroup of G containing `seeds`.
inline Group normal_closure(const Group& G, std::vector<Code> seeds, std::uint64_t budget) {
  for (;;) {
    Group N = Group::generated(G.ambient_ptr(), seeds, budget);
    bool grew = false;
    for (Code h : std::vector<Code>(N.generators())) {
      for (Code g : G.generators()) {
        const Code c = G.ambient().conjugate(h, g);
        if (!N.contains(c)) {
          seeds.push_back(c);
          grew = true;
        }
      }
    }
    if (!grew) return N;
  }
}

inline Group derived_subgroup(const Group& G, std::uint64_t budget) {
  std::vector<Code> seeds;
  const auto& gens = G.generators();
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b) seeds.push_back(G.ambient().commutator(gens[a], gens[b]));
  return normal_closure(G, seeds, budget);
}

/// G' G^p for a p-group.
inline Group frattini(const Group& G, std::uint64_t budget) {
  Group D = derived_subgroup(G, budget);
  std::vector<Code> gens = D.generators();
  const auto p = static_cast<std::uint64_t>(G.ambient().field().p());
  for (Code g : G.generators()) gens.push_back(G.ambient().power(g, p));
  return Group::generated(G.ambient_ptr(), gens, budget);
}

/// Returns t when [G,G] = Z(G) = Phi(G), |Z(G)| = q and |G| = q^{1+2t}.
inline std::optional<int> is_special(const Group& G, std::uint64_t budget) {
  const auto q = static_cast<std::uint64_t>(G.ambient().field().q());
  Group Z = center(G, budget);
  if (Z.order() != q) return std::nullopt;
  Group D = derived_subgroup(G, budget);
  if (!(D == Z)) return std::nullopt;
  Group P = frattini(G, budget);
  if (!(P == Z)) return std::nullopt;
  std::uint64_t size = q;
  int t = 0;
  while (size < G.order()) {
    size *= q * q;
    ++t;
  }
  if (size != G.order() || t == 0) return std::nullopt;
  return t;
}

/// Length of the lower central series of G (0 for the trivial group).
inline int nilpotency_class(const Group& G, std::uint64_t budget) {
  if (G.order() == 1) return 0;
  int c = 1;
  Group cur = G;
  for (;;) {
    std::vector<Code> seeds;
    for (Code x : cur.generators())
      for (Code g : G.generators()) seeds.push_back(G.ambient().commutator(x, g));
    Group next = normal_closure(G, seeds, budget);
    if (next.order() == 1) return c;
    if (next.order() == cur.order()) throw InconsistencyError("lower central series stalled in a p-group");
    cur = next;
    ++c;
  }
}

// ---------------------------------------------------------------------------
// Monomial matrices

/// A permutation matrix on {1..k} with entry (perm(j), j) = 1. perm is stored 1-based.
struct MonomialPerm {
  std::vector<int> perm;  // perm[j-1] = row of the 1 in column j

  int k() const noexcept { return static_cast<int>(perm.size()); }
  int operator()(int j) const { return perm[j - 1]; }

  bool is_bijection() const {
    std::vector<bool> hit(perm.size() + 1, false);
    for (int v : perm) {
      if (v < 1 || v > k() || hit[v]) return false;
      hit[v] = true;
    }
    return true;
  }

  int entry(int i, int j) const { return perm[j - 1] == i ? 1 : 0; }

  std::vector<std::vector<int>> matrix() const {
    std::vector<std::vector<int>> m(k(), std::vector<int>(k(), 0));
    for (int j = 1; j <= k(); ++j) m[perm[j - 1] - 1][j - 1] = 1;
    return m;
  }

  static MonomialPerm identity(int k) {
    MonomialPerm w;
    for (int j = 1; j <= k; ++j) w.perm.push_back(j);
    return w;
  }

  /// The longest element: the antidiagonal.
  static MonomialPerm longest(int k) {
    MonomialPerm w;
    for (int j = 1; j <= k; ++j) w.perm.push_back(k + 1 - j);
    return w;
  }

  /// Matrix product a * b.
  friend MonomialPerm operator*(const MonomialPerm& a, const MonomialPerm& b) {
    MonomialPerm c;
    for (int j = 1; j <= b.k(); ++j) c.perm.push_back(a(b(j)));
    return c;
  }

  friend bool operator==(const MonomialPerm&, const MonomialPerm&) = default;
};

/// Support of U_k cap w U_k w^{-1}, as roots of rank k-1. Conjugating x by w moves
/// entry (f,h) to (perm(f), perm(h)), so position (i,j) survives iff
/// perm^{-1}(i) < perm^{-1}(j).
inline RootSet intersect_conjugate(int k, const MonomialPerm& w) {
  if (!w.is_bijection() || w.k() != k) throw std::invalid_argument("not a permutation of size k");
  std::vector<int> pinv(k + 1);
  for (int j = 1; j <= k; ++j) pinv[w(j)] = j;
  RootSet s(std::max(k, 2));
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      if (pinv[i] < pinv[j]) s.insert(Root::at_entry(i, j));
  return s;
}

}  // namespace uptri
