#pragma once

// Character tables of small groups by the Dixon-Schneider method: common
// eigenvectors of the class-multiplication matrices over a prime field F_l,
// lifted to cyclotomic integers through eigenvalue multiplicities.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "uptri/charfn.hpp"
#include "uptri/errors.hpp"

namespace uptri {

namespace modl {

using u64 = std::uint64_t;

inline u64 mulm(u64 a, u64 b, u64 l) { return (a * b) % l; }
inline u64 addm(u64 a, u64 b, u64 l) { return (a + b) % l; }
inline u64 subm(u64 a, u64 b, u64 l) { return (a + l - b) % l; }

inline u64 powm(u64 b, u64 e, u64 l) {
  u64 r = 1 % l;
  b %= l;
  while (e) {
    if (e & 1) r = mulm(r, b, l);
    b = mulm(b, b, l);
    e >>= 1;
  }
  return r;
}

inline u64 invm(u64 a, u64 l) {
  if (a % l == 0) throw InconsistencyError("inverse of zero mod l");
  return powm(a, l - 2, l);
}

inline bool is_prime(u64 v) {
  if (v < 2) return false;
  for (u64 d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

using Vec = std::vector<u64>;
using Mat = std::vector<Vec>;

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<int> rref(Mat& rows, u64 l) {
  std::vector<int> piv;
  const int ncols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  std::size_t r = 0;
  for (int c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const u64 iv = invm(rows[r][c], l);
    for (auto& x : rows[r]) x = mulm(x, iv, l);
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c] == 0) continue;
      const u64 f = rows[o][c];
      for (int k = 0; k < ncols; ++k) rows[o][k] = subm(rows[o][k], mulm(f, rows[r][k], l), l);
    }
    piv.push_back(c);
    ++r;
  }
  rows.resize(r);
  return piv;
}

/// Basis of the null space {x : M x = 0}.
inline Mat kernel(Mat M, u64 l) {
  const int n = M.empty() ? 0 : static_cast<int>(M[0].size());
  auto piv = rref(M, l);
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  Mat out;
  for (int f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    Vec v(n, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = subm(0, M[r][f], l);
    out.push_back(v);
  }
  return out;
}

/// Characteristic polynomial det(x I - A), constant-first, via Hessenberg reduction.
inline Vec charpoly(Mat A, u64 l) {
  const int n = static_cast<int>(A.size());
  for (int m = 1; m + 1 < n; ++m) {
    int i = m;
    while (i < n && A[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(A[i], A[m]);
      for (int r = 0; r < n; ++r) std::swap(A[r][i], A[r][m]);
    }
    const u64 iv = invm(A[m][m - 1], l);
    for (int r = m + 1; r < n; ++r) {
      const u64 f = mulm(A[r][m - 1], iv, l);
      if (!f) continue;
      for (int c = 0; c < n; ++c) A[r][c] = subm(A[r][c], mulm(f, A[m][c], l), l);
      for (int c = 0; c < n; ++c) A[c][m] = addm(A[c][m], mulm(f, A[c][r], l), l);
    }
  }
  std::vector<Vec> p(n + 1);
  p[0] = {1};
  for (int k = 1; k <= n; ++k) {
    Vec next(k + 1, 0);
    // (x - h_kk) p_{k-1}
    for (int d = 0; d < k; ++d) {
      next[d + 1] = addm(next[d + 1], p[k - 1][d], l);
      next[d] = subm(next[d], mulm(A[k - 1][k - 1], p[k - 1][d], l), l);
    }
    u64 prod = 1;
    for (int i = k - 1; i >= 1; --i) {
      prod = mulm(prod, A[i][i - 1], l);
      const u64 f = mulm(prod, A[i - 1][k - 1], l);
      if (!f) continue;
      for (std::size_t d = 0; d < p[i - 1].size(); ++d) next[d] = subm(next[d], mulm(f, p[i - 1][d], l), l);
    }
    p[k] = next;
  }
  return p[n];
}

inline u64 eval(const Vec& poly, u64 x, u64 l) {
  u64 r = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) r = addm(mulm(r, x, l), *it, l);
  return r;
}

}  // namespace modl

struct CharacterTable {
  GroupPtr group;
  std::vector<ClassFunction> irr;
  std::uint64_t prime = 0;

  std::size_t size() const noexcept { return irr.size(); }
};

/// Smallest prime l = 1 mod e with l > 2 sqrt(order).
inline std::uint64_t dixon_prime(std::uint64_t e, std::uint64_t order) {
  const auto bound = static_cast<std::uint64_t>(2.0 * std::sqrt(static_cast<double>(order)));
  for (std::uint64_t l = e + 1; l < (std::uint64_t{1} << 31); l += e)
    if (l > bound && modl::is_prime(l) && order % l != 0) return l;
  throw BudgetError("no suitable prime below 2^31", order, 0);
}

namespace detail {

class ClassAlgebra {
 public:
  explicit ClassAlgebra(const EnumeratedGroup& G, std::uint64_t l) : G_(G), l_(l), mats_(G.class_count()) {}

  /// A_j[i][k] = #{x in C_j : x^{-1} g_k in C_i}; A_j v = omega(K_j) v for the central
  /// character vector v of each irreducible.
  const modl::Mat& matrix(std::size_t j) {
    if (!mats_[j].empty()) return mats_[j];
    const std::size_t r = G_.class_count();
    modl::Mat A(r, modl::Vec(r, 0));
    const auto& reps = G_.classes().reps;
    for (Code x : G_.classes().members[j]) {
      const Code xi = G_.group().inv(x);
      for (std::size_t k = 0; k < r; ++k) ++A[G_.class_of_member(G_.group().mul(xi, reps[k]))][k];
    }
    for (auto& row : A)
      for (auto& v : row) v %= l_;
    mats_[j] = std::move(A);
    return mats_[j];
  }

 private:
  const EnumeratedGroup& G_;
  std::uint64_t l_;
  std::vector<modl::Mat> mats_;
};

}  // namespace detail

inline CharacterTable character_table(GroupPtr G, const Budgets& budgets = {}) {
  if (G->order() > budgets.table_order) throw BudgetError("character table group order", G->order(), budgets.table_order);
  if (G->class_count() > budgets.table_classes)
    throw BudgetError("character table class count", G->class_count(), budgets.table_classes);
  using modl::u64;
  const std::size_t r = G->class_count();
  const int e = G->cyclo_order();
  const u64 l = dixon_prime(static_cast<u64>(e), G->order());
  const auto& sizes = G->classes().sizes;

  // Split F_l^r into common eigenspaces, classes taken in increasing size.
  std::vector<modl::Mat> spaces;
  {
    modl::Mat I(r, modl::Vec(r, 0));
    for (std::size_t k = 0; k < r; ++k) I[k][k] = 1;
    spaces.push_back(I);
  }
  std::vector<std::size_t> order(r);
  for (std::size_t k = 0; k < r; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sizes[a] < sizes[b]; });
  detail::ClassAlgebra alg(*G, l);
  for (std::size_t j : order) {
    if (spaces.size() == r) break;
    if (j == 0) continue;
    const auto& A = alg.matrix(j);
    std::vector<modl::Mat> next;
    for (auto& B : spaces) {
      const std::size_t d = B.size();
      if (d == 1) {
        next.push_back(B);
        continue;
      }
      auto piv = modl::rref(B, l);
      // C[s][t] = (A b_t) at the pivot of b_s.
      modl::Mat C(d, modl::Vec(d, 0));
      for (std::size_t t = 0; t < d; ++t) {
        modl::Vec Ab(r, 0);
        for (std::size_t i = 0; i < r; ++i) {
          u64 acc = 0;
          for (std::size_t k = 0; k < r; ++k)
            if (A[i][k] && B[t][k]) acc = (acc + A[i][k] * B[t][k]) % l;
          Ab[i] = acc;
        }
        for (std::size_t s = 0; s < d; ++s) C[s][t] = Ab[piv[s]];
      }
      const auto cp = modl::charpoly(C, l);
      std::vector<u64> roots;
      for (u64 x = 0; x < l; ++x)
        if (modl::eval(cp, x, l) == 0) roots.push_back(x);
      if (roots.size() == 1) {
        next.push_back(B);
        continue;
      }
      std::size_t total = 0;
      for (u64 lam : roots) {
        modl::Mat M = C;
        for (std::size_t s = 0; s < d; ++s) M[s][s] = modl::subm(M[s][s], lam, l);
        auto ker = modl::kernel(M, l);
        modl::Mat sub;
        for (const auto& u : ker) {
          modl::Vec v(r, 0);
          for (std::size_t s = 0; s < d; ++s)
            if (u[s])
              for (std::size_t k = 0; k < r; ++k) v[k] = (v[k] + u[s] * B[s][k]) % l;
          sub.push_back(v);
        }
        total += sub.size();
        next.push_back(sub);
      }
      if (total != d) throw InconsistencyError("class sum matrix is not diagonalizable over F_l");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) throw InconsistencyError("common eigenspaces did not split into lines");

  const u64 order_mod = G->order() % l;
  // Power maps: class of rep_k^s for s below the element order.
  std::vector<std::vector<std::uint32_t>> powers(r);
  for (std::size_t k = 0; k < r; ++k) {
    Code x = PatternQuotient::identity();
    do {
      powers[k].push_back(G->class_of_member(x));
      x = G->group().mul(x, G->classes().reps[k]);
    } while (x != PatternQuotient::identity());
  }
  std::vector<u64> factors;
  {
    u64 rest = l - 1;
    for (u64 f = 2; f * f <= rest; ++f)
      if (rest % f == 0) {
        factors.push_back(f);
        while (rest % f == 0) rest /= f;
      }
    if (rest > 1) factors.push_back(rest);
  }
  u64 gen = 2;
  while (std::any_of(factors.begin(), factors.end(), [&](u64 f) { return modl::powm(gen, (l - 1) / f, l) == 1; })) ++gen;
  const u64 z = modl::powm(gen, (l - 1) / static_cast<u64>(e), l);

  std::vector<std::uint32_t> inv_class(r);
  for (std::size_t k = 0; k < r; ++k) inv_class[k] = G->inverse_class(k);

  struct Row {
    std::vector<u64> modvals;
    ClassFunction chi;
    u64 degree;
  };
  std::vector<Row> rows;
  for (auto& B : spaces) {
    modl::Vec v = B[0];
    if (v[0] == 0) throw InconsistencyError("central character vanishes at the identity class");
    const u64 iv = modl::invm(v[0], l);
    for (auto& x : v) x = modl::mulm(x, iv, l);
    u64 S = 0;
    for (std::size_t k = 0; k < r; ++k)
      S = modl::addm(S, modl::mulm(modl::mulm(v[k], v[inv_class[k]], l), modl::invm(sizes[k] % l, l), l), l);
    const u64 dsq = modl::mulm(order_mod, modl::invm(S, l), l);
    u64 deg = 0;
    for (u64 d = 1; 2 * d < l; ++d)
      if (modl::mulm(d, d, l) == dsq) {
        deg = d;
        break;
      }
    if (!deg) throw InconsistencyError("degree square has no small root mod l");
    std::vector<u64> vals(r);
    for (std::size_t k = 0; k < r; ++k) vals[k] = modl::mulm(modl::mulm(v[k], deg, l), modl::invm(sizes[k] % l, l), l);
    std::vector<CycloValue> cv;
    for (std::size_t k = 0; k < r; ++k) {
      const u64 o = powers[k].size();
      const u64 zo_inv = modl::invm(modl::powm(z, static_cast<u64>(e) / o, l), l);
      const u64 oinv = modl::invm(o % l, l);
      std::vector<std::int64_t> counts(e, 0);
      u64 total = 0;
      for (u64 t = 0; t < o; ++t) {
        u64 acc = 0;
        for (u64 s = 0; s < o; ++s)
          acc = modl::addm(acc, modl::mulm(vals[powers[k][s]], modl::powm(zo_inv, t * s, l), l), l);
        const u64 mt = modl::mulm(acc, oinv, l);
        if (mt > deg) throw InconsistencyError("eigenvalue multiplicity exceeds the degree");
        counts[t * (static_cast<u64>(e) / o)] += static_cast<std::int64_t>(mt);
        total += mt;
      }
      if (total != deg) throw InconsistencyError("eigenvalue multiplicities do not sum to the degree");
      cv.push_back(from_counts(e, counts, Rational(1)));
    }
    rows.push_back({vals, ClassFunction(G, cv), deg});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.modvals < b.modvals;
  });
  CharacterTable T{G, {}, l};
  u64 sumsq = 0;
  for (auto& row : rows) {
    sumsq += row.degree * row.degree;
    T.irr.push_back(std::move(row.chi));
  }
  if (sumsq != G->order()) throw InconsistencyError("sum of squared degrees differs from the group order");
  return T;
}

struct Constituent {
  std::size_t index;
  std::int64_t multiplicity;
};

/// Multiplicities of the irreducibles in chi, verified by reconstructing chi exactly.
inline std::vector<Constituent> decompose(const ClassFunction& chi, const CharacterTable& T) {
  if (chi.group() != T.group) throw std::invalid_argument("class function is not on the table's group");
  std::vector<Constituent> out;
  ClassFunction rebuilt = chi.scaled(Rational(0));
  for (std::size_t i = 0; i < T.size(); ++i) {
    const Rational m = inner(chi, T.irr[i]);
    if (m.denominator() != 1 || m.numerator() < 0)
      throw InconsistencyError("multiplicity is not a nonnegative integer");
    if (m.numerator() == 0) continue;
    out.push_back({i, m.numerator()});
    rebuilt += T.irr[i].scaled(m);
  }
  if (!(rebuilt == chi)) throw InconsistencyError("class function is not a combination of irreducibles");
  return out;
}

/// Exact row and column orthogonality.
inline bool check_orthogonality(const CharacterTable& T) {
  const auto& G = *T.group;
  const std::size_t r = G.class_count();
  if (T.size() != r) return false;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b)
      if (inner(T.irr[a], T.irr[b]) != Rational(a == b ? 1 : 0)) return false;
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t d = 0; d < r; ++d) {
      CycloValue acc(G.cyclo_order());
      for (std::size_t i = 0; i < r; ++i) acc += T.irr[i][c] * T.irr[i][d].conj();
      const Rational want = c == d ? Rational(static_cast<std::int64_t>(G.order() / G.classes().sizes[c])) : Rational(0);
      if (acc != CycloValue::rational(G.cyclo_order(), want)) return false;
    }
  return true;
}

inline bool is_power_of(std::uint64_t v, std::uint64_t q) {
  if (v == 0) return false;
  while (v % q == 0) v /= q;
  return v == 1;
}

inline bool degrees_are_powers_of(const CharacterTable& T, std::uint64_t q) {
  for (const auto& chi : T.irr)
    if (!is_power_of(static_cast<std::uint64_t>(chi.degree().numerator()), q)) return false;
  return true;
}

}  // namespace uptri
