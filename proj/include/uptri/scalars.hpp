#pragma once

// Exact scalars: the finite field F_q = F_p[t]/(modulus) and the cyclotomic
// value ring Q(zeta_m) that holds every character value we compute.

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "uptri/errors.hpp"

namespace uptri {

using Rational = boost::rational<std::int64_t>;

namespace detail {

inline bool is_prime(int v) {
  if (v < 2) return false;
  for (int d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

inline long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// Polynomials over F_p as constant-first coefficient vectors, trailing zeros trimmed.
using PolyP = std::vector<int>;

inline void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyP poly_mod(PolyP a, const PolyP& b, int p) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  int lead_inv = 1;
  while ((lead_inv * b.back()) % p != 1) ++lead_inv;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const int c = (a.back() * lead_inv) % p;
    for (int i = 0; i <= db; ++i) a[shift + i] = static_cast<int>(mod(a[shift + i] - c * b[i], p));
    trim(a);
  }
  return a;
}

// Trial factorization: no monic factor of degree 1..deg/2.
inline bool is_irreducible(const PolyP& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  for (int d = 1; 2 * d <= deg; ++d) {
    long total = 1;
    for (int i = 0; i < d; ++i) total *= p;
    for (long code = 0; code < total; ++code) {
      PolyP g(d + 1, 0);
      long c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// The field F_q with q = p^f. Elements are small integers 0..q-1 encoding the
/// coefficient vector (constant first) in base p. All arithmetic is table driven.
class Fq {
 public:
  using Elem = std::uint8_t;
  static constexpr int kMaxOrder = 256;

  /// Builds F_{p^f} from an explicit monic modulus (constant-first, length f+1).
  static Fq make(int p, int f, std::vector<int> modulus) {
    if (!detail::is_prime(p)) throw std::invalid_argument("p=" + std::to_string(p) + " is not prime");
    if (f < 1) throw std::invalid_argument("f must be positive");
    long q = 1;
    for (int i = 0; i < f; ++i) q *= p;
    if (q > kMaxOrder) throw std::invalid_argument("field order " + std::to_string(q) + " exceeds 256");
    if (f == 1 && modulus.empty()) modulus = {0, 1};
    if (static_cast<int>(modulus.size()) != f + 1)
      throw std::invalid_argument("modulus must have f+1 coefficients");
    for (int& c : modulus) c = static_cast<int>(detail::mod(c, p));
    if (modulus.back() != 1) throw std::invalid_argument("modulus must be monic");
    if (!detail::is_irreducible(modulus, p)) throw std::invalid_argument("modulus is reducible over F_p");
    return Fq(p, f, static_cast<int>(q), std::move(modulus));
  }

  /// F_q for a prime power q using the built-in modulus table.
  static Fq from_order(int q) {
    for (const auto& row : modulus_table())
      if (row.q == q) return make(row.p, row.f, row.modulus);
    if (detail::is_prime(q)) return make(q, 1, {0, 1});
    throw std::invalid_argument("no modulus known for q=" + std::to_string(q) + "; supply p, f and modulus");
  }

  int p() const noexcept { return p_; }
  int f() const noexcept { return f_; }
  int q() const noexcept { return q_; }
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_q");
    return inv_[a];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(long v) const { return static_cast<Elem>(detail::mod(v, p_)); }

  /// x + x^p + ... + x^{p^{f-1}}, returned as an integer in [0, p).
  int trace(Elem x) const { return trace_[x]; }

  std::vector<int> coeffs(Elem x) const {
    std::vector<int> out(f_);
    int v = x;
    for (int i = 0; i < f_; ++i) {
      out[i] = v % p_;
      v /= p_;
    }
    return out;
  }

  /// Additive F_p-basis 1, t, ..., t^{f-1}.
  std::vector<Elem> additive_basis() const {
    std::vector<Elem> out;
    int v = 1;
    for (int i = 0; i < f_; ++i, v *= p_) out.push_back(static_cast<Elem>(v));
    return out;
  }

  std::vector<Elem> nonzero() const {
    std::vector<Elem> out;
    for (int v = 1; v < q_; ++v) out.push_back(static_cast<Elem>(v));
    return out;
  }

  std::string to_string(Elem x) const {
    if (f_ == 1) return std::to_string(static_cast<int>(x));
    auto c = coeffs(x);
    std::string s;
    for (int i = 0; i < f_; ++i) {
      if (i) s += ",";
      s += std::to_string(c[i]);
    }
    return "(" + s + ")";
  }

  friend bool operator==(const Fq& a, const Fq& b) {
    return a.p_ == b.p_ && a.f_ == b.f_ && a.modulus_ == b.modulus_;
  }

 private:
  struct TableRow {
    int q, p, f;
    std::vector<int> modulus;
  };

  static const std::vector<TableRow>& modulus_table() {
    static const std::vector<TableRow> rows = {
        {4, 2, 2, {1, 1, 1}},          {8, 2, 3, {1, 1, 0, 1}},    {16, 2, 4, {1, 1, 0, 0, 1}},
        {32, 2, 5, {1, 0, 1, 0, 0, 1}}, {9, 3, 2, {1, 0, 1}},       {27, 3, 3, {1, 2, 0, 1}},
        {25, 5, 2, {2, 1, 1}},          {49, 7, 2, {3, 6, 1}},      {64, 2, 6, {1, 1, 0, 0, 0, 0, 1}},
        {81, 3, 4, {2, 0, 0, 1, 1}},    {121, 11, 2, {7, 7, 1}},   {128, 2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    };
    return rows;
  }

  Fq(int p, int f, int q, std::vector<int> modulus)
      : p_(p), f_(f), q_(q), modulus_(std::move(modulus)) {
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    trace_.resize(q_);
    if (f_ == 1) {
      // Prime field: plain modular integers.
      for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b) {
          add_[a * q_ + b] = static_cast<Elem>((a + b) % p_);
          mul_[a * q_ + b] = static_cast<Elem>((a * b) % p_);
        }
    } else {
      for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b) {
          auto ca = coeffs(static_cast<Elem>(a));
          auto cb = coeffs(static_cast<Elem>(b));
          std::vector<int> sum(f_);
          for (int i = 0; i < f_; ++i) sum[i] = (ca[i] + cb[i]) % p_;
          add_[a * q_ + b] = encode(sum);
          detail::PolyP prod(2 * f_, 0);
          for (int i = 0; i < f_; ++i)
            for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
          auto red = detail::poly_mod(prod, modulus_, p_);
          red.resize(f_, 0);
          mul_[a * q_ + b] = encode(red);
        }
    }
    for (int a = 0; a < q_; ++a) {
      for (int b = 0; b < q_; ++b) {
        if (add_[a * q_ + b] == 0) neg_[a] = static_cast<Elem>(b);
        if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Elem>(b);
      }
    }
    for (int a = 0; a < q_; ++a) {
      Elem x = static_cast<Elem>(a), power = x, sum = 0;
      for (int i = 0; i < f_; ++i) {
        sum = add(sum, power);
        Elem next = 1;
        for (int k = 0; k < p_; ++k) next = mul(next, power);
        power = next;
      }
      if (sum >= p_) throw InconsistencyError("trace left the prime field");
      trace_[a] = sum;
    }
  }

  Elem encode(const std::vector<int>& c) const {
    int v = 0;
    for (int i = f_ - 1; i >= 0; --i) v = v * p_ + c[i];
    return static_cast<Elem>(v);
  }

  int p_, f_, q_;
  std::vector<int> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
  std::vector<int> trace_;
};

/// Parses `p=2 f=2 modulus=1,1,1` (whitespace or newline separated, constant-first
/// modulus). `q=N` alone selects the built-in modulus.
inline Fq parse_field_config(const std::string& text) {
  std::istringstream in(text);
  std::string token;
  std::optional<int> p, f, q;
  std::vector<int> modulus;
  std::size_t offset = 0;
  while (in >> token) {
    offset = text.find(token, offset);
    if (token.front() == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    auto eq = token.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + token + "'", offset);
    std::string key = token.substr(0, eq), value = token.substr(eq + 1);
    try {
      if (key == "p") {
        p = std::stoi(value);
      } else if (key == "f") {
        f = std::stoi(value);
      } else if (key == "q") {
        q = std::stoi(value);
      } else if (key == "modulus") {
        std::stringstream vs(value);
        std::string part;
        while (std::getline(vs, part, ',')) modulus.push_back(std::stoi(part));
      } else {
        throw ParseError("unknown field key '" + key + "'", offset);
      }
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const ParseError*>(&e)) throw;
      throw ParseError("bad value for '" + key + "'", offset + eq + 1);
    }
    offset += token.size();
  }
  if (q && !p) return Fq::from_order(*q);
  if (!p) throw ParseError("missing p", 0);
  const int deg = f.value_or(1);
  if (deg > 1 && modulus.empty()) {
    long order = 1;
    for (int i = 0; i < deg; ++i) order *= *p;
    return Fq::from_order(static_cast<int>(order));
  }
  return Fq::make(*p, deg, modulus);
}

// ---------------------------------------------------------------------------
// Cyclotomic values

namespace detail {

using IntPoly = std::vector<std::int64_t>;

inline const IntPoly& cyclotomic(int m) {
  static std::recursive_mutex guard;
  static std::map<int, IntPoly> cache;
  std::lock_guard<std::recursive_mutex> lock(guard);
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  // x^m - 1 divided by Phi_d for every proper divisor d.
  IntPoly num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d) continue;
    const IntPoly& den = cyclotomic(d);
    IntPoly quot(num.size() - den.size() + 1, 0);
    for (int k = static_cast<int>(num.size()) - 1; k >= static_cast<int>(den.size()) - 1; --k) {
      const auto c = num[k];
      const int shift = k - (static_cast<int>(den.size()) - 1);
      quot[shift] = c;
      for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    }
    num = quot;
  }
  return cache.emplace(m, num).first->second;
}

inline int euler_phi(int m) { return static_cast<int>(cyclotomic(m).size()) - 1; }

}  // namespace detail

/// An exact element of Q(zeta_m), stored as coefficients on zeta_m^0..zeta_m^{m-1}
/// in canonical form: reduced modulo the m-th cyclotomic polynomial, so only the
/// first phi(m) entries can be nonzero. Equal values have equal coefficient vectors.
class CycloValue {
 public:
  explicit CycloValue(int m = 1) : m_(m), c_(static_cast<std::size_t>(m), Rational(0)) {
    if (m < 1) throw std::invalid_argument("cyclotomic order must be positive");
  }

  static CycloValue rational(int m, Rational v) {
    CycloValue out(m);
    out.c_[0] = v;
    return out;
  }

  static CycloValue zeta(int m, long k) {
    CycloValue out(m);
    out.c_[detail::mod(k, m)] = 1;
    out.reduce();
    return out;
  }

  /// Builds sum_k coeffs[k] zeta_m^k (coeffs has length m) and reduces it.
  static CycloValue from_coeffs(int m, std::vector<Rational> coeffs) {
    if (static_cast<int>(coeffs.size()) != m) throw std::invalid_argument("coefficient vector length must equal m");
    CycloValue out(m);
    out.c_ = std::move(coeffs);
    out.reduce();
    return out;
  }

  int order() const noexcept { return m_; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  /// The same number viewed in Q(zeta_L); requires m | L.
  CycloValue embed(int L) const {
    if (L % m_) throw std::invalid_argument("cannot embed order " + std::to_string(m_) + " into " + std::to_string(L));
    if (L == m_) return *this;
    CycloValue out(L);
    const int step = L / m_;
    for (int k = 0; k < m_; ++k) out.c_[k * step] = c_[k];
    out.reduce();
    return out;
  }

  /// zeta -> zeta^{-1}.
  CycloValue conj() const {
    std::vector<Rational> v(m_, Rational(0));
    for (int k = 0; k < m_; ++k) v[(m_ - k) % m_] += c_[k];
    return from_coeffs(m_, std::move(v));
  }

  CycloValue scaled(Rational r) const {
    CycloValue out = *this;
    for (auto& x : out.c_) x *= r;
    return out;
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.numerator() == 0; });
  }

  std::optional<Rational> as_rational() const {
    for (int k = 1; k < m_; ++k)
      if (c_[k].numerator() != 0) return std::nullopt;
    return c_[0];
  }

  bool is_rational() const { return as_rational().has_value(); }
  bool is_real() const { return *this == conj(); }

  /// True iff all coefficients are integers (the value lies in Z[zeta_m]).
  bool is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.denominator() == 1; });
  }

  CycloValue& operator+=(const CycloValue& o) {
    check(o);
    for (int k = 0; k < m_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  CycloValue& operator-=(const CycloValue& o) {
    check(o);
    for (int k = 0; k < m_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend CycloValue operator+(CycloValue a, const CycloValue& b) { return a += b; }
  friend CycloValue operator-(CycloValue a, const CycloValue& b) { return a -= b; }
  friend CycloValue operator-(CycloValue a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend CycloValue operator*(const CycloValue& a, const CycloValue& b) {
    a.check(b);
    std::vector<Rational> v(a.m_, Rational(0));
    for (int i = 0; i < a.m_; ++i) {
      if (a.c_[i].numerator() == 0) continue;
      for (int j = 0; j < a.m_; ++j)
        if (b.c_[j].numerator() != 0) v[(i + j) % a.m_] += a.c_[i] * b.c_[j];
    }
    return from_coeffs(a.m_, std::move(v));
  }
  CycloValue& operator*=(const CycloValue& o) { return *this = *this * o; }

  friend bool operator==(const CycloValue& a, const CycloValue& b) { return a.m_ == b.m_ && a.c_ == b.c_; }
  friend bool operator!=(const CycloValue& a, const CycloValue& b) { return !(a == b); }

  std::string to_string() const {
    std::string s;
    for (int k = 0; k < m_; ++k) {
      if (c_[k].numerator() == 0) continue;
      std::ostringstream term;
      term << c_[k];
      std::string coef = term.str();
      if (!s.empty()) s += (coef.front() == '-') ? " - " : " + ";
      else if (coef.front() == '-') s += "-";
      if (coef.front() == '-') coef.erase(0, 1);
      if (k == 0) s += coef;
      else s += (coef == "1" ? "" : coef + "*") + "z" + std::to_string(m_) + (k == 1 ? "" : "^" + std::to_string(k));
    }
    return s.empty() ? "0" : s;
  }

  /// Canonical reduction; idempotent.
  void reduce() {
    const auto& phi = detail::cyclotomic(m_);
    const int d = static_cast<int>(phi.size()) - 1;
    for (int k = m_ - 1; k >= d; --k) {
      if (c_[k].numerator() == 0) continue;
      const Rational c = c_[k];
      const int shift = k - d;
      for (int i = 0; i < d; ++i)
        if (phi[i] != 0) c_[shift + i] -= c * Rational(phi[i]);
      c_[k] = 0;
    }
  }

 private:
  void check(const CycloValue& o) const {
    if (o.m_ != m_)
      throw std::invalid_argument("cyclotomic orders differ (" + std::to_string(m_) + " vs " +
                                  std::to_string(o.m_) + "); embed both into the lcm first");
  }

  int m_;
  std::vector<Rational> c_;
};

/// Embeds both operands into Q(zeta_lcm).
inline std::pair<CycloValue, CycloValue> unify(const CycloValue& a, const CycloValue& b) {
  const int L = std::lcm(a.order(), b.order());
  return {a.embed(L), b.embed(L)};
}

/// The fixed nontrivial additive character x -> zeta_p^{trace(x)}.
inline CycloValue additive_char(const Fq& F, Fq::Elem x) { return CycloValue::zeta(F.p(), F.trace(x)); }

}  // namespace uptri
