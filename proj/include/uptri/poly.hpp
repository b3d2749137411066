#pragma once

// Integer polynomials in the indeterminate q.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace uptri {

class PolyQ {
 public:
  PolyQ() = default;
  PolyQ(std::int64_t c) : c_{c} { trim(); }  // NOLINT(google-explicit-constructor)
  explicit PolyQ(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

  static PolyQ q() { return PolyQ(std::vector<std::int64_t>{0, 1}); }

  /// (q - 1)^a q^b.
  static PolyQ monomial_form(int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("negative exponent in (q-1)^a q^b");
    return (q() - 1).pow(a) * q().pow(b);
  }

  const std::vector<std::int64_t>& coeffs() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }

  std::int64_t coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : 0; }

  PolyQ& operator+=(const PolyQ& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  PolyQ& operator-=(const PolyQ& o) { return *this += o * PolyQ(-1); }

  friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
  friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) return PolyQ();
    std::vector<std::int64_t> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return PolyQ(std::move(r));
  }

  PolyQ pow(int e) const {
    PolyQ r(1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const PolyQ&, const PolyQ&) = default;

  /// Exact value at an integer point; throws on 64-bit overflow.
  std::int64_t eval(std::int64_t x) const {
    __int128 acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * x + *it;
      if (acc > INT64_MAX || acc < INT64_MIN) throw std::overflow_error("polynomial value exceeds 64 bits");
    }
    return static_cast<std::int64_t>(acc);
  }

  /// Highest power first, e.g. "4q^4 - 3q^3".
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const std::int64_t c = c_[k];
      if (c == 0) continue;
      const std::int64_t a = c < 0 ? -c : c;
      if (out.empty()) out += c < 0 ? "-" : "";
      else out += c < 0 ? " - " : " + ";
      if (a != 1 || k == 0) out += std::to_string(a);
      if (k >= 1) out += "q";
      if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<std::int64_t> c_;
};

/// "(q-1)^a q^b" with trivial factors dropped.
inline std::string factored_string(int a, int b) {
  std::string s;
  if (a == 1) s += "(q-1)";
  if (a > 1) s += "(q-1)^" + std::to_string(a);
  if (b >= 1) s += (s.empty() ? "" : " ") + std::string("q");
  if (b > 1) s += "^" + std::to_string(b);
  return s.empty() ? "1" : s;
}

}  // namespace uptri
