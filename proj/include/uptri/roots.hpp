#pragma once

// Positive roots of type A_{n-1} in the tableau model. alpha_{i,j} (1 <= i <= j <= n-1)
// sits at matrix entry (i, j+1).

#include <bitset>
#include <compare>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "uptri/errors.hpp"

namespace uptri {

inline constexpr int kMaxN = 16;

struct Root {
  int i = 1;
  int j = 1;

  int row() const noexcept { return i; }
  /// Matrix column of the entry this root occupies.
  int column() const noexcept { return j + 1; }
  int height() const noexcept { return j - i + 1; }

  bool valid_for(int n) const noexcept { return 1 <= i && i <= j && j <= n - 1; }

  friend constexpr bool operator==(const Root&, const Root&) = default;
  /// Height, then row. This is the collection order.
  friend constexpr std::strong_ordering operator<=>(const Root& a, const Root& b) {
    if (auto c = (a.j - a.i) <=> (b.j - b.i); c != 0) return c;
    return a.i <=> b.i;
  }

  static Root at_entry(int row, int col) { return Root{row, col - 1}; }
};

inline std::string to_string(const Root& r) { return std::to_string(r.i) + "-" + std::to_string(r.j); }

/// A set of roots for a fixed n, stored as a bitset keyed (i-1)*16 + (j-1).
class RootSet {
 public:
  explicit RootSet(int n = 2) : n_(n) {
    if (n < 2 || n > kMaxN + 1) throw std::invalid_argument("n out of range for RootSet: " + std::to_string(n));
  }

  RootSet(int n, const std::vector<Root>& roots) : RootSet(n) {
    for (const auto& r : roots) insert(r);
  }

  /// All of Sigma^+ for rank n-1.
  static RootSet positive(int n) {
    RootSet s(n);
    for (int i = 1; i < n; ++i)
      for (int j = i; j < n; ++j) s.insert({i, j});
    return s;
  }

  int n() const noexcept { return n_; }

  void insert(const Root& r) {
    if (!r.valid_for(n_)) throw std::invalid_argument("root " + to_string(r) + " invalid for n=" + std::to_string(n_));
    bits_.set(key(r));
  }
  void erase(const Root& r) {
    if (r.valid_for(n_)) bits_.reset(key(r));
  }
  bool contains(const Root& r) const { return r.valid_for(n_) && bits_.test(key(r)); }

  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }

  /// Members in collection order (height, then row).
  std::vector<Root> roots() const {
    std::vector<Root> out;
    for (int h = 0; h < n_ - 1; ++h)
      for (int i = 1; i + h < n_; ++i)
        if (bits_.test(key({i, i + h}))) out.push_back({i, i + h});
    return out;
  }

  RootSet operator|(const RootSet& o) const { return combine(o, bits_ | o.bits_); }
  RootSet operator&(const RootSet& o) const { return combine(o, bits_ & o.bits_); }
  RootSet operator-(const RootSet& o) const { return combine(o, bits_ & ~o.bits_); }
  bool subset_of(const RootSet& o) const { return (bits_ & ~o.bits_).none(); }

  friend bool operator==(const RootSet& a, const RootSet& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

 private:
  static int key(const Root& r) { return (r.i - 1) * kMaxN + (r.j - 1); }

  RootSet combine(const RootSet& o, const std::bitset<kMaxN * kMaxN>& bits) const {
    if (o.n_ != n_) throw std::invalid_argument("RootSet size mismatch");
    RootSet out(n_);
    out.bits_ = bits;
    return out;
  }

  int n_;
  std::bitset<kMaxN * kMaxN> bits_;
};

/// alpha_{i,j} + alpha_{j+1,k} = alpha_{i,k} (either order); otherwise no root.
inline std::optional<Root> add_roots(const Root& a, const Root& b) {
  if (a.j + 1 == b.i) return Root{a.i, b.j};
  if (b.j + 1 == a.i) return Root{b.i, a.j};
  return std::nullopt;
}

/// {alpha_{i,k} : i <= k < j}
inline RootSet arm(const Root& a, int n) {
  RootSet s(n);
  for (int k = a.i; k < a.j; ++k) s.insert({a.i, k});
  return s;
}

/// {alpha_{k,j} : i < k <= j}
inline RootSet leg(const Root& a, int n) {
  RootSet s(n);
  for (int k = a.i + 1; k <= a.j; ++k) s.insert({k, a.j});
  return s;
}

inline RootSet hook(const Root& a, int n) {
  RootSet s = arm(a, n) | leg(a, n);
  s.insert(a);
  return s;
}

inline bool is_closed(const RootSet& s) {
  const auto members = s.roots();
  for (const auto& a : members)
    for (const auto& b : members)
      if (auto sum = add_roots(a, b); sum && !s.contains(*sum)) return false;
  return true;
}

/// Pattern normality: every sum of a member of `sub` with a member of `ambient`
/// that is a root of `ambient` lies in `sub`.
inline bool is_normal_in(const RootSet& sub, const RootSet& ambient) {
  for (const auto& a : sub.roots())
    for (const auto& b : ambient.roots())
      if (auto sum = add_roots(a, b); sum && ambient.contains(*sum) && !sub.contains(*sum)) return false;
  return true;
}

enum class PartialOrdering { less, greater, incomparable };

/// alpha_{i,j} <_r alpha_{l,k} iff j < k (left to right).
inline PartialOrdering cmp_r(const Root& a, const Root& b) {
  if (a.j < b.j) return PartialOrdering::less;
  if (a.j > b.j) return PartialOrdering::greater;
  return PartialOrdering::incomparable;
}

/// alpha_{i,j} <_b alpha_{l,k} iff i < l (top to bottom).
inline PartialOrdering cmp_b(const Root& a, const Root& b) {
  if (a.i < b.i) return PartialOrdering::less;
  if (a.i > b.i) return PartialOrdering::greater;
  return PartialOrdering::incomparable;
}

/// Parses `i-j`.
inline Root parse_root(const std::string& text, std::size_t offset = 0) {
  auto dash = text.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 == text.size())
    throw ParseError("expected root of the form i-j, got '" + text + "'", offset);
  try {
    std::size_t used_i = 0, used_j = 0;
    int i = std::stoi(text.substr(0, dash), &used_i);
    int j = std::stoi(text.substr(dash + 1), &used_j);
    if (used_i != dash || used_j != text.size() - dash - 1) throw std::invalid_argument("trailing");
    return Root{i, j};
  } catch (const std::logic_error&) {
    throw ParseError("expected integers in root '" + text + "'", offset);
  }
}

/// Parses a comma-separated root list such as `1-4,2-5,5-6`.
inline std::vector<Root> parse_root_list(const std::string& text) {
  std::vector<Root> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t lead = part.find_first_not_of(' ');
    std::size_t tail = part.find_last_not_of(' ');
    if (lead == std::string::npos) throw ParseError("empty root in list", start);
    out.push_back(parse_root(part.substr(lead, tail - lead + 1), start + lead));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string to_string(const std::vector<Root>& roots) {
  std::string s;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (k) s += ",";
    s += to_string(roots[k]);
  }
  return s;
}

inline std::string to_string(const RootSet& s) { return to_string(s.roots()); }

}  // namespace uptri
