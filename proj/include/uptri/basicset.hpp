#pragma once

// Basic sets D (antichains of roots with distinct rows and columns) and the
// combinatorial data derived from them.

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "uptri/roots.hpp"
#include "uptri/scalars.hpp"
#include "uptri/unigroup.hpp"

namespace uptri {

/// One nonzero scalar per root of D, positional over D's column order.
using PhiAssignment = std::vector<Fq::Elem>;

class BasicSet {
 public:
  BasicSet(int n, std::vector<Root> roots) : n_(n), roots_(std::move(roots)) {
    std::string why;
    if (!check(n_, roots_, &why)) throw std::invalid_argument("not a basic set: " + why);
    std::sort(roots_.begin(), roots_.end(), [](const Root& a, const Root& b) { return a.j < b.j; });
  }

  static bool check(int n, const std::vector<Root>& roots, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
      if (why) *why = msg;
      return false;
    };
    if (roots.empty()) return fail("empty");
    if (n < 2 || n > kMaxN) return fail("n out of range");
    for (std::size_t a = 0; a < roots.size(); ++a) {
      if (!roots[a].valid_for(n)) return fail("root " + to_string(roots[a]) + " invalid for n=" + std::to_string(n));
      for (std::size_t b = a + 1; b < roots.size(); ++b) {
        if (roots[a].i == roots[b].i) return fail("shared row " + std::to_string(roots[a].i));
        if (roots[a].j == roots[b].j) return fail("shared column " + std::to_string(roots[a].j));
      }
    }
    return true;
  }

  int n() const noexcept { return n_; }
  int k() const noexcept { return static_cast<int>(roots_.size()); }
  /// tau_i, 1-based, in column order.
  const Root& tau(int i) const { return roots_[i - 1]; }
  const std::vector<Root>& roots() const noexcept { return roots_; }
  RootSet as_set() const { return RootSet(n_, roots_); }

  /// Rows of D in increasing order.
  std::vector<int> rows() const {
    std::vector<int> r;
    for (const auto& t : roots_) r.push_back(t.i);
    std::sort(r.begin(), r.end());
    return r;
  }

  /// Position of tau_i in the row order, 1-based.
  int row_rank(int i) const {
    int rank = 1;
    for (const auto& t : roots_)
      if (t.i < tau(i).i) ++rank;
    return rank;
  }

  friend bool operator==(const BasicSet& a, const BasicSet& b) { return a.n_ == b.n_ && a.roots_ == b.roots_; }

 private:
  int n_;
  std::vector<Root> roots_;
};

inline bool validate(int n, const std::vector<Root>& roots) { return BasicSet::check(n, roots); }

inline std::string to_string(const BasicSet& D) { return to_string(D.roots()); }

/// a_{i,j} = 1 iff tau_j is the i-th element of D in row order.
inline MonomialPerm w_matrix(const BasicSet& D) {
  MonomialPerm w;
  for (int j = 1; j <= D.k(); ++j) w.perm.push_back(D.row_rank(j));
  return w;
}

struct DerivedSets {
  std::map<std::pair<int, int>, Root> gamma;
  std::map<std::pair<int, int>, Root> nu;
  RootSet gamma_set;
  RootSet lambda_set;
  RootSet delta;
};

inline DerivedSets derived_sets(const BasicSet& D) {
  DerivedSets out{{}, {}, RootSet(D.n()), RootSet(D.n()), RootSet(D.n())};
  for (int i = 1; i <= D.k(); ++i)
    for (int j = i + 1; j <= D.k(); ++j) {
      const int m = D.tau(i).i, l = D.tau(j).i;
      if (m < l) {
        const Root g{m, l - 1};
        out.gamma.emplace(std::make_pair(i, j), g);
        out.gamma_set.insert(g);
      } else {
        const Root v{l, m - 1};
        out.nu.emplace(std::make_pair(i, j), v);
        out.lambda_set.insert(v);
      }
    }
  out.delta = out.gamma_set | out.lambda_set;
  return out;
}

inline RootSet gamma_set(const BasicSet& D) { return derived_sets(D).gamma_set; }
inline RootSet lambda_set(const BasicSet& D) { return derived_sets(D).lambda_set; }

/// Roots of V_D: everything outside the arms of D.
inline RootSet v_pattern(const BasicSet& D) {
  RootSet arms(D.n());
  for (const auto& t : D.roots()) arms = arms | arm(t, D.n());
  return RootSet::positive(D.n()) - arms;
}

/// Roots of K_D: V_D minus D.
inline RootSet k_pattern(const BasicSet& D) { return v_pattern(D) - D.as_set(); }

/// Roots of V_D R_D.
inline RootSet vr_pattern(const BasicSet& D) { return v_pattern(D) | gamma_set(D); }

/// Sum of arm lengths: the exponent of [U : V_D].
inline int arm_total(const BasicSet& D) {
  int s = 0;
  for (const auto& t : D.roots()) s += static_cast<int>(arm(t, D.n()).size());
  return s;
}

/// Rows of D index a copy of U_k: the root at entry (r_a, r_b) maps to the rank-(k-1)
/// root at entry (a, b), where a, b are row ranks.
inline std::optional<Root> to_local(const BasicSet& D, const Root& r) {
  const auto rows = D.rows();
  auto a = std::find(rows.begin(), rows.end(), r.i);
  auto b = std::find(rows.begin(), rows.end(), r.j + 1);
  if (a == rows.end() || b == rows.end()) return std::nullopt;
  return Root::at_entry(static_cast<int>(a - rows.begin()) + 1, static_cast<int>(b - rows.begin()) + 1);
}

inline Root to_global(const BasicSet& D, const Root& local) {
  const auto rows = D.rows();
  return Root::at_entry(rows.at(local.i - 1), rows.at(local.j));
}

/// Image of a set of roots living on D's rows; roots elsewhere are dropped.
inline RootSet localize(const BasicSet& D, const RootSet& s) {
  RootSet out(std::max(D.k(), 2));
  for (const auto& r : s.roots())
    if (auto l = to_local(D, r)) out.insert(*l);
  return out;
}

/// Flip of rank-(k-1) roots through the antidiagonal: entry (a,b) -> (k+1-b, k+1-a).
inline RootSet antidiagonal_flip(int k, const RootSet& s) {
  RootSet out(std::max(k, 2));
  for (const auto& r : s.roots()) out.insert(Root::at_entry(k + 1 - (r.j + 1), k + 1 - r.i));
  return out;
}

inline BasicSet d1_family(int k, int n) {
  if (k < 2 || 2 * k >= n) throw std::invalid_argument("d1_family needs k >= 2 and 2k < n");
  std::vector<Root> r{{1, k}};
  for (int i = 2; i <= k; ++i) r.push_back({i, 2 * k + 1 - i});
  r.push_back({k + 1, 2 * k});
  return BasicSet(n, r);
}

inline BasicSet d2_family(int m, int n) {
  if (m < 1 || 2 * m >= n) throw std::invalid_argument("d2_family needs m >= 1 and 2m < n");
  std::vector<Root> r;
  for (int i = 1; i <= 2 * m - 1; ++i) r.push_back({i, i + 1});
  return BasicSet(n, r);
}

/// The m with D = d2_family(m, n), if any.
inline std::optional<int> as_d2_family(const BasicSet& D) {
  if (D.k() % 2 == 0) return std::nullopt;
  for (int i = 1; i <= D.k(); ++i)
    if (!(D.tau(i) == Root{i, i + 1})) return std::nullopt;
  return (D.k() + 1) / 2;
}

/// Greedy random rook placement on the staircase.
template <class Rng>
BasicSet random_basic_set(int n, Rng& rng) {
  std::vector<Root> all = RootSet::positive(n).roots();
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_int_distribution<int> target_dist(1, n - 1);
  const int target = target_dist(rng);
  std::vector<Root> chosen;
  for (const auto& r : all) {
    if (static_cast<int>(chosen.size()) == target) break;
    bool ok = true;
    for (const auto& c : chosen)
      if (c.i == r.i || c.j == r.j) ok = false;
    if (ok) chosen.push_back(r);
  }
  return BasicSet(n, chosen);
}

/// Every basic set for the given n, in a fixed order.
inline std::vector<BasicSet> all_basic_sets(int n) {
  std::vector<BasicSet> out;
  const auto all = RootSet::positive(n).roots();
  std::vector<Root> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    for (std::size_t a = from; a < all.size(); ++a) {
      bool ok = true;
      for (const auto& c : cur)
        if (c.i == all[a].i || c.j == all[a].j) ok = false;
      if (!ok) continue;
      cur.push_back(all[a]);
      out.emplace_back(n, cur);
      self(self, a + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// All of E(D): every tuple of nonzero scalars.
inline std::vector<PhiAssignment> all_phis(const Fq& F, int k) {
  std::vector<PhiAssignment> out{{}};
  for (int i = 0; i < k; ++i) {
    std::vector<PhiAssignment> next;
    for (const auto& p : out)
      for (auto s : F.nonzero()) {
        auto e = p;
        e.push_back(s);
        next.push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

enum class TableauView { full, r_group };

/// ASCII picture of Sigma^+ laid out at matrix positions (row i, column j+1).
/// Full view: '*' D, 'R' Gamma_D, 'C' Lambda_D, '-' arm, '|' leg, '.' other.
/// R view: Gamma_D only, '*' on D, 'o' on K_D, 'x' elsewhere in Gamma_D.
inline std::string render_tableau(const BasicSet& D, TableauView view = TableauView::full) {
  const int n = D.n();
  const auto ds = derived_sets(D);
  const RootSet Dset = D.as_set();
  const RootSet K = k_pattern(D);
  RootSet arms(n), legs(n);
  for (const auto& t : D.roots()) {
    arms = arms | arm(t, n);
    legs = legs | leg(t, n);
  }
  std::string out = "    ";
  for (int c = 2; c <= n; ++c) out += (c < 10 ? " " : "") + std::to_string(c);
  out += "\n";
  for (int i = 1; i < n; ++i) {
    out += (i < 10 ? "  " : " ") + std::to_string(i) + " ";
    for (int c = 2; c <= n; ++c) {
      char ch = ' ';
      if (c > i) {
        const Root r{i, c - 1};
        if (view == TableauView::full) {
          ch = '.';
          if (legs.contains(r)) ch = '|';
          if (arms.contains(r)) ch = '-';
          if (ds.lambda_set.contains(r)) ch = 'C';
          if (ds.gamma_set.contains(r)) ch = 'R';
          if (Dset.contains(r)) ch = '*';
        } else if (ds.gamma_set.contains(r)) {
          ch = Dset.contains(r) ? '*' : (K.contains(r) ? 'o' : 'x');
        }
      }
      out += ' ';
      out += ch;
    }
    out += "\n";
  }
  return out;
}

}  // namespace uptri
