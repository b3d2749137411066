#pragma once

// Independent count of irreducible characters over a central character, for the
// thirteen-dimensional sample at q = 2. Uses only conjugacy classes: multiplication by a
// central z permutes the classes, and the trace of that permutation on class functions is
// sum_chi omega_chi(z). Averaging against nu gives |Irr(G | nu)|.

#include <map>
#include <vector>

#include "uptri/u13.hpp"

namespace oracle {

using namespace uptri;

/// For every nu on the central roots `Z` (bit i of the key set means nu is nontrivial on
/// Z[i], q = 2), the number of irreducible characters of G over nu.
inline std::map<unsigned, long long> counts_over_central(std::shared_ptr<const PatternQuotient> Gp, const std::vector<Root>& Z) {
  const PatternQuotient& G = *Gp;
  if (G.field().q() != 2) throw std::invalid_argument("oracle is written for q = 2");
  const ClassData cd = conjugacy_classes(Group(Gp, G.order()), G.order());
  const unsigned nz = static_cast<unsigned>(Z.size());
  std::vector<long long> fixed(1u << nz, 0);
  for (unsigned z = 0; z < (1u << nz); ++z) {
    UniMatrix m = identity_matrix(G.n());
    for (unsigned i = 0; i < nz; ++i)
      if (z >> i & 1u) m = mul(G.field(), m, root_element(G.n(), Z[i], 1));
    const Code zc = G.encode(m);
    for (std::size_t k = 0; k < cd.count(); ++k) fixed[z] += cd.class_of[G.mul(zc, cd.reps[k])] == k;
  }
  std::map<unsigned, long long> out;
  for (unsigned nu = 0; nu < (1u << nz); ++nu) {
    long long acc = 0;
    for (unsigned z = 0; z < (1u << nz); ++z) acc += (__builtin_popcount(nu & z) & 1) ? -fixed[z] : fixed[z];
    if (acc % (1ll << nz)) throw uptri::InconsistencyError("class-translation average is not an integer");
    out[nu] = acc >> nz;
  }
  return out;
}

}  // namespace oracle
