#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "annmat/barcode.hpp"
#include "annmat/dense.hpp"
#include "annmat/sheaf.hpp"

namespace annmat {

// A finite poset given by labeled elements and Hasse-diagram cover relations.
struct finite_poset {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> covers;  // (lower, higher) element indices

  int size() const { return int(labels.size()); }
  // distinct labels, in-range distinct endpoints, no duplicates, acyclic,
  // and every listed relation is a genuine cover (no shortcut edges)
  void check() const;
  // leq[a][b] iff a <= b in the generated order (reflexive-transitive)
  std::vector<std::vector<char>> closure() const;
};

// true iff the Hasse diagram is a single (possibly trivial) path
bool is_zigzag(const finite_poset& X);

// A sheaf of pointwise persistence modules on a finite poset. Restriction
// matrices are given per cover relation (absent covers restrict by zero) and
// compose along cover paths; check() verifies path-independence.
struct poset_sheaf {
  int32_t p = 2;
  int m = 0;
  finite_poset X;
  std::vector<std::vector<int>> stalk;                        // per element, m+1 dims
  std::map<std::pair<int, int>, std::vector<dense_mat>> res;  // per cover
  std::vector<std::vector<dense_mat>> step;                   // per element, m maps

  const std::vector<int>& dims_of(int e) const { return stalk[e]; }
  const dense_mat& step_of(int e, int i) const { return step[e][i]; }
  dense_mat res_of(int lo, int hi, int i) const;  // cover pairs only
  void check() const;
};

// Convenience constructor: tables sized for X and m, all dims zero.
poset_sheaf make_poset_sheaf(int32_t p, int m, finite_poset X);

// Memoized composite restriction matrices along cover paths.
struct res_closure {
  explicit res_closure(const poset_sheaf& S);
  // requires lo <= hi in the order
  dense_mat get(int lo, int hi, int i);

 private:
  const poset_sheaf& S;
  std::vector<std::vector<char>> leq;
  std::map<std::tuple<int, int, int>, dense_mat> memo;
};

inline constexpr std::size_t kDefaultMaxChains = 1000000;

// All chains of X as a simplicial complex on the element indices, with each
// chain's maximum element; guarded against exponential blowup.
struct order_complex_result {
  simplicial_complex K;
  std::map<std::vector<int>, int> max_of;
};
order_complex_result order_complex(const finite_poset& X,
                                   std::size_t max_chains = kDefaultMaxChains);

// The pulled-back sheaf on the order complex: a chain's stalk is the stalk
// of its maximum, and a subchain restricts via the composite between maxima.
sheaf_instance pullback_to_order_complex(const poset_sheaf& S,
                                         std::size_t max_chains = kDefaultMaxChains);

// The subposet of alternating minima and maxima of a zigzag poset, with
// composite restrictions along the monotone runs between consecutive picks.
poset_sheaf alternating_subposet(const poset_sheaf& S);

// Cohomology via the order complex of X itself (any poset, size-guarded).
barcode poset_cohomology_order_complex(const poset_sheaf& S, int k,
                                       bool keep_empty = false,
                                       std::size_t max_chains = kDefaultMaxChains);
// Cohomology via the alternating subposet; requires a zigzag poset.
barcode poset_cohomology_alternating(const poset_sheaf& S, int k,
                                     bool keep_empty = false);
// Routes zigzag posets through the alternating subposet, everything else
// through the guarded order complex.
barcode poset_cohomology(const poset_sheaf& S, int k, bool keep_empty = false);

}  // namespace annmat
