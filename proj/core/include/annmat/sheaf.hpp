#pragma once

#include <map>
#include <utility>
#include <vector>

#include "annmat/annotated.hpp"
#include "annmat/barcode.hpp"
#include "annmat/dense.hpp"
#include "annmat/raw.hpp"

namespace annmat {

// A finite abstract simplicial complex. Simplices are strictly increasing
// vertex lists, stored per dimension in lexicographic order.
struct simplicial_complex {
  std::vector<std::vector<std::vector<int>>> by_dim;
  std::map<std::vector<int>, std::pair<int, int>> index;  // simplex -> (dim, pos)

  // Closes the given simplices under faces, deduplicates, sorts.
  static simplicial_complex from_maximal(const std::vector<std::vector<int>>& maximal);

  int top_dim() const { return int(by_dim.size()) - 1; }
  int count(int d) const {
    return 0 <= d && d < int(by_dim.size()) ? int(by_dim[d].size()) : 0;
  }
  bool has(const std::vector<int>& s) const { return index.count(s) != 0; }
};

// A sheaf of pointwise persistence modules on a simplicial complex, graded
// over 0..m. Stalk dimensions, internal step matrices, and codim-1
// restriction matrices may each be omitted where every involved dimension is
// zero; omitted matrices are read back as zero matrices of the right shape.
struct sheaf_instance {
  int32_t p = 2;
  int m = 0;
  simplicial_complex K;
  std::map<std::vector<int>, std::vector<int>> stalk;  // m+1 dims per simplex
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<dense_mat>> res;
  std::map<std::vector<int>, std::vector<dense_mat>> step;  // m maps per simplex

  // dims at every grade, zeros when the simplex carries no stalk entry
  std::vector<int> dims_of(const std::vector<int>& s) const;
  // internal map dims(i+1) x dims(i)
  dense_mat step_of(const std::vector<int>& s, int i) const;
  // restriction dims(cof, i) x dims(face, i) for a codim-1 pair
  dense_mat res_of(const std::vector<int>& face, const std::vector<int>& cof,
                   int i) const;

  // Shapes, naturality of every restriction family against the step maps,
  // and agreement of the two composites across every codim-2 square.
  void check() const;
};

// The three-term cochain complex around degree k, evaluated pointwise:
// L = sections over the (k-1)-simplices, M over the k-simplices, N over the
// (k+1)-simplices, with block-diagonal internal maps and signed restriction
// blocks as connecting maps.
raw_complex build_cochain_raw(const sheaf_instance& S, int k);

// Cohomology barcode in degree k via the pointwise cochain complex.
barcode persistent_sheaf_cohomology(const sheaf_instance& S, int k,
                                    bool keep_empty = false);

// Canonical generator bars of every stalk module and presented morphisms of
// every codim-1 restriction, each computed independently from reductions
// shared per simplex. With only_dims non-empty, work is restricted to
// simplices of the listed dimensions and pairs inside them.
struct sheaf_local {
  std::map<std::vector<int>, std::vector<bar>> gens;
  std::map<std::pair<std::vector<int>, std::vector<int>>, annotated_matrix> mor;
};
sheaf_local local_presentations(const sheaf_instance& S, int threads = 1,
                                const std::vector<int>& only_dims = {});

// Cohomology in degree k assembled from the independently presented blocks;
// agrees with persistent_sheaf_cohomology as a barcode.
barcode sheaf_cohomology_local(const sheaf_instance& S, int k, int threads = 1,
                               bool keep_empty = false);

}  // namespace annmat
