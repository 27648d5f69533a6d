#pragma once

#include <map>
#include <utility>
#include <vector>

#include "annmat/barcode.hpp"
#include "annmat/dense.hpp"
#include "annmat/field.hpp"
#include "annmat/tower.hpp"

namespace annmat {

// Block data over the end complex of a tower script: a block size per
// simplex, and for every codimension-1 face relation (face, cofacet) with
// both sizes positive a matrix taking cofacet blocks to face blocks.
struct cosheaf_data {
  std::map<std::vector<int>, int> stalk;
  std::map<std::pair<std::vector<int>, std::vector<int>>, dense_mat> ext;
};

struct cosheaf_instance {
  tower_script script;
  cosheaf_data data;
};

// Completeness, shapes, and agreement of the two composites across every
// codimension-2 square of the end complex.
void check_cosheaf(const cosheaf_instance& inst);

// Composite block matrices between nested simplices of the end complex,
// memoized; equal simplices give the identity.
struct ext_closure {
  fp_field F{2};
  const cosheaf_data* data = nullptr;

  ext_closure(fp_field f, const cosheaf_data* d) : F(f), data(d) {}
  const dense_mat& get(const std::vector<int>& face, const std::vector<int>& cof);

 private:
  std::map<std::pair<std::vector<int>, std::vector<int>>, dense_mat> memo;
};

// Boundary presentations of the tower with simplices carrying blocks.
std::vector<annotated_matrix> cosheaf_presentations(const cosheaf_instance& inst,
                                                    int max_dim);

barcode cosheaf_homology(const cosheaf_instance& inst, const std::vector<int>& degrees,
                         bool keep_empty = false);

}  // namespace annmat
