#pragma once

#include <functional>
#include <vector>

#include "annmat/annotated.hpp"
#include "annmat/barcode.hpp"

namespace annmat {

// One elementary event: either the inclusion of a single simplex (verts,
// sorted) or the collapse identifying vertex `from` with vertex `to`.
// Event times are consecutive integers starting at 0.
struct tower_event {
  grade_t t = 0;
  bool include = true;
  std::vector<int> verts;
  int from = -1, to = -1;
};

struct tower_script {
  int32_t p = 2;
  std::vector<tower_event> events;
};

// Structural validation independent of any run: consecutive times, sorted
// duplicate-free vertex lists, distinct collapse endpoints.
void check_script(const tower_script& s);

// Block coefficients for the engine: the size of the block a simplex carries
// (looked up on its final image in the end complex), and the matrix filled
// into a boundary block for a face whose final image sits inside the
// cofacet's final image. The plain tower uses size 1 and the 1x1 identity.
using width_fn = std::function<int(const std::vector<int>&)>;
using ext_fn = std::function<dense_mat(const std::vector<int>&, const std::vector<int>&)>;

// Runs the event script, maintaining boundary presentations for dimensions
// 0..max_dim. Returns f[k] for k = 0..max_dim+1, where f[k] presents the
// k-th boundary map: rows are (k-1)-simplex generators, columns are
// k-simplex generators, annotated by their lifespans. Inclusions of
// simplices of dimension > max_dim are rejected.
std::vector<annotated_matrix> run_tower_engine(const tower_script& s, int max_dim,
                                               const width_fn& width,
                                               const ext_fn& ext);

// The plain simplicial tower: every simplex carries one generator.
std::vector<annotated_matrix> tower_presentations(const tower_script& s, int max_dim);

// Homology barcode of the tower in the requested degrees.
barcode tower_homology(const tower_script& s, const std::vector<int>& degrees,
                       bool keep_empty = false);

// Final images under the composite of all collapse maps: for each event index
// e that includes a simplex, the sorted vertex set its simplex maps to in the
// end complex. Non-include events get an empty list.
std::vector<std::vector<int>> final_images(const tower_script& s);

// The simplices alive after the last event, grouped by listing order.
std::vector<std::vector<int>> final_complex(const tower_script& s);

}  // namespace annmat
