#pragma once

#include <vector>

#include "annmat/annotated.hpp"
#include "annmat/dense.hpp"

namespace annmat {

// A morphism of persistence modules over indices 0..m, given pointwise:
// M_i --C_i--> N_i with internal maps A_i : M_i -> M_{i+1}, B_i : N_i -> N_{i+1}.
struct raw_module_morphism {
  fp_field F{2};
  int m = 0;
  std::vector<int> dimsM, dimsN;  // size m+1
  std::vector<dense_mat> A, B;    // size m; A[i] is dimsM[i+1] x dimsM[i]
  std::vector<dense_mat> C;       // size m+1; C[i] is dimsN[i] x dimsM[i]

  // Shape checks plus naturality: C[i+1] * A[i] == B[i] * C[i].
  void check() const;
};

// A three-term pointwise complex L --f--> M --g--> N with g*f == 0 at every
// index. D/A/B are the internal maps of L/M/N; E[i] = f_i, C[i] = g_i.
struct raw_complex {
  fp_field F{2};
  int m = 0;
  std::vector<int> dimsL, dimsM, dimsN;
  std::vector<dense_mat> D, A, B;
  std::vector<dense_mat> E, C;

  void check() const;
};

// Evaluates a canonically presented module at each index 0..m: dims[i] counts
// the annotations alive at i, and maps[i] is the step matrix (unit entries on
// generators alive at both i and i+1).
struct pointwise_module {
  std::vector<int> dims;        // size m+1
  std::vector<dense_mat> maps;  // size m
};
pointwise_module evaluate_annotations(const std::vector<bar>& anns, int m);

// Evaluates an annotated matrix pointwise, producing the raw morphism it
// presents over indices 0..m. With m < 0 the horizon is the largest finite
// grade appearing in the annotations.
raw_module_morphism reconstruct_pointwise(const annotated_matrix& f, int m = -1);

}  // namespace annmat
