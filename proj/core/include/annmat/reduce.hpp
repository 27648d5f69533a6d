#pragma once

#include <vector>

#include "annmat/barcode.hpp"
#include "annmat/dense.hpp"
#include "annmat/field.hpp"

namespace annmat {

// One recorded basis-change operation. Interpretation depends on the list it
// sits in:
//  - col_ops:  col[a] += lam * col[b], indices into the current alive list;
//  - row_red with a != b:  row[a] += lam * row[b], standard-basis rows of the
//    next index;
//  - row_red with a == b:  row[a] *= lam (pivot normalization).
struct red_op {
  int a = 0, b = 0;
  int32_t lam = 0;
};

// Everything that happened while reducing one step matrix. `order` lists the
// standard-basis rows of the next index in the new generator order: first the
// pivot rows of surviving generators (in alive order), then the non-pivot rows
// ascending; the latter are the generators born at the next index.
struct step_events {
  std::vector<red_op> col_ops;
  std::vector<int> dying;  // alive positions whose generator dies, ascending
  std::vector<red_op> row_red;
  std::vector<int> order;
  int n_survivors = 0;
};

// The full reduction history of one pointwise module. Deterministic in the
// input, so two reductions of the same internal maps agree event for event.
struct module_events {
  std::vector<int> dims;           // size m+1, as given
  std::vector<step_events> steps;  // size m
};

module_events reduce_module(const fp_field& F, const std::vector<int>& dims,
                            const std::vector<dense_mat>& step_mats);

// Replays row_red on a matrix whose columns are indexed by the reduced basis
// (the domain side of a connecting map).
void apply_row_red_to_cols(const fp_field& F, dense_mat& t,
                           const std::vector<red_op>& ops);
// Replays row_red on a matrix whose rows are indexed by the reduced basis
// (the codomain side of a connecting map).
void apply_row_red_to_rows(const fp_field& F, dense_mat& t,
                           const std::vector<red_op>& ops);
dense_mat reorder_cols(const dense_mat& t, const std::vector<int>& order);
dense_mat reorder_rows(const dense_mat& t, const std::vector<int>& order);

// Tracks the generator list of one module as reduction events are replayed.
// Generator ids are creation-ordered; `alive` maps alive positions to ids.
struct gen_tracker {
  std::vector<bar> bars;
  std::vector<int> alive;

  void init(int dim0, grade_t birth = 0);
  // Records deaths at grade t_next, then appends the new generators.
  void apply(const step_events& ev, grade_t t_next);
};

// Bars of every generator the reduced module ever had, in creation order.
std::vector<bar> generator_bars(const module_events& ev);

}  // namespace annmat
