#include "annmat/hom.hpp"

#include <algorithm>
#include <cassert>

#include "annmat/errors.hpp"
#include "annmat/field.hpp"
#include "annmat/sparse.hpp"

namespace annmat {

namespace {

struct graded_col {
  sparse_vec v;
  grade_t deg = 0;
  int label = 0;
};

void sort_by_degree(std::vector<graded_col>& cols) {
  std::stable_sort(cols.begin(), cols.end(),
                   [](const graded_col& x, const graded_col& y) { return x.deg < y.deg; });
}

// Left-to-right column reduction, pivot = lowest nonzero row; leftmost column
// keeps each pivot. Returns pivot_col_of_row (-1 where unclaimed).
std::vector<int> reduce_cols(const fp_field& F, std::vector<graded_col>& cols,
                             int nrows) {
  std::vector<int> pivot(nrows, -1);
  for (size_t c = 0; c < cols.size(); ++c) {
    sparse_vec& v = cols[c].v;
    while (!v.empty()) {
      int lo = low(v);
      int o = pivot[lo];
      if (o < 0) {
        pivot[lo] = int(c);
        break;
      }
      const sparse_vec& w = cols[o].v;
      int32_t lam = F.neg(F.div(v.back().val, w.back().val));
      axpy(F, v, lam, w);
    }
  }
  return pivot;
}

}  // namespace

barcode pres_hom(const annotated_matrix& f0, const annotated_matrix& g0,
                 int degree, bool keep_empty) {
  if (f0.p != g0.p) throw invariant_error("field characteristics differ");
  if (g0.col_ann != f0.row_ann)
    throw invariant_error("middle annotations of the pair do not match");
  check_valid(f0);
  check_valid(g0);
  {
    annotated_matrix h = compose(g0, f0);
    for (int c = 0; c < h.ncols(); ++c)
      if (!h.cols[c].empty())
        throw invariant_error("matrix composite is nonzero at column " +
                              std::to_string(c) + "; not a reduced complex");
  }
  fp_field F{f0.p};
  const int n_mid = g0.ncols();
  const int n_cod = g0.nrows();
  const int n_dom = f0.ncols();

  std::vector<int> mid_rel;  // middle generators with finite death
  for (int j = 0; j < n_mid; ++j)
    if (g0.col_ann[j].death != kInf) mid_rel.push_back(j);
  std::vector<int> cod_rel;  // codomain generators with finite death
  for (int r = 0; r < n_cod; ++r)
    if (g0.row_ann[r].death != kInf) cod_rel.push_back(r);

  // Stage one: reduce (g0 | -r) to find which stacked rows are redundant.
  std::vector<graded_col> stage1;
  stage1.reserve(n_mid + cod_rel.size());
  for (int j = 0; j < n_mid; ++j)
    stage1.push_back({g0.cols[j], g0.col_ann[j].birth, j});
  for (size_t k = 0; k < cod_rel.size(); ++k)
    stage1.push_back({sparse_vec{{cod_rel[k], F.neg(1)}},
                      g0.row_ann[cod_rel[k]].death, n_mid + int(k)});
  sort_by_degree(stage1);
  reduce_cols(F, stage1, n_cod);

  const int n_stack_rows = n_mid + int(cod_rel.size());
  std::vector<bool> keep_row(n_stack_rows, false);
  for (const graded_col& c : stage1) keep_row[c.label] = c.v.empty();

  // Stacked rows that survive, sorted by degree (stable in label order).
  struct srow {
    grade_t deg;
    int label;
  };
  std::vector<srow> rows;
  for (int l = 0; l < n_stack_rows; ++l) {
    if (!keep_row[l]) continue;
    grade_t d = l < n_mid ? g0.col_ann[l].birth : g0.row_ann[cod_rel[l - n_mid]].death;
    rows.push_back({d, l});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const srow& x, const srow& y) { return x.deg < y.deg; });
  std::vector<int> row_pos(n_stack_rows, -1);
  for (size_t i = 0; i < rows.size(); ++i) row_pos[rows[i].label] = int(i);

  // Stage two: the stacked matrix [[f0, -q], [0, -g1]] on the kept rows.
  std::vector<graded_col> stage2;
  stage2.reserve(n_dom + mid_rel.size());
  for (int c = 0; c < n_dom; ++c) {
    sparse_vec v = f0.cols[c];
    remap_rows(v, row_pos);
    stage2.push_back({std::move(v), f0.col_ann[c].birth, c});
  }
  for (size_t k = 0; k < mid_rel.size(); ++k) {
    int j = mid_rel[k];
    sparse_vec v;
    if (row_pos[j] >= 0) v.push_back({row_pos[j], F.neg(1)});
    for (size_t t = 0; t < cod_rel.size(); ++t) {
      int32_t val = get_entry(g0.cols[j], cod_rel[t]);
      if (val != 0 && row_pos[n_mid + int(t)] >= 0)
        v.push_back({row_pos[n_mid + int(t)], F.neg(val)});
    }
    std::sort(v.begin(), v.end(),
              [](const sparse_entry& x, const sparse_entry& y) { return x.row < y.row; });
    stage2.push_back({std::move(v), g0.col_ann[j].death, n_dom + int(k)});
  }
  sort_by_degree(stage2);
  std::vector<int> pivot = reduce_cols(F, stage2, int(rows.size()));

  barcode out;
  for (size_t i = 0; i < rows.size(); ++i) {
    int pc = pivot[i];
    bar b{rows[i].deg, pc < 0 ? kInf : stage2[pc].deg};
    out.add(degree, b);
  }
  if (!keep_empty) out.drop_empty();
  out.canonicalize();
  return out;
}

barcode persistence_algorithm(const annotated_matrix& f0, const annotated_matrix& g0,
                              int degree, bool keep_empty) {
  for (const bar& b : f0.col_ann)
    if (b.death != kInf)
      throw invariant_error("domain annotations must have infinite death");
  for (const bar& b : g0.col_ann)
    if (b.death != kInf)
      throw invariant_error("middle annotations must have infinite death");
  for (const bar& b : g0.row_ann)
    if (b.death != kInf)
      throw invariant_error("codomain annotations must have infinite death");
  return pres_hom(f0, g0, degree, keep_empty);
}

}  // namespace annmat
