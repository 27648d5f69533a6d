#pragma once

#include <optional>
#include <string>
#include <vector>

#include "annmat/barcode.hpp"
#include "annmat/dense.hpp"
#include "annmat/sparse.hpp"

namespace annmat {

// A matrix over Z/p whose rows and columns carry [birth, death) annotations.
// Presents a morphism of persistence modules: columns are domain-side
// generators, rows are codomain-side generators, and the scalar entries are
// understood alongside the grade shift implied by the annotations.
struct annotated_matrix {
  int32_t p = 2;
  std::vector<bar> row_ann;
  std::vector<bar> col_ann;
  std::vector<sparse_vec> cols;  // one sparse column per col_ann entry

  annotated_matrix() = default;
  annotated_matrix(int32_t p_, std::vector<bar> rows, std::vector<bar> columns)
      : p(p_), row_ann(std::move(rows)), col_ann(std::move(columns)), cols(col_ann.size()) {}

  int nrows() const { return int(row_ann.size()); }
  int ncols() const { return int(col_ann.size()); }
  int32_t entry(int r, int c) const { return get_entry(cols[c], r); }
  void set(int r, int c, int32_t v) { set_entry(cols[c], r, v); }

  dense_mat to_dense() const;
  static annotated_matrix from_dense(int32_t p, const dense_mat& d,
                                     std::vector<bar> rows, std::vector<bar> columns);
  bool operator==(const annotated_matrix&) const = default;
};

// Checks the annotation compatibility rules: every annotation has
// birth <= death, and a nonzero entry at (r, c) requires
//   row.birth <= col.birth  and  row.death <= col.death.
// With check_death = false the death half is skipped (composites of valid
// matrices can break exactly that half; complexify_pair repairs them).
// Returns a description of the first violation, or nullopt if valid.
std::optional<std::string> validity_violation(const annotated_matrix& f,
                                              bool check_death = true);
void check_valid(const annotated_matrix& f, bool check_death = true);

// Plain matrix product of two annotated matrices; requires g.col_ann ==
// f.row_ann. The result's birth rule always holds; its death rule can break.
annotated_matrix compose(const annotated_matrix& g, const annotated_matrix& f);

enum class side { domain, codomain };

// The presentation is canonical, so the barcode of the domain (resp.
// codomain) module is just the column (resp. row) annotation multiset.
barcode barcode_of_presentation(const annotated_matrix& f, side s, int degree = 0,
                                bool keep_empty = false);

// The relation matrices determined by the annotations: p (domain relations),
// q (codomain relations), and the induced map f1 between them, all as plain
// scalar matrices. rel_cols / rel_rows record which generator each relation
// bounds, in order.
struct relation_matrices {
  dense_mat p;   // domain gens x domain relations, unit columns
  dense_mat q;   // codomain gens x codomain relations, unit columns
  dense_mat f1;  // codomain relations x domain relations
  std::vector<int> rel_cols;  // finite-death columns of f, ascending
  std::vector<int> rel_rows;  // finite-death rows of f, ascending
};
relation_matrices derive_relation_matrices(const annotated_matrix& f);

}  // namespace annmat
