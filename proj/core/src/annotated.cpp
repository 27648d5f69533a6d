#include "annmat/annotated.hpp"

#include <cassert>
#include <sstream>

#include "annmat/errors.hpp"
#include "annmat/field.hpp"

namespace annmat {

dense_mat annotated_matrix::to_dense() const {
  dense_mat d(nrows(), ncols());
  for (int c = 0; c < ncols(); ++c)
    for (const auto& e : cols[c]) d.at(e.row, c) = e.val;
  return d;
}

annotated_matrix annotated_matrix::from_dense(int32_t p, const dense_mat& d,
                                              std::vector<bar> rows,
                                              std::vector<bar> columns) {
  assert(int(rows.size()) == d.rows && int(columns.size()) == d.cols);
  annotated_matrix f(p, std::move(rows), std::move(columns));
  for (int c = 0; c < d.cols; ++c)
    for (int r = 0; r < d.rows; ++r)
      if (d.at(r, c) != 0) f.cols[c].push_back({r, d.at(r, c)});
  return f;
}

std::optional<std::string> validity_violation(const annotated_matrix& f,
                                              bool check_death) {
  for (int r = 0; r < f.nrows(); ++r)
    if (f.row_ann[r].birth > f.row_ann[r].death)
      return "row " + std::to_string(r) + " annotation has birth > death";
  for (int c = 0; c < f.ncols(); ++c)
    if (f.col_ann[c].birth > f.col_ann[c].death)
      return "column " + std::to_string(c) + " annotation has birth > death";
  for (int c = 0; c < f.ncols(); ++c) {
    for (const auto& e : f.cols[c]) {
      if (e.row < 0 || e.row >= f.nrows())
        return "column " + std::to_string(c) + " has entry at out-of-range row " +
               std::to_string(e.row);
      if (e.val == 0) continue;
      const bar& rb = f.row_ann[e.row];
      const bar& cb = f.col_ann[c];
      if (rb.birth > cb.birth) {
        std::ostringstream os;
        os << "entry at (" << e.row << ", " << c << ") pairs row " << to_string(rb)
           << " with column " << to_string(cb) << ": row born after column";
        return os.str();
      }
      if (check_death && rb.death > cb.death) {
        std::ostringstream os;
        os << "entry at (" << e.row << ", " << c << ") pairs row " << to_string(rb)
           << " with column " << to_string(cb) << ": row outlives column";
        return os.str();
      }
    }
  }
  return std::nullopt;
}

void check_valid(const annotated_matrix& f, bool check_death) {
  if (auto why = validity_violation(f, check_death))
    throw invariant_error("invalid annotated matrix: " + *why);
}

annotated_matrix compose(const annotated_matrix& g, const annotated_matrix& f) {
  if (g.p != f.p) throw invariant_error("compose: field characteristics differ");
  if (g.col_ann != f.row_ann)
    throw invariant_error("compose: inner annotations do not match");
  fp_field F{g.p};
  annotated_matrix h(g.p, g.row_ann, f.col_ann);
  for (int c = 0; c < f.ncols(); ++c)
    for (const auto& e : f.cols[c])
      if (e.val != 0) axpy(F, h.cols[c], e.val, g.cols[e.row]);
  return h;
}

barcode barcode_of_presentation(const annotated_matrix& f, side s, int degree,
                                bool keep_empty) {
  const auto& anns = (s == side::domain) ? f.col_ann : f.row_ann;
  barcode b;
  for (const bar& iv : anns) b.add(degree, iv);
  if (!keep_empty) b.drop_empty();
  b.canonicalize();
  return b;
}

relation_matrices derive_relation_matrices(const annotated_matrix& f) {
  relation_matrices out;
  for (int c = 0; c < f.ncols(); ++c)
    if (f.col_ann[c].death != kInf) out.rel_cols.push_back(c);
  for (int r = 0; r < f.nrows(); ++r)
    if (f.row_ann[r].death != kInf) out.rel_rows.push_back(r);
  out.p = dense_mat(f.ncols(), int(out.rel_cols.size()));
  for (int j = 0; j < int(out.rel_cols.size()); ++j) out.p.at(out.rel_cols[j], j) = 1;
  out.q = dense_mat(f.nrows(), int(out.rel_rows.size()));
  for (int j = 0; j < int(out.rel_rows.size()); ++j) out.q.at(out.rel_rows[j], j) = 1;
  out.f1 = dense_mat(int(out.rel_rows.size()), int(out.rel_cols.size()));
  for (int j = 0; j < int(out.rel_cols.size()); ++j)
    for (int i = 0; i < int(out.rel_rows.size()); ++i)
      out.f1.at(i, j) = f.entry(out.rel_rows[i], out.rel_cols[j]);
  return out;
}

}  // namespace annmat
