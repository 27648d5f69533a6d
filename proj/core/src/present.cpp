#include "annmat/present.hpp"

#include <cassert>

#include "annmat/errors.hpp"

namespace annmat {

namespace {

// Growable dense matrix stored by column; rows and columns only ever append.
struct grow_mat {
  int rows = 0;
  std::vector<std::vector<int32_t>> col;

  void init(const dense_mat& d) {
    rows = d.rows;
    col.assign(d.cols, std::vector<int32_t>(d.rows, 0));
    for (int c = 0; c < d.cols; ++c)
      for (int r = 0; r < d.rows; ++r) col[c][r] = d.at(r, c);
  }
  void add_row() {
    ++rows;
    for (auto& v : col) v.push_back(0);
  }
  void add_col() { col.emplace_back(rows, 0); }
  void col_axpy(const fp_field& F, int to, int from, int32_t lam) {
    for (int r = 0; r < rows; ++r)
      col[to][r] = F.add(col[to][r], F.mul(lam, col[from][r]));
  }
  void row_axpy(const fp_field& F, int to, int from, int32_t lam) {
    for (auto& v : col) v[to] = F.add(v[to], F.mul(lam, v[from]));
  }
};

annotated_matrix finish(const fp_field& F, const grow_mat& g,
                        const std::vector<bar>& row_bars,
                        const std::vector<bar>& col_bars) {
  annotated_matrix out(F.p, row_bars, col_bars);
  for (size_t c = 0; c < g.col.size(); ++c)
    for (int r = 0; r < g.rows; ++r)
      if (g.col[c][r] != 0) out.cols[c].push_back({r, g.col[c][r]});
  return out;
}

}  // namespace

annotated_matrix present_with_events(const fp_field& F, const module_events& dom,
                                     const module_events& cod,
                                     const std::vector<dense_mat>& connecting) {
  const int m = int(dom.steps.size());
  assert(int(cod.steps.size()) == m);
  assert(int(connecting.size()) == m + 1);

  grow_mat f;
  f.init(connecting[0]);
  gen_tracker dt, ct;
  dt.init(dom.dims[0]);
  ct.init(cod.dims[0]);

  for (int i = 0; i < m; ++i) {
    const step_events& ed = dom.steps[i];
    const step_events& ec = cod.steps[i];

    // Mirror the column reductions: domain ops act on columns as recorded;
    // codomain ops act on rows with indices swapped and the scalar negated.
    for (const red_op& op : ed.col_ops)
      f.col_axpy(F, dt.alive[op.a], dt.alive[op.b], op.lam);
    for (const red_op& op : ec.col_ops)
      f.row_axpy(F, ct.alive[op.b], ct.alive[op.a], F.neg(op.lam));

    // Transform the next connecting matrix into the new bases.
    dense_mat t = connecting[i + 1];
    apply_row_red_to_cols(F, t, ed.row_red);
    apply_row_red_to_rows(F, t, ec.row_red);
    t = reorder_cols(t, ed.order);
    t = reorder_rows(t, ec.order);

    dt.apply(ed, i + 1);
    ct.apply(ec, i + 1);

    int new_dom = int(ed.order.size()) - ed.n_survivors;
    int new_cod = int(ec.order.size()) - ec.n_survivors;
    for (int k = 0; k < new_cod; ++k) f.add_row();
    for (int k = 0; k < new_dom; ++k) {
      f.add_col();
      auto& v = f.col.back();
      for (int r = 0; r < t.rows; ++r) {
        int32_t val = t.at(r, ed.n_survivors + k);
        if (val != 0) v[ct.alive[r]] = val;
      }
    }
#ifndef NDEBUG
    // The alive restriction of f must equal the transformed connecting matrix.
    for (int c = 0; c < t.cols; ++c)
      for (int r = 0; r < t.rows; ++r)
        assert(f.col[dt.alive[c]][ct.alive[r]] == t.at(r, c));
#endif
  }
  annotated_matrix out = finish(F, f, ct.bars, dt.bars);
  check_valid(out);
  return out;
}

annotated_matrix pres_pers_mod(const raw_module_morphism& raw) {
  raw.check();
  module_events evM = reduce_module(raw.F, raw.dimsM, raw.A);
  module_events evN = reduce_module(raw.F, raw.dimsN, raw.B);
  return present_with_events(raw.F, evM, evN, raw.C);
}

std::pair<annotated_matrix, annotated_matrix> pres_complex(const raw_complex& raw) {
  raw.check();
  module_events evL = reduce_module(raw.F, raw.dimsL, raw.D);
  module_events evM = reduce_module(raw.F, raw.dimsM, raw.A);
  module_events evN = reduce_module(raw.F, raw.dimsN, raw.B);
  annotated_matrix f0 = present_with_events(raw.F, evL, evM, raw.E);
  annotated_matrix g0 = present_with_events(raw.F, evM, evN, raw.C);
  assert(f0.row_ann == g0.col_ann);
  return {std::move(f0), std::move(g0)};
}

}  // namespace annmat
