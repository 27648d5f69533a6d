#include "annmat/reduce.hpp"

#include <algorithm>
#include <cassert>

namespace annmat {

namespace {

int low_row(const dense_mat& x, int c) {
  for (int r = x.rows - 1; r >= 0; --r)
    if (x.at(r, c) != 0) return r;
  return -1;
}

}  // namespace

module_events reduce_module(const fp_field& F, const std::vector<int>& dims,
                            const std::vector<dense_mat>& step_mats) {
  const int m = int(step_mats.size());
  assert(int(dims.size()) == m + 1);
  module_events out;
  out.dims = dims;
  out.steps.resize(m);
  if (m == 0) return out;

  dense_mat cur = step_mats[0];  // columns track the alive generators
  for (int i = 0; i < m; ++i) {
    assert(cur.rows == dims[i + 1] && cur.cols == dims[i]);
    step_events& ev = out.steps[i];

    // Column reduction, leftmost pivot wins; pivot is the lowest nonzero row.
    std::vector<int> pivot_col_of_row(cur.rows, -1);
    for (int c = 0; c < cur.cols; ++c) {
      for (;;) {
        int pr = low_row(cur, c);
        if (pr < 0) break;
        int o = pivot_col_of_row[pr];
        if (o < 0) {
          pivot_col_of_row[pr] = c;
          break;
        }
        int32_t lam = F.neg(F.div(cur.at(pr, c), cur.at(pr, o)));
        for (int r = 0; r <= pr; ++r)
          cur.at(r, c) = F.add(cur.at(r, c), F.mul(lam, cur.at(r, o)));
        ev.col_ops.push_back({c, o, lam});
      }
    }
    std::vector<int> low_of_col(cur.cols, -1);
    for (int c = 0; c < cur.cols; ++c) low_of_col[c] = low_row(cur, c);
    for (int c = 0; c < cur.cols; ++c)
      if (low_of_col[c] < 0) ev.dying.push_back(c);

    // Implicit row reduction: normalize each pivot to 1, then clear the rest
    // of its column, left to right, recording the ops in application order.
    for (int c = 0; c < cur.cols; ++c) {
      int pr = low_of_col[c];
      if (pr < 0) continue;
      int32_t u = cur.at(pr, c);
      if (u != 1) {
        int32_t s = F.inv(u);
        for (int cc = 0; cc < cur.cols; ++cc) cur.at(pr, cc) = F.mul(s, cur.at(pr, cc));
        ev.row_red.push_back({pr, pr, s});
      }
      for (int a = 0; a < cur.rows; ++a) {
        if (a == pr || cur.at(a, c) == 0) continue;
        int32_t lam = F.neg(cur.at(a, c));
        for (int cc = 0; cc < cur.cols; ++cc)
          cur.at(a, cc) = F.add(cur.at(a, cc), F.mul(lam, cur.at(pr, cc)));
        ev.row_red.push_back({a, pr, lam});
      }
    }

    // New generator order: surviving pivot rows first, then fresh rows.
    std::vector<bool> is_pivot(cur.rows, false);
    for (int c = 0; c < cur.cols; ++c)
      if (low_of_col[c] >= 0) {
        ev.order.push_back(low_of_col[c]);
        is_pivot[low_of_col[c]] = true;
      }
    ev.n_survivors = int(ev.order.size());
    for (int r = 0; r < cur.rows; ++r)
      if (!is_pivot[r]) ev.order.push_back(r);

    if (i + 1 < m) {
      dense_mat next = step_mats[i + 1];
      apply_row_red_to_cols(F, next, ev.row_red);
      cur = reorder_cols(next, ev.order);
    }
  }
  return out;
}

void apply_row_red_to_cols(const fp_field& F, dense_mat& t,
                           const std::vector<red_op>& ops) {
  for (const red_op& op : ops) {
    if (op.a == op.b) {
      int32_t s = F.inv(op.lam);
      for (int r = 0; r < t.rows; ++r) t.at(r, op.a) = F.mul(s, t.at(r, op.a));
    } else {
      for (int r = 0; r < t.rows; ++r)
        t.at(r, op.b) = F.sub(t.at(r, op.b), F.mul(op.lam, t.at(r, op.a)));
    }
  }
}

void apply_row_red_to_rows(const fp_field& F, dense_mat& t,
                           const std::vector<red_op>& ops) {
  for (const red_op& op : ops) {
    if (op.a == op.b) {
      for (int c = 0; c < t.cols; ++c) t.at(op.a, c) = F.mul(op.lam, t.at(op.a, c));
    } else {
      for (int c = 0; c < t.cols; ++c)
        t.at(op.a, c) = F.add(t.at(op.a, c), F.mul(op.lam, t.at(op.b, c)));
    }
  }
}

dense_mat reorder_cols(const dense_mat& t, const std::vector<int>& order) {
  dense_mat out(t.rows, int(order.size()));
  for (int c = 0; c < out.cols; ++c)
    for (int r = 0; r < t.rows; ++r) out.at(r, c) = t.at(r, order[c]);
  return out;
}

dense_mat reorder_rows(const dense_mat& t, const std::vector<int>& order) {
  dense_mat out(int(order.size()), t.cols);
  for (int r = 0; r < out.rows; ++r)
    for (int c = 0; c < t.cols; ++c) out.at(r, c) = t.at(order[r], c);
  return out;
}

void gen_tracker::init(int dim0, grade_t birth) {
  bars.assign(dim0, bar{birth, kInf});
  alive.resize(dim0);
  for (int j = 0; j < dim0; ++j) alive[j] = j;
}

void gen_tracker::apply(const step_events& ev, grade_t t_next) {
  for (int pos : ev.dying) bars[alive[pos]].death = t_next;
  for (auto it = ev.dying.rbegin(); it != ev.dying.rend(); ++it)
    alive.erase(alive.begin() + *it);
  int n_new = int(ev.order.size()) - ev.n_survivors;
  assert(int(alive.size()) == ev.n_survivors);
  for (int k = 0; k < n_new; ++k) {
    alive.push_back(int(bars.size()));
    bars.push_back(bar{t_next, kInf});
  }
}

std::vector<bar> generator_bars(const module_events& ev) {
  gen_tracker tr;
  tr.init(ev.dims.empty() ? 0 : ev.dims[0]);
  for (size_t i = 0; i < ev.steps.size(); ++i) tr.apply(ev.steps[i], grade_t(i) + 1);
  return tr.bars;
}

}  // namespace annmat
