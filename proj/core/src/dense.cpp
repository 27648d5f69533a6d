#include "annmat/dense.hpp"

#include <algorithm>

namespace annmat {

dense_mat dense_mat::identity(int n) {
  dense_mat I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

bool dense_mat::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](int32_t v) { return v == 0; });
}

dense_mat mul(const fp_field& F, const dense_mat& A, const dense_mat& B) {
  assert(A.cols == B.rows);
  dense_mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      int32_t aik = A.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < B.cols; ++j) {
        int32_t b = B.at(k, j);
        if (b != 0) C.at(i, j) = F.add(C.at(i, j), F.mul(aik, b));
      }
    }
  return C;
}

dense_mat add(const fp_field& F, const dense_mat& A, const dense_mat& B) {
  assert(A.rows == B.rows && A.cols == B.cols);
  dense_mat C(A.rows, A.cols);
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
  return C;
}

dense_mat transpose(const dense_mat& A) {
  dense_mat T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

int rank(const fp_field& F, dense_mat A) {
  int r = 0;
  for (int c = 0; c < A.cols && r < A.rows; ++c) {
    int piv = -1;
    for (int i = r; i < A.rows; ++i)
      if (A.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < A.cols; ++j) std::swap(A.at(r, j), A.at(piv, j));
    int32_t inv = F.inv(A.at(r, c));
    for (int i = r + 1; i < A.rows; ++i) {
      int32_t f = A.at(i, c);
      if (f == 0) continue;
      int32_t lam = F.mul(f, inv);
      for (int j = c; j < A.cols; ++j)
        A.at(i, j) = F.sub(A.at(i, j), F.mul(lam, A.at(r, j)));
    }
    ++r;
  }
  return r;
}

col_space::col_space(const fp_field& F_, const dense_mat& A) : F(F_), rows(A.rows) {
  basis = dense_mat(rows, 0);
  // insert columns one by one, reducing against the current echelon basis;
  // pivot = lowest nonzero entry, matching the reduction convention elsewhere
  std::vector<int32_t> v(rows);
  for (int c = 0; c < A.cols; ++c) {
    for (int i = 0; i < rows; ++i) v[i] = A.at(i, c);
    for (int b = 0; b < basis.cols; ++b) {
      int pr = pivot_row[b];
      if (v[pr] != 0) {
        int32_t lam = F.div(v[pr], basis.at(pr, b));
        for (int i = 0; i < rows; ++i)
          v[i] = F.sub(v[i], F.mul(lam, basis.at(i, b)));
      }
    }
    int pr = -1;
    for (int i = rows - 1; i >= 0; --i)
      if (v[i] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    dense_mat nb(rows, basis.cols + 1);
    for (int i = 0; i < rows; ++i) {
      for (int b = 0; b < basis.cols; ++b) nb.at(i, b) = basis.at(i, b);
      nb.at(i, basis.cols) = v[i];
    }
    basis = std::move(nb);
    pivot_row.push_back(pr);
  }
}

bool col_space::express(const std::vector<int32_t>& v0, std::vector<int32_t>& coeffs) const {
  assert(int(v0.size()) == rows);
  std::vector<int32_t> v = v0;
  coeffs.assign(basis.cols, 0);
  for (int b = 0; b < basis.cols; ++b) {
    int pr = pivot_row[b];
    if (v[pr] != 0) {
      int32_t lam = F.div(v[pr], basis.at(pr, b));
      coeffs[b] = lam;
      for (int i = 0; i < rows; ++i) v[i] = F.sub(v[i], F.mul(lam, basis.at(i, b)));
    }
  }
  return std::all_of(v.begin(), v.end(), [](int32_t x) { return x == 0; });
}

bool col_space::contains(const std::vector<int32_t>& v) const {
  std::vector<int32_t> c;
  return express(v, c);
}

dense_mat kernel_basis(const fp_field& F, const dense_mat& A) {
  // column-reduce [A; I] and read kernel generators under zero columns
  int n = A.cols;
  dense_mat W(A.rows + n, n);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < n; ++j) W.at(i, j) = A.at(i, j);
  for (int j = 0; j < n; ++j) W.at(A.rows + j, j) = 1;

  std::vector<int> pivot_col_of_row(A.rows, -1);
  for (int c = 0; c < n; ++c) {
    for (;;) {
      int pr = -1;
      for (int i = A.rows - 1; i >= 0; --i)
        if (W.at(i, c) != 0) {
          pr = i;
          break;
        }
      if (pr < 0) break;
      int other = pivot_col_of_row[pr];
      if (other < 0) {
        pivot_col_of_row[pr] = c;
        break;
      }
      int32_t lam = F.div(W.at(pr, c), W.at(pr, other));
      for (int i = 0; i < W.rows; ++i)
        W.at(i, c) = F.sub(W.at(i, c), F.mul(lam, W.at(i, other)));
    }
  }
  std::vector<int> zero_cols;
  for (int c = 0; c < n; ++c) {
    bool z = true;
    for (int i = 0; i < A.rows && z; ++i) z = W.at(i, c) == 0;
    if (z) zero_cols.push_back(c);
  }
  dense_mat K(n, int(zero_cols.size()));
  for (int k = 0; k < K.cols; ++k)
    for (int i = 0; i < n; ++i) K.at(i, k) = W.at(A.rows + i, zero_cols[k]);
  return K;
}

std::optional<std::vector<int32_t>> solve(const fp_field& F, const dense_mat& A,
                                          const std::vector<int32_t>& b) {
  assert(int(b.size()) == A.rows);
  dense_mat W(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) W.at(i, j) = A.at(i, j);
    W.at(i, A.cols) = F.norm(b[i]);
  }
  // row echelon with pivot columns tracked
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < A.cols && r < A.rows; ++c) {
    int pr = -1;
    for (int i = r; i < A.rows; ++i)
      if (W.at(i, c) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = c; j <= A.cols; ++j) std::swap(W.at(pr, j), W.at(r, j));
    int32_t inv = F.inv(W.at(r, c));
    for (int j = c; j <= A.cols; ++j) W.at(r, j) = F.mul(inv, W.at(r, j));
    for (int i = 0; i < A.rows; ++i) {
      if (i == r || W.at(i, c) == 0) continue;
      int32_t lam = W.at(i, c);
      for (int j = c; j <= A.cols; ++j)
        W.at(i, j) = F.sub(W.at(i, j), F.mul(lam, W.at(r, j)));
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < A.rows; ++i)
    if (W.at(i, A.cols) != 0) return std::nullopt;
  std::vector<int32_t> x(A.cols, 0);
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = W.at(i, A.cols);
  return x;
}

}  // namespace annmat
