#include "annmat/raw.hpp"

#include <algorithm>
#include <string>

#include "annmat/errors.hpp"

namespace annmat {

namespace {

void check_shape(const dense_mat& x, int rows, int cols, const std::string& name,
                 int i) {
  if (x.rows != rows || x.cols != cols)
    throw invariant_error(name + "[" + std::to_string(i) + "] is " +
                          std::to_string(x.rows) + "x" + std::to_string(x.cols) +
                          ", expected " + std::to_string(rows) + "x" +
                          std::to_string(cols));
}

void check_sizes(int m, size_t dims, size_t steps, size_t across,
                 const std::string& what) {
  if (int(dims) != m + 1 || int(steps) != m || int(across) != m + 1)
    throw invariant_error("inconsistent sequence lengths for " + what);
}

}  // namespace

void raw_module_morphism::check() const {
  check_sizes(m, dimsM.size(), A.size(), C.size(), "module morphism");
  if (int(dimsN.size()) != m + 1 || int(B.size()) != m)
    throw invariant_error("inconsistent sequence lengths for module morphism");
  for (int i = 0; i < m; ++i) {
    check_shape(A[i], dimsM[i + 1], dimsM[i], "A", i);
    check_shape(B[i], dimsN[i + 1], dimsN[i], "B", i);
  }
  for (int i = 0; i <= m; ++i) check_shape(C[i], dimsN[i], dimsM[i], "C", i);
  for (int i = 0; i < m; ++i)
    if (!(mul(F, C[i + 1], A[i]) == mul(F, B[i], C[i])))
      throw invariant_error("naturality fails between indices " + std::to_string(i) +
                            " and " + std::to_string(i + 1));
}

void raw_complex::check() const {
  if (int(dimsL.size()) != m + 1 || int(dimsM.size()) != m + 1 ||
      int(dimsN.size()) != m + 1 || int(D.size()) != m || int(A.size()) != m ||
      int(B.size()) != m || int(E.size()) != m + 1 || int(C.size()) != m + 1)
    throw invariant_error("inconsistent sequence lengths for complex");
  for (int i = 0; i < m; ++i) {
    check_shape(D[i], dimsL[i + 1], dimsL[i], "D", i);
    check_shape(A[i], dimsM[i + 1], dimsM[i], "A", i);
    check_shape(B[i], dimsN[i + 1], dimsN[i], "B", i);
  }
  for (int i = 0; i <= m; ++i) {
    check_shape(E[i], dimsM[i], dimsL[i], "E", i);
    check_shape(C[i], dimsN[i], dimsM[i], "C", i);
  }
  for (int i = 0; i < m; ++i) {
    if (!(mul(F, A[i], E[i]) == mul(F, E[i + 1], D[i])))
      throw invariant_error("naturality of the first map fails between indices " +
                            std::to_string(i) + " and " + std::to_string(i + 1));
    if (!(mul(F, B[i], C[i]) == mul(F, C[i + 1], A[i])))
      throw invariant_error("naturality of the second map fails between indices " +
                            std::to_string(i) + " and " + std::to_string(i + 1));
  }
  for (int i = 0; i <= m; ++i)
    if (!mul(F, C[i], E[i]).is_zero())
      throw invariant_error("composite is nonzero at index " + std::to_string(i));
}

pointwise_module evaluate_annotations(const std::vector<bar>& anns, int m) {
  pointwise_module out;
  out.dims.assign(m + 1, 0);
  std::vector<std::vector<int>> active(m + 1);  // per index: gen -> position
  std::vector<std::vector<int>> pos(m + 1, std::vector<int>(anns.size(), -1));
  for (int i = 0; i <= m; ++i) {
    for (size_t j = 0; j < anns.size(); ++j)
      if (anns[j].contains(i)) {
        pos[i][j] = out.dims[i]++;
        active[i].push_back(int(j));
      }
  }
  out.maps.reserve(m);
  for (int i = 0; i < m; ++i) {
    dense_mat s(out.dims[i + 1], out.dims[i]);
    for (int j : active[i])
      if (pos[i + 1][j] >= 0) s.at(pos[i + 1][j], pos[i][j]) = 1;
    out.maps.push_back(std::move(s));
  }
  return out;
}

raw_module_morphism reconstruct_pointwise(const annotated_matrix& f, int m) {
  if (m < 0) {
    grade_t top = 0;
    for (const bar& b : f.row_ann) {
      top = std::max(top, b.birth);
      if (b.death != kInf) top = std::max(top, b.death);
    }
    for (const bar& b : f.col_ann) {
      top = std::max(top, b.birth);
      if (b.death != kInf) top = std::max(top, b.death);
    }
    m = int(top);
  }
  raw_module_morphism out;
  out.F = fp_field{f.p};
  out.m = m;
  pointwise_module dom = evaluate_annotations(f.col_ann, m);
  pointwise_module cod = evaluate_annotations(f.row_ann, m);
  out.dimsM = dom.dims;
  out.dimsN = cod.dims;
  out.A = std::move(dom.maps);
  out.B = std::move(cod.maps);
  out.C.reserve(m + 1);
  for (int i = 0; i <= m; ++i) {
    // positions of active generators at index i, in generator order
    std::vector<int> cpos(f.ncols(), -1), rpos(f.nrows(), -1);
    int nc = 0, nr = 0;
    for (int c = 0; c < f.ncols(); ++c)
      if (f.col_ann[c].contains(i)) cpos[c] = nc++;
    for (int r = 0; r < f.nrows(); ++r)
      if (f.row_ann[r].contains(i)) rpos[r] = nr++;
    dense_mat ci(nr, nc);
    for (int c = 0; c < f.ncols(); ++c) {
      if (cpos[c] < 0) continue;
      for (const auto& e : f.cols[c])
        if (rpos[e.row] >= 0) ci.at(rpos[e.row], cpos[c]) = e.val;
    }
    out.C.push_back(std::move(ci));
  }
  return out;
}

}  // namespace annmat
