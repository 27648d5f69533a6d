#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "annmat/field.hpp"

namespace annmat {

// Dense row-major matrix over Z/p. Used by the brute-force oracles and the
// small per-index structure matrices; reduction-heavy paths use sparse
// columns instead.
struct dense_mat {
  int rows = 0;
  int cols = 0;
  std::vector<int32_t> a;  // rows * cols residues

  dense_mat() = default;
  dense_mat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0) {}

  int32_t& at(int r, int c) {
    assert(0 <= r && r < rows && 0 <= c && c < cols);
    return a[std::size_t(r) * cols + c];
  }
  int32_t at(int r, int c) const {
    assert(0 <= r && r < rows && 0 <= c && c < cols);
    return a[std::size_t(r) * cols + c];
  }

  static dense_mat identity(int n);
  bool is_zero() const;
  bool operator==(const dense_mat&) const = default;
};

dense_mat mul(const fp_field& F, const dense_mat& A, const dense_mat& B);
dense_mat add(const fp_field& F, const dense_mat& A, const dense_mat& B);
dense_mat transpose(const dense_mat& A);
int rank(const fp_field& F, dense_mat A);

// Column span data for solving and basis computations: reduces A to column
// echelon form, remembering which input columns form a basis of the span.
struct col_space {
  fp_field F;
  int rows;
  dense_mat basis;           // rows x rank, reduced echelon columns
  std::vector<int> pivot_row;  // per basis column, its pivot row (descending depth)

  col_space(const fp_field& F_, const dense_mat& A);
  int dim() const { return basis.cols; }
  // if v lies in the span, fills coeffs (size dim()) with coordinates and
  // returns true; otherwise returns false
  bool express(const std::vector<int32_t>& v, std::vector<int32_t>& coeffs) const;
  bool contains(const std::vector<int32_t>& v) const;
};

// basis of the kernel of A, one column per kernel generator
dense_mat kernel_basis(const fp_field& F, const dense_mat& A);

// solves A x = b exactly; empty when inconsistent, free variables set to zero
std::optional<std::vector<int32_t>> solve(const fp_field& F, const dense_mat& A,
                                          const std::vector<int32_t>& b);

}  // namespace annmat
