#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "annmat/field.hpp"

namespace annmat {

// Global counter of scalar multiply-add steps performed by sparse column and
// row operations. Lets tests assert asymptotic op counts (not wall time).
namespace opcount {
void reset();
uint64_t get();
void bump(uint64_t n);
}  // namespace opcount

struct sparse_entry {
  int row;
  int32_t val;  // nonzero residue

  bool operator==(const sparse_entry&) const = default;
};

// Sparse vector: entries sorted by row, values nonzero.
using sparse_vec = std::vector<sparse_entry>;

int32_t get_entry(const sparse_vec& v, int row);
void set_entry(sparse_vec& v, int row, int32_t val);
// y += lam * x
void axpy(const fp_field& F, sparse_vec& y, int32_t lam, const sparse_vec& x);
// lowest nonzero position, or -1 if empty
int low(const sparse_vec& v);
void scale(const fp_field& F, sparse_vec& v, int32_t lam);
// apply row index remap (monotone or not); entries mapped to -1 are dropped
void remap_rows(sparse_vec& v, const std::vector<int>& new_index);

}  // namespace annmat
