#include "annmat/sparse.hpp"

#include <algorithm>

namespace annmat {

namespace opcount {
namespace {
std::atomic<uint64_t> counter{0};
}
void reset() { counter.store(0, std::memory_order_relaxed); }
uint64_t get() { return counter.load(std::memory_order_relaxed); }
void bump(uint64_t n) { counter.fetch_add(n, std::memory_order_relaxed); }
}  // namespace opcount

int32_t get_entry(const sparse_vec& v, int row) {
  auto it = std::lower_bound(v.begin(), v.end(), row,
                             [](const sparse_entry& e, int r) { return e.row < r; });
  return (it != v.end() && it->row == row) ? it->val : 0;
}

void set_entry(sparse_vec& v, int row, int32_t val) {
  auto it = std::lower_bound(v.begin(), v.end(), row,
                             [](const sparse_entry& e, int r) { return e.row < r; });
  if (it != v.end() && it->row == row) {
    if (val == 0)
      v.erase(it);
    else
      it->val = val;
  } else if (val != 0) {
    v.insert(it, {row, val});
  }
}

void axpy(const fp_field& F, sparse_vec& y, int32_t lam, const sparse_vec& x) {
  if (lam == 0 || x.empty()) return;
  opcount::bump(x.size());
  sparse_vec out;
  out.reserve(y.size() + x.size());
  auto yi = y.begin();
  auto xi = x.begin();
  while (yi != y.end() || xi != x.end()) {
    if (xi == x.end() || (yi != y.end() && yi->row < xi->row)) {
      out.push_back(*yi++);
    } else if (yi == y.end() || xi->row < yi->row) {
      out.push_back({xi->row, F.mul(lam, xi->val)});
      ++xi;
    } else {
      int32_t s = F.add(yi->val, F.mul(lam, xi->val));
      if (s != 0) out.push_back({yi->row, s});
      ++yi;
      ++xi;
    }
  }
  y = std::move(out);
}

int low(const sparse_vec& v) { return v.empty() ? -1 : v.back().row; }

void scale(const fp_field& F, sparse_vec& v, int32_t lam) {
  if (lam == 1) return;
  opcount::bump(v.size());
  if (lam == 0) {
    v.clear();
    return;
  }
  for (auto& e : v) e.val = F.mul(e.val, lam);
}

void remap_rows(sparse_vec& v, const std::vector<int>& new_index) {
  sparse_vec out;
  out.reserve(v.size());
  for (const auto& e : v) {
    int r = new_index[e.row];
    if (r >= 0) out.push_back({r, e.val});
  }
  std::sort(out.begin(), out.end(),
            [](const sparse_entry& a, const sparse_entry& b) { return a.row < b.row; });
  v = std::move(out);
}

}  // namespace annmat
