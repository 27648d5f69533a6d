#pragma once

#include <cassert>
#include <cstdint>

namespace annmat {

// Arithmetic in Z/p for a runtime prime p. Residues are kept in [0, p).
struct fp_field {
  int32_t p;

  explicit fp_field(int32_t p_) : p(p_) { assert(p >= 2); }

  int32_t norm(int64_t x) const {
    int64_t r = x % p;
    return static_cast<int32_t>(r < 0 ? r + p : r);
  }
  int32_t add(int32_t a, int32_t b) const { return norm(int64_t(a) + b); }
  int32_t sub(int32_t a, int32_t b) const { return norm(int64_t(a) - b); }
  int32_t mul(int32_t a, int32_t b) const { return norm(int64_t(a) * b); }
  int32_t neg(int32_t a) const { return a == 0 ? 0 : p - a; }
  // multiplicative inverse of a != 0, via extended Euclid
  int32_t inv(int32_t a) const;
  // a / b with b != 0
  int32_t div(int32_t a, int32_t b) const { return mul(a, inv(b)); }

  bool operator==(const fp_field&) const = default;
};

bool is_prime(int32_t p);

}  // namespace annmat
