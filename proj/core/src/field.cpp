#include "annmat/field.hpp"

namespace annmat {

int32_t fp_field::inv(int32_t a) const {
  assert(a != 0);
  // extended Euclid: find x with a*x = 1 (mod p)
  int64_t r0 = p, r1 = a, x0 = 0, x1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    int64_t r2 = r0 - q * r1;
    int64_t x2 = x0 - q * x1;
    r0 = r1;
    r1 = r2;
    x0 = x1;
    x1 = x2;
  }
  assert(r0 == 1 && "inverse requires gcd(a, p) == 1");
  return norm(x0);
}

bool is_prime(int32_t p) {
  if (p < 2) return false;
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace annmat
