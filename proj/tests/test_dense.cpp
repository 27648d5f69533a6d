#include "doctest.h"

#include "annmat/dense.hpp"
#include "helpers.hpp"

using namespace annmat;
using namespace testgen;

TEST_SUITE("dense") {

TEST_CASE("identity and multiplication") {
  fp_field F{5};
  rng_t g(11);
  dense_mat a = rand_mat(g, F, 4, 3);
  CHECK(mul(F, dense_mat::identity(4), a) == a);
  CHECK(mul(F, a, dense_mat::identity(3)) == a);
  CHECK(transpose(transpose(a)) == a);

  dense_mat b = rand_mat(g, F, 3, 5);
  dense_mat c = rand_mat(g, F, 5, 2);
  CHECK(mul(F, mul(F, a, b), c) == mul(F, a, mul(F, b, c)));
  CHECK(transpose(mul(F, a, b)) == mul(F, transpose(b), transpose(a)));
}

TEST_CASE("rank facts") {
  fp_field F{3};
  CHECK(rank(F, dense_mat(0, 0)) == 0);
  CHECK(rank(F, dense_mat(4, 2)) == 0);
  CHECK(rank(F, dense_mat::identity(6)) == 6);

  dense_mat a(2, 2);  // [[1,2],[2,1]] has det -3 = 0 mod 3
  a.at(0, 0) = 1;
  a.at(0, 1) = 2;
  a.at(1, 0) = 2;
  a.at(1, 1) = 1;
  CHECK(rank(F, a) == 1);

  rng_t g(7);
  for (int it = 0; it < 20; ++it) {
    dense_mat x = rand_mat(g, F, uniform(g, 1, 5), uniform(g, 1, 5));
    int r = rank(F, x);
    CHECK(rank(F, transpose(x)) == r);
    dense_mat gl = rand_invertible(g, F, x.rows);
    dense_mat gr = rand_invertible(g, F, x.cols);
    CHECK(rank(F, mul(F, gl, mul(F, x, gr))) == r);
  }
}

TEST_CASE("rank-nullity and kernel") {
  rng_t g(13);
  for (int32_t p : {2, 3, 5}) {
    fp_field F{p};
    for (int it = 0; it < 20; ++it) {
      dense_mat a = rand_mat(g, F, uniform(g, 0, 5), uniform(g, 0, 5));
      dense_mat k = kernel_basis(F, a);
      CHECK(k.rows == a.cols);
      CHECK(rank(F, a) + k.cols == a.cols);
      CHECK(rank(F, k) == k.cols);
      CHECK(mul(F, a, k).is_zero());
    }
  }
}

TEST_CASE("column space membership") {
  fp_field F{5};
  rng_t g(17);
  for (int it = 0; it < 20; ++it) {
    dense_mat a = rand_mat(g, F, uniform(g, 1, 5), uniform(g, 1, 5));
    col_space cs(F, a);
    CHECK(cs.dim() == rank(F, a));
    // every column lies in the space and its expression reproduces it
    for (int c = 0; c < a.cols; ++c) {
      std::vector<int32_t> v(a.rows);
      for (int r = 0; r < a.rows; ++r) v[r] = a.at(r, c);
      CHECK(cs.contains(v));
      std::vector<int32_t> coeffs;
      REQUIRE(cs.express(v, coeffs));
    }
  }
}

TEST_CASE("solve") {
  rng_t g(19);
  for (int32_t p : {2, 3, 5}) {
    fp_field F{p};
    for (int it = 0; it < 30; ++it) {
      dense_mat a = rand_mat(g, F, uniform(g, 1, 5), uniform(g, 1, 5));
      // consistent: b = a * x0 for a random x0
      std::vector<int32_t> x0(a.cols);
      for (auto& v : x0) v = rand_scalar(g, F);
      std::vector<int32_t> b(a.rows, 0);
      for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < a.cols; ++c)
          b[r] = F.add(b[r], F.mul(a.at(r, c), x0[c]));
      auto x = solve(F, a, b);
      REQUIRE(x.has_value());
      std::vector<int32_t> ax(a.rows, 0);
      for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < a.cols; ++c)
          ax[r] = F.add(ax[r], F.mul(a.at(r, c), (*x)[c]));
      CHECK(ax == b);
    }
    // inconsistent system has no solution
    dense_mat a(2, 1);
    a.at(0, 0) = 1;
    a.at(1, 0) = 1;
    std::vector<int32_t> b{1, 2 % p};
    if (p > 2) CHECK_FALSE(solve(F, a, b).has_value());
    CHECK_FALSE(solve(F, dense_mat(1, 0), std::vector<int32_t>{1}).has_value());
  }
}

TEST_CASE("inverse helper round-trips") {
  rng_t g(23);
  for (int32_t p : {2, 3, 5}) {
    fp_field F{p};
    for (int n = 1; n <= 4; ++n) {
      dense_mat a = rand_invertible(g, F, n);
      CHECK(mul(F, a, inverse_of(F, a)) == dense_mat::identity(n));
    }
  }
}

}  // TEST_SUITE
