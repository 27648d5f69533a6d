#include "doctest.h"

#include <functional>

#include "annmat/errors.hpp"
#include "annmat/io.hpp"
#include "annmat/oracle.hpp"
#include "annmat/poset.hpp"
#include "helpers.hpp"

using namespace annmat;
using namespace testgen;

namespace {

// number of nonempty chains of a poset, by brute force over the closure
std::size_t count_chains(const finite_poset& X) {
  auto leq = X.closure();
  int n = X.size();
  std::vector<std::vector<int>> above(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && leq[a][b]) above[a].push_back(b);
  std::size_t total = 0;
  // chains counted by their minimum: extend upward one element at a time
  std::function<void(int)> grow = [&](int top) {
    ++total;
    for (int nxt : above[top]) grow(nxt);
  };
  // grow() counts each chain once because a chain determines its element order
  for (int e = 0; e < n; ++e) grow(e);
  return total;
}

}  // namespace

TEST_SUITE("poset") {

TEST_CASE("poset validation") {
  finite_poset X;
  X.labels = {"a", "b"};
  X.covers = {{0, 1}};
  CHECK_NOTHROW(X.check());

  SUBCASE("duplicate labels") {
    X.labels = {"a", "a"};
    CHECK_THROWS_AS(X.check(), invariant_error);
  }
  SUBCASE("self cover") {
    X.covers = {{0, 0}};
    CHECK_THROWS_AS(X.check(), invariant_error);
  }
  SUBCASE("cycle") {
    X.covers = {{0, 1}, {1, 0}};
    CHECK_THROWS_AS(X.check(), invariant_error);
  }
  SUBCASE("non-minimal cover") {
    X.labels = {"a", "b", "c"};
    X.covers = {{0, 1}, {1, 2}, {0, 2}};
    CHECK_THROWS_AS(X.check(), invariant_error);
  }
}

TEST_CASE("zigzag recognition") {
  finite_poset path;
  path.labels = {"a", "b", "c"};
  path.covers = {{0, 1}, {2, 1}};
  CHECK(is_zigzag(path));

  finite_poset branch;
  branch.labels = {"a", "b", "c", "d"};
  branch.covers = {{0, 1}, {2, 1}, {3, 1}};
  CHECK_FALSE(is_zigzag(branch));

  finite_poset split;
  split.labels = {"a", "b", "c", "d"};
  split.covers = {{0, 1}, {2, 3}};
  CHECK_FALSE(is_zigzag(split));  // disconnected
}

TEST_CASE("monotone runs collapse in the alternating subposet") {
  poset_sheaf S = read_poset(data_file("chain.poset"), 2);
  S.check();
  poset_sheaf T = alternating_subposet(S);
  REQUIRE(T.X.size() == 2);
  CHECK(T.X.labels == std::vector<std::string>{"x0", "x2"});
  REQUIRE(T.X.covers.size() == 1);
  // the surviving cover composes the two original restrictions
  CHECK(T.res_of(0, 1, 0).at(0, 0) == 1);
  CHECK(T.stalk[0] == S.stalk[0]);
}

TEST_CASE("two-armed poset cohomology") {
  poset_sheaf S = read_poset(data_file("vee.poset"), 2);
  S.check();
  CHECK(poset_cohomology(S, 0).same_bars(bars_of({{0, kInf}}, 0)));
  CHECK(poset_cohomology(S, 1).size() == 0);
  // both computation routes agree here
  CHECK(poset_cohomology_alternating(S, 0)
            .same_bars(poset_cohomology_order_complex(S, 0)));
}

TEST_CASE("chain sheaf restricts to its bottom element") {
  poset_sheaf S = read_poset(data_file("chain.poset"), 2);
  CHECK(poset_cohomology(S, 0).same_bars(bars_of({{0, kInf}}, 0)));
  CHECK(poset_cohomology(S, 1).size() == 0);
  CHECK(poset_limit_barcode(S).same_bars(bars_of({{0, kInf}})));
}

TEST_CASE("order complex counts match brute force") {
  rng_t g(801);
  for (int it = 0; it < 10; ++it) {
    poset_sheaf S = rand_poset_sheaf(g, 2, 6, 1, 1);
    order_complex_result oc = order_complex(S.X, kDefaultMaxChains);
    std::size_t listed = 0;
    for (const auto& lev : oc.K.by_dim) listed += lev.size();
    CHECK(listed == count_chains(S.X));
  }
}

TEST_CASE("chain budget guards the order complex") {
  finite_poset X;  // total order on 6 elements: 2^6 - 1 = 63 chains
  for (int e = 0; e < 6; ++e) X.labels.push_back("t" + std::to_string(e));
  for (int e = 0; e + 1 < 6; ++e) X.covers.push_back({e, e + 1});
  CHECK_THROWS_AS(order_complex(X, 10), invariant_error);
  CHECK_NOTHROW(order_complex(X, 100));
}

TEST_CASE("limit oracle agrees with degree-zero cohomology") {
  rng_t g(809);
  for (int it = 0; it < 15; ++it) {
    int32_t p = std::vector<int32_t>{2, 3, 5}[uniform(g, 0, 2)];
    poset_sheaf S = rand_poset_sheaf(g, p, 6, uniform(g, 0, 3), 3);
    S.check();
    barcode got = poset_cohomology(S, 0);
    barcode want = poset_limit_barcode(S);
    want.drop_empty();
    want.canonicalize();
    CAPTURE(it);
    CAPTURE(to_string(got));
    CAPTURE(to_string(want));
    CHECK(got.same_bars(want));
  }
}

TEST_CASE("zigzag sheaves: the two routes agree and high degrees vanish") {
  rng_t g(821);
  for (int it = 0; it < 12; ++it) {
    int32_t p = std::vector<int32_t>{2, 3, 5}[uniform(g, 0, 2)];
    poset_sheaf S = rand_zigzag_sheaf(g, p, 7, uniform(g, 1, 4), 2);
    S.check();
    REQUIRE(is_zigzag(S.X));
    for (int k = 0; k <= 1; ++k) {
      barcode a = poset_cohomology_alternating(S, k);
      barcode b = poset_cohomology_order_complex(S, k);
      CAPTURE(it);
      CAPTURE(k);
      CAPTURE(to_string(a));
      CAPTURE(to_string(b));
      CHECK(a.same_bars(b));
    }
    CHECK(poset_cohomology_order_complex(S, 2).size() == 0);
    CHECK(poset_cohomology(S, 3).size() == 0);
  }
}

}  // TEST_SUITE
