#include "doctest.h"

#include <map>

#include "annmat/errors.hpp"
#include "annmat/cosheaf.hpp"
#include "annmat/io.hpp"
#include "annmat/oracle.hpp"
#include "annmat/tower.hpp"
#include "helpers.hpp"

using namespace annmat;
using namespace testgen;

namespace {

// dimension-d constant coefficients over the final complex of a script
cosheaf_instance constant_instance(const tower_script& s, int d) {
  cosheaf_instance inst;
  inst.script = s;
  for (const auto& sx : final_complex(s)) {
    inst.data.stalk[sx] = d;
    if (sx.size() < 2) continue;
    for (size_t j = 0; j < sx.size(); ++j) {
      std::vector<int> face;
      for (size_t q = 0; q < sx.size(); ++q)
        if (q != j) face.push_back(sx[q]);
      inst.data.ext[{face, sx}] = dense_mat::identity(d);
    }
  }
  return inst;
}

}  // namespace

TEST_SUITE("cosheaf") {

TEST_CASE("constant coefficients reproduce the plain tower") {
  cosheaf_instance inst = read_cosheaf(data_file("merge.cosheaf"), 2);
  check_cosheaf(inst);
  tower_script s = read_tower(data_file("merge.tower"), 2);
  CHECK(cosheaf_homology(inst, {0}).same_bars(tower_homology(s, {0})));
  CHECK(cosheaf_homology(inst, {1}).same_bars(tower_homology(s, {1})));

  std::vector<annotated_matrix> a = cosheaf_presentations(inst, 1);
  std::vector<annotated_matrix> b = tower_presentations(s, 1);
  REQUIRE(a.size() == b.size());
  for (size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
}

TEST_CASE("dimension-d constants give d copies of the tower barcode") {
  rng_t g(601);
  for (int it = 0; it < 8; ++it) {
    tower_script s = rand_tower(g, 2, 14, 3);
    int d = uniform(g, 2, 3);
    cosheaf_instance inst = constant_instance(s, d);
    check_cosheaf(inst);
    barcode tw = tower_homology(s, {0, 1, 2});
    barcode want;
    for (const auto& db : tw.bars)
      for (int c = 0; c < d; ++c) want.add(db.degree, db.iv);
    want.canonicalize();
    barcode got = cosheaf_homology(inst, {0, 1, 2});
    CAPTURE(it);
    CHECK(got.same_bars(want));
  }
}

TEST_CASE("zero extension blocks disconnect the edge") {
  tower_script s;
  s.p = 2;
  auto add = [&](std::vector<int> v) {
    tower_event ev;
    ev.t = grade_t(s.events.size());
    ev.include = true;
    ev.verts = std::move(v);
    s.events.push_back(ev);
  };
  add({0});
  add({1});
  add({0, 1});
  cosheaf_instance inst = constant_instance(s, 1);
  inst.data.ext[{{0}, {0, 1}}] = dense_mat(1, 1);
  inst.data.ext[{{1}, {0, 1}}] = dense_mat(1, 1);
  check_cosheaf(inst);
  CHECK(cosheaf_homology(inst, {0}).same_bars(bars_of({{0, kInf}, {1, kInf}}, 0)));
  CHECK(cosheaf_homology(inst, {1}).same_bars(bars_of({{2, kInf}}, 1)));
}

TEST_CASE("zero stalks drop their generators") {
  tower_script s;
  s.p = 2;
  tower_event ev;
  ev.t = 0;
  ev.include = true;
  ev.verts = {0};
  s.events.push_back(ev);
  cosheaf_instance inst = constant_instance(s, 0);
  check_cosheaf(inst);
  CHECK(cosheaf_homology(inst, {0}).size() == 0);
}

TEST_CASE("incomplete data is rejected") {
  tower_script s;
  s.p = 2;
  tower_event ev;
  ev.t = 0;
  ev.include = true;
  ev.verts = {0};
  s.events.push_back(ev);
  cosheaf_instance inst;
  inst.script = s;
  CHECK_THROWS_AS(check_cosheaf(inst), invariant_error);  // no stalk for {0}
}

TEST_CASE("twisted coefficients match the materialized oracle") {
  rng_t g(607);
  for (int it = 0; it < 12; ++it) {
    int32_t p = std::vector<int32_t>{2, 3, 5}[uniform(g, 0, 2)];
    cosheaf_instance inst = rand_cosheaf(g, p, 14, 3, 2);
    check_cosheaf(inst);
    barcode got = cosheaf_homology(inst, {0, 1, 2});
    barcode want = materialized_cosheaf_homology(inst, {0, 1, 2});
    CAPTURE(it);
    CAPTURE(to_string(got));
    CAPTURE(to_string(want));
    CHECK(got.same_bars(want));
  }
}

}  // TEST_SUITE
