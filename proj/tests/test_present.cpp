#include "doctest.h"

#include <sstream>

#include "annmat/io.hpp"
#include "annmat/oracle.hpp"
#include "annmat/present.hpp"
#include "helpers.hpp"

using namespace annmat;
using namespace testgen;

TEST_SUITE("present") {

TEST_CASE("presentation of the reference morphism") {
  raw_module_morphism raw = read_rawmod(data_file("morphism.rawmod"));
  raw.check();
  annotated_matrix f = pres_pers_mod(raw);
  CHECK_NOTHROW(check_valid(f));

  std::vector<bar> rows{{0, kInf}, {0, 1}, {0, 1}, {1, kInf}, {1, kInf}};
  std::vector<bar> cols{{0, 2}, {0, 2}, {0, 1}, {1, kInf}, {2, kInf}, {2, kInf}};
  CHECK(f.row_ann == rows);
  CHECK(f.col_ann == cols);

  int want[5][6] = {{0, 0, 0, 1, 1, 1},
                    {0, 1, 1, 0, 0, 0},
                    {1, 1, 1, 0, 0, 0},
                    {0, 0, 0, 1, 1, 1},
                    {0, 0, 0, 0, 0, 1}};
  dense_mat d = f.to_dense();
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 6; ++c) {
      CAPTURE(r);
      CAPTURE(c);
      CHECK(d.at(r, c) == want[r][c]);
    }

  std::ostringstream os;
  write_annmat(os, f);
  annotated_matrix f2 = read_annmat(temp_file("present_roundtrip.annmat", os.str()).string());
  CHECK(f == f2);
}

TEST_CASE("annotations carry the true barcodes") {
  rng_t g(211);
  for (int it = 0; it < 30; ++it) {
    int32_t p = std::vector<int32_t>{2, 3, 5}[uniform(g, 0, 2)];
    morphism_case mc = rand_raw_morphism(g, p, 5, 4);
    mc.raw.check();
    annotated_matrix f = pres_pers_mod(mc.raw);
    CHECK_NOTHROW(check_valid(f));
    CHECK(barcode_of_presentation(f, side::domain).same_bars(mc.dom_bars));
    CHECK(barcode_of_presentation(f, side::codomain).same_bars(mc.cod_bars));
  }
}

TEST_CASE("presenting a reconstruction is stable") {
  rng_t g(223);
  for (int it = 0; it < 10; ++it) {
    morphism_case mc = rand_raw_morphism(g, 3, 4, 4);
    annotated_matrix f = pres_pers_mod(mc.raw);
    raw_module_morphism back = reconstruct_pointwise(f, mc.raw.m);
    back.check();
    annotated_matrix f2 = pres_pers_mod(back);
    CHECK(barcode_of_presentation(f2, side::domain)
              .same_bars(barcode_of_presentation(f, side::domain)));
    CHECK(barcode_of_presentation(f2, side::codomain)
              .same_bars(barcode_of_presentation(f, side::codomain)));
  }
}

TEST_CASE("degenerate inputs") {
  raw_module_morphism z;
  z.F = fp_field{2};
  z.m = 1;
  z.dimsM = {0, 0};
  z.dimsN = {0, 0};
  z.A = {dense_mat(0, 0)};
  z.B = {dense_mat(0, 0)};
  z.C = {dense_mat(0, 0), dense_mat(0, 0)};
  annotated_matrix f = pres_pers_mod(z);
  CHECK(f.nrows() == 0);
  CHECK(f.ncols() == 0);

  // zero map between nonzero modules: annotations still present both sides
  morphism_case mc;
  rng_t g(227);
  mc = rand_raw_morphism(g, 2, 3, 3);
  for (auto& c : mc.raw.C) c = dense_mat(c.rows, c.cols);
  annotated_matrix fz = pres_pers_mod(mc.raw);
  CHECK(barcode_of_presentation(fz, side::domain).same_bars(mc.dom_bars));
  CHECK(barcode_of_presentation(fz, side::codomain).same_bars(mc.cod_bars));
}

}  // TEST_SUITE
