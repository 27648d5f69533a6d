#include "annmat/run.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "annmat/annotated.hpp"
#include "annmat/cosheaf.hpp"
#include "annmat/errors.hpp"
#include "annmat/hom.hpp"
#include "annmat/io.hpp"
#include "annmat/oracle.hpp"
#include "annmat/poset.hpp"
#include "annmat/present.hpp"
#include "annmat/sheaf.hpp"
#include "annmat/tower.hpp"

namespace annmat {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"barcodes of complexes of persistence modules via annotated presentations"};
  app.require_subcommand(1);

  int32_t field = 2;
  bool keep_empty = false;
  int threads = 1;
  std::string out_path;
  app.add_option("--field", field, "prime field order (default 2)");
  app.add_flag("--keep-empty", keep_empty, "keep zero-length bars in barcodes");
  app.add_option("--threads", threads, "worker threads for the sheaf pipeline")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", out_path, "write the result to this file instead of stdout");

  std::string in1, in2;
  int deg_hom = 1, deg_oracle = 1;
  int dim_tower = 0, dim_cosheaf = 0, deg_sheaf = 0, deg_poset = 0;

  auto* sc_preshom =
      app.add_subcommand("preshom", "homology barcode of a presented complex pair");
  sc_preshom->add_option("f0", in1, "left annotated matrix file")->required();
  sc_preshom->add_option("g0", in2, "right annotated matrix file")->required();
  sc_preshom->add_option("--deg", deg_hom, "degree label for the output bars");

  auto* sc_present =
      app.add_subcommand("present", "canonical annotated presentation of a raw morphism");
  sc_present->add_option("in", in1, "raw morphism file")->required();

  auto* sc_tower = app.add_subcommand("tower", "homology barcode of a simplicial tower");
  sc_tower->add_option("in", in1, "tower event script file")->required();
  sc_tower->add_option("--dim", dim_tower, "homology dimension")
      ->required()
      ->check(CLI::NonNegativeNumber);

  auto* sc_cosheaf =
      app.add_subcommand("cosheaf", "homology barcode of a cosheaf over a tower");
  sc_cosheaf->add_option("in", in1, "block tower file")->required();
  sc_cosheaf->add_option("--dim", dim_cosheaf, "homology dimension")
      ->required()
      ->check(CLI::NonNegativeNumber);

  auto* sc_sheaf =
      app.add_subcommand("sheaf", "cohomology barcode of a sheaf on a simplicial complex");
  sc_sheaf->add_option("in", in1, "sheaf instance file")->required();
  sc_sheaf->add_option("--deg", deg_sheaf, "cohomology degree")
      ->required()
      ->check(CLI::NonNegativeNumber);

  auto* sc_poset =
      app.add_subcommand("poset", "cohomology barcode of a sheaf on a finite poset");
  sc_poset->add_option("in", in1, "poset sheaf file")->required();
  sc_poset->add_option("--deg", deg_poset, "cohomology degree")
      ->required()
      ->check(CLI::NonNegativeNumber);

  auto* sc_oracle =
      app.add_subcommand("oracle", "brute-force homology barcode of a raw complex");
  sc_oracle->add_option("in", in1, "raw complex file")->required();
  sc_oracle->add_option("--deg", deg_oracle, "degree label for the output bars");

  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  try {
    std::vector<const char*> argv;
    argv.push_back("annmat");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!is_prime(field))
      throw parse_error("--field " + std::to_string(field) + " is not prime");
    bool field_given = app.count("--field") > 0;
    auto check_embedded = [&](int32_t file_p, const std::string& path) {
      if (field_given && file_p != field)
        throw parse_error(path, 1,
                          "file declares field order " + std::to_string(file_p) +
                              " but --field says " + std::to_string(field));
    };

    std::ostringstream buf;
    if (sc_preshom->parsed()) {
      annotated_matrix f0 = read_annmat(in1);
      annotated_matrix g0 = read_annmat(in2);
      check_embedded(f0.p, in1);
      check_embedded(g0.p, in2);
      if (f0.p != g0.p)
        throw parse_error(in2, 1,
                          "file declares field order " + std::to_string(g0.p) +
                              " but the first input uses " + std::to_string(f0.p));
      check_valid(f0);
      check_valid(g0);
      write_barcode(buf, pres_hom(f0, g0, deg_hom, keep_empty));
    } else if (sc_present->parsed()) {
      raw_module_morphism raw = read_rawmod(in1);
      check_embedded(raw.F.p, in1);
      raw.check();
      write_annmat(buf, pres_pers_mod(raw));
    } else if (sc_tower->parsed()) {
      tower_script s = read_tower(in1, dim_tower + 1);
      check_embedded(s.p, in1);
      write_barcode(buf, tower_homology(s, {dim_tower}, keep_empty));
    } else if (sc_cosheaf->parsed()) {
      cosheaf_instance inst = read_cosheaf(in1, dim_cosheaf + 1);
      check_embedded(inst.script.p, in1);
      write_barcode(buf, cosheaf_homology(inst, {dim_cosheaf}, keep_empty));
    } else if (sc_sheaf->parsed()) {
      sheaf_instance S = read_sheaf(in1, field);
      write_barcode(buf, sheaf_cohomology_local(S, deg_sheaf, threads, keep_empty));
    } else if (sc_poset->parsed()) {
      poset_sheaf S = read_poset(in1, field);
      S.check();
      write_barcode(buf, poset_cohomology(S, deg_poset, keep_empty));
    } else {  // oracle
      raw_complex raw = read_rawcplx(in1);
      check_embedded(raw.F.p, in1);
      raw.check();
      write_barcode(buf, pointwise_homology_barcode(raw, deg_oracle));
    }

    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw parse_error(out_path, 0, "cannot open file for writing");
      f << buf.str();
    } else {
      out << buf.str();
    }
    return 0;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const invariant_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace annmat
