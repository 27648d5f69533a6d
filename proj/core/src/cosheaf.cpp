#include "annmat/cosheaf.hpp"

#include <algorithm>
#include <sstream>

#include "annmat/complexify.hpp"
#include "annmat/errors.hpp"
#include "annmat/hom.hpp"

namespace annmat {

namespace {

std::string simplex_name(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Direct codimension-1 block, a zero matrix when absent because some side has
// block size zero.
dense_mat ext_step(const fp_field& F, const cosheaf_data& d,
                   const std::vector<int>& face, const std::vector<int>& cof) {
  auto it = d.ext.find({face, cof});
  if (it != d.ext.end()) {
    dense_mat x = it->second;
    for (auto& v : x.a) v = F.norm(v);
    return x;
  }
  return dense_mat(d.stalk.at(face), d.stalk.at(cof));
}

}  // namespace

const dense_mat& ext_closure::get(const std::vector<int>& face,
                                  const std::vector<int>& cof) {
  auto key = std::make_pair(face, cof);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  dense_mat result;
  if (face == cof) {
    result = dense_mat::identity(data->stalk.at(face));
  } else if (face.size() + 1 == cof.size()) {
    result = ext_step(F, *data, face, cof);
  } else {
    // peel the largest vertex of cof missing from face
    std::vector<int> mid = cof;
    for (int i = int(cof.size()) - 1; i >= 0; --i) {
      if (!std::binary_search(face.begin(), face.end(), cof[i])) {
        mid.erase(mid.begin() + i);
        break;
      }
    }
    result = mul(F, get(face, mid), ext_step(F, *data, mid, cof));
  }
  return memo.emplace(std::move(key), std::move(result)).first->second;
}

void check_cosheaf(const cosheaf_instance& inst) {
  check_script(inst.script);
  fp_field F{inst.script.p};
  std::vector<std::vector<int>> end = final_complex(inst.script);

  for (const auto& s : end)
    if (!inst.data.stalk.count(s))
      throw invariant_error("no block size given for end-complex simplex " +
                            simplex_name(s));
  if (inst.data.stalk.size() != end.size()) {
    for (const auto& [s, d] : inst.data.stalk)
      if (!std::binary_search(end.begin(), end.end(), s,
                              [](const auto& x, const auto& y) {
                                if (x.size() != y.size()) return x.size() < y.size();
                                return x < y;
                              }))
        throw invariant_error("block size given for simplex " + simplex_name(s) +
                              " which is not in the end complex");
  }
  for (const auto& [s, d] : inst.data.stalk)
    if (d < 0) throw invariant_error("negative block size for " + simplex_name(s));

  // Codim-1 pairs: required when both sizes are positive; shapes must match.
  std::map<std::pair<std::vector<int>, std::vector<int>>, bool> wanted;
  for (const auto& cof : end) {
    if (cof.size() < 2) continue;
    for (size_t j = 0; j < cof.size(); ++j) {
      std::vector<int> face = cof;
      face.erase(face.begin() + j);
      wanted[{face, cof}] = true;
      auto it = inst.data.ext.find({face, cof});
      int sf = inst.data.stalk.at(face), sc = inst.data.stalk.at(cof);
      if (it == inst.data.ext.end()) {
        if (sf > 0 && sc > 0)
          throw invariant_error("missing block between " + simplex_name(face) +
                                " and " + simplex_name(cof));
      } else if (it->second.rows != sf || it->second.cols != sc) {
        throw invariant_error("block between " + simplex_name(face) + " and " +
                              simplex_name(cof) + " has the wrong shape");
      }
    }
  }
  for (const auto& [key, x] : inst.data.ext)
    if (!wanted.count(key))
      throw invariant_error("block given for " + simplex_name(key.first) + " inside " +
                            simplex_name(key.second) +
                            " which is not a face relation of the end complex");

  // The two composites across every codim-2 square must agree.
  for (const auto& cof : end) {
    if (cof.size() < 3) continue;
    for (size_t u = 0; u < cof.size(); ++u) {
      for (size_t v = u + 1; v < cof.size(); ++v) {
        std::vector<int> mid1 = cof, mid2 = cof, face = cof;
        mid1.erase(mid1.begin() + u);
        mid2.erase(mid2.begin() + v);
        face.erase(face.begin() + v);
        face.erase(face.begin() + u);
        dense_mat a = mul(F, ext_step(F, inst.data, face, mid1),
                          ext_step(F, inst.data, mid1, cof));
        dense_mat b = mul(F, ext_step(F, inst.data, face, mid2),
                          ext_step(F, inst.data, mid2, cof));
        if (!(a == b))
          throw invariant_error("inconsistent composites from " + simplex_name(cof) +
                                " down to " + simplex_name(face));
      }
    }
  }
}

std::vector<annotated_matrix> cosheaf_presentations(const cosheaf_instance& inst,
                                                    int max_dim) {
  check_cosheaf(inst);
  fp_field F{inst.script.p};
  ext_closure cl(F, &inst.data);
  return run_tower_engine(
      inst.script, max_dim,
      [&inst](const std::vector<int>& s) { return inst.data.stalk.at(s); },
      [&cl](const std::vector<int>& face, const std::vector<int>& cof) {
        return cl.get(face, cof);
      });
}

barcode cosheaf_homology(const cosheaf_instance& inst, const std::vector<int>& degrees,
                         bool keep_empty) {
  if (degrees.empty()) throw invariant_error("no degrees requested");
  int top = 0;
  for (int k : degrees) {
    if (k < 0) throw invariant_error("negative degree requested");
    top = std::max(top, k);
  }
  std::vector<annotated_matrix> pres = cosheaf_presentations(inst, top + 1);
  barcode out;
  for (int k : degrees) {
    auto [f, g] = complexify_pair(pres[k + 1], pres[k]);
    barcode b = pres_hom(f, g, k, keep_empty);
    for (const degree_bar& db : b.bars) out.bars.push_back(db);
  }
  out.canonicalize();
  return out;
}

}  // namespace annmat
