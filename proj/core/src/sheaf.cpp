#include "annmat/sheaf.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "annmat/errors.hpp"
#include "annmat/parallel.hpp"
#include "annmat/present.hpp"
#include "annmat/complexify.hpp"
#include "annmat/hom.hpp"
#include "annmat/reduce.hpp"

namespace annmat {

namespace {

std::string simplex_name(const std::vector<int>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

void check_vertex_list(const std::vector<int>& s) {
  if (s.empty()) throw invariant_error("simplex must have at least one vertex");
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i] >= s[i + 1])
      throw invariant_error("simplex " + simplex_name(s) +
                            " must list strictly increasing vertices");
}

}  // namespace

simplicial_complex simplicial_complex::from_maximal(
    const std::vector<std::vector<int>>& maximal) {
  std::set<std::vector<int>> faces;
  for (const auto& s : maximal) {
    check_vertex_list(s);
    if (s.size() > 30) throw invariant_error("simplex " + simplex_name(s) + " is too large");
    for (unsigned mask = 1; mask < (1u << s.size()); ++mask) {
      std::vector<int> f;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (mask & (1u << i)) f.push_back(s[i]);
      faces.insert(std::move(f));
    }
  }
  simplicial_complex K;
  for (const auto& f : faces) {
    int d = int(f.size()) - 1;
    if (d >= int(K.by_dim.size())) K.by_dim.resize(d + 1);
    K.by_dim[d].push_back(f);
  }
  for (auto& level : K.by_dim) std::sort(level.begin(), level.end());
  for (int d = 0; d < int(K.by_dim.size()); ++d)
    for (int i = 0; i < int(K.by_dim[d].size()); ++i) K.index[K.by_dim[d][i]] = {d, i};
  return K;
}

std::vector<int> sheaf_instance::dims_of(const std::vector<int>& s) const {
  auto it = stalk.find(s);
  if (it != stalk.end()) return it->second;
  return std::vector<int>(m + 1, 0);
}

dense_mat sheaf_instance::step_of(const std::vector<int>& s, int i) const {
  auto it = step.find(s);
  if (it != step.end() && i < int(it->second.size())) return it->second[i];
  auto d = dims_of(s);
  return dense_mat(d[i + 1], d[i]);
}

dense_mat sheaf_instance::res_of(const std::vector<int>& face,
                                 const std::vector<int>& cof, int i) const {
  auto it = res.find({face, cof});
  if (it != res.end() && i < int(it->second.size())) return it->second[i];
  return dense_mat(dims_of(cof)[i], dims_of(face)[i]);
}

void sheaf_instance::check() const {
  if (!is_prime(p)) throw invariant_error("field order must be prime");
  if (m < 0) throw invariant_error("grading horizon must be non-negative");
  for (const auto& [s, dims] : stalk) {
    if (!K.has(s))
      throw invariant_error("stalk on unknown simplex " + simplex_name(s));
    if (int(dims.size()) != m + 1)
      throw invariant_error("stalk dims for simplex " + simplex_name(s) + " must list " +
                            std::to_string(m + 1) + " values");
    for (int d : dims)
      if (d < 0)
        throw invariant_error("stalk dims for simplex " + simplex_name(s) +
                              " must be non-negative");
  }
  for (const auto& [s, mats] : step) {
    if (!K.has(s))
      throw invariant_error("step maps on unknown simplex " + simplex_name(s));
    if (int(mats.size()) != m)
      throw invariant_error("step maps for simplex " + simplex_name(s) + " must list " +
                            std::to_string(m) + " matrices");
    auto d = dims_of(s);
    for (int i = 0; i < m; ++i)
      if (mats[i].rows != d[i + 1] || mats[i].cols != d[i])
        throw invariant_error("step map for simplex " + simplex_name(s) + " at index " +
                              std::to_string(i) + " has the wrong shape");
  }
  for (const auto& [key, mats] : res) {
    const auto& [face, cof] = key;
    std::string name = "restriction (" + simplex_name(face) + " -> " + simplex_name(cof) + ")";
    if (!K.has(face) || !K.has(cof)) throw invariant_error(name + " names an unknown simplex");
    if (cof.size() != face.size() + 1 ||
        !std::includes(cof.begin(), cof.end(), face.begin(), face.end()))
      throw invariant_error(name + " is not a codimension-1 face relation");
    if (int(mats.size()) != m + 1)
      throw invariant_error(name + " must list " + std::to_string(m + 1) + " matrices");
    auto df = dims_of(face), dc = dims_of(cof);
    for (int i = 0; i <= m; ++i)
      if (mats[i].rows != dc[i] || mats[i].cols != df[i])
        throw invariant_error(name + " at index " + std::to_string(i) +
                              " has the wrong shape");
  }
  fp_field F(p);
  for (const auto& [key, mats] : res) {
    const auto& [face, cof] = key;
    for (int i = 0; i < m; ++i)
      if (mul(F, step_of(cof, i), mats[i]) != mul(F, mats[i + 1], step_of(face, i)))
        throw invariant_error("restriction (" + simplex_name(face) + " -> " +
                              simplex_name(cof) + ") breaks naturality at index " +
                              std::to_string(i));
  }
  for (int d = 2; d <= K.top_dim(); ++d) {
    for (const auto& rho : K.by_dim[d]) {
      for (std::size_t a = 0; a < rho.size(); ++a) {
        for (std::size_t b = a + 1; b < rho.size(); ++b) {
          std::vector<int> sigma, ta, tb;
          for (std::size_t j = 0; j < rho.size(); ++j) {
            if (j != a) ta.push_back(rho[j]);
            if (j != b) tb.push_back(rho[j]);
            if (j != a && j != b) sigma.push_back(rho[j]);
          }
          for (int i = 0; i <= m; ++i)
            if (mul(F, res_of(ta, rho, i), res_of(sigma, ta, i)) !=
                mul(F, res_of(tb, rho, i), res_of(sigma, tb, i)))
              throw invariant_error("restrictions from " + simplex_name(sigma) + " to " +
                                    simplex_name(rho) + " disagree at index " +
                                    std::to_string(i));
        }
      }
    }
  }
}

namespace {

// per-grade block offsets of the simplices of one dimension
struct level_layout {
  std::vector<std::vector<int>> off;  // off[i][pos], one per grade
  std::vector<int> total;             // per grade
};

level_layout layout_level(const sheaf_instance& S, int d) {
  level_layout L;
  L.off.assign(S.m + 1, {});
  L.total.assign(S.m + 1, 0);
  int n = S.K.count(d);
  for (int i = 0; i <= S.m; ++i) L.off[i].resize(n, 0);
  for (int pos = 0; pos < n; ++pos) {
    auto dims = S.dims_of(S.K.by_dim[d][pos]);
    for (int i = 0; i <= S.m; ++i) {
      L.off[i][pos] = L.total[i];
      L.total[i] += dims[i];
    }
  }
  return L;
}

void put_block(const fp_field& F, dense_mat& M, int r0, int c0, const dense_mat& B,
               int32_t sgn) {
  for (int r = 0; r < B.rows; ++r)
    for (int c = 0; c < B.cols; ++c)
      if (B.at(r, c) != 0) M.at(r0 + r, c0 + c) = F.mul(F.norm(sgn), B.at(r, c));
}

// signed restriction blocks of the coboundary from dimension d-1 into d
std::vector<dense_mat> coboundary_mats(const sheaf_instance& S, int d,
                                       const level_layout& from, const level_layout& to) {
  fp_field F(S.p);
  std::vector<dense_mat> out;
  for (int i = 0; i <= S.m; ++i) out.emplace_back(to.total[i], from.total[i]);
  if (d < 1 || d > S.K.top_dim()) return out;
  for (int pos = 0; pos < S.K.count(d); ++pos) {
    const auto& tau = S.K.by_dim[d][pos];
    for (std::size_t j = 0; j < tau.size(); ++j) {
      std::vector<int> sigma;
      for (std::size_t q = 0; q < tau.size(); ++q)
        if (q != j) sigma.push_back(tau[q]);
      int spos = S.K.index.at(sigma).second;
      int32_t sgn = (j % 2 == 0) ? 1 : -1;
      for (int i = 0; i <= S.m; ++i)
        put_block(F, out[i], to.off[i][pos], from.off[i][spos], S.res_of(sigma, tau, i), sgn);
    }
  }
  return out;
}

std::vector<dense_mat> internal_mats(const sheaf_instance& S, int d,
                                     const level_layout& L) {
  fp_field F(S.p);
  std::vector<dense_mat> out;
  for (int i = 0; i < S.m; ++i) out.emplace_back(L.total[i + 1], L.total[i]);
  for (int pos = 0; pos < S.K.count(d); ++pos) {
    const auto& s = S.K.by_dim[d][pos];
    for (int i = 0; i < S.m; ++i)
      put_block(F, out[i], L.off[i + 1][pos], L.off[i][pos], S.step_of(s, i), 1);
  }
  return out;
}

}  // namespace

raw_complex build_cochain_raw(const sheaf_instance& S, int k) {
  level_layout lo = layout_level(S, k - 1);
  level_layout mid = layout_level(S, k);
  level_layout hi = layout_level(S, k + 1);
  raw_complex raw;
  raw.F = fp_field(S.p);
  raw.m = S.m;
  raw.dimsL = lo.total;
  raw.dimsM = mid.total;
  raw.dimsN = hi.total;
  raw.D = internal_mats(S, k - 1, lo);
  raw.A = internal_mats(S, k, mid);
  raw.B = internal_mats(S, k + 1, hi);
  raw.E = coboundary_mats(S, k, lo, mid);
  raw.C = coboundary_mats(S, k + 1, mid, hi);
  return raw;
}

barcode persistent_sheaf_cohomology(const sheaf_instance& S, int k, bool keep_empty) {
  S.check();
  raw_complex raw = build_cochain_raw(S, k);
  raw.check();
  auto [f0, g0] = pres_complex(raw);
  auto [f1, g1] = complexify_pair(f0, g0);
  return pres_hom(f1, g1, k, keep_empty);
}

sheaf_local local_presentations(const sheaf_instance& S, int threads,
                                const std::vector<int>& only_dims) {
  S.check();
  fp_field F(S.p);
  auto wanted = [&](int d) {
    if (only_dims.empty()) return true;
    return std::find(only_dims.begin(), only_dims.end(), d) != only_dims.end();
  };

  std::vector<std::vector<int>> simps;
  for (int d = 0; d <= S.K.top_dim(); ++d)
    if (wanted(d))
      for (const auto& s : S.K.by_dim[d]) simps.push_back(s);
  std::map<std::vector<int>, int> simp_pos;
  for (int i = 0; i < int(simps.size()); ++i) simp_pos[simps[i]] = i;

  std::vector<module_events> events(simps.size());
  parallel_for(int(simps.size()), threads, [&](int i) {
    std::vector<dense_mat> mats;
    for (int t = 0; t < S.m; ++t) mats.push_back(S.step_of(simps[i], t));
    events[i] = reduce_module(F, S.dims_of(simps[i]), mats);
  });

  std::vector<std::pair<int, int>> pairs;  // (face index, cofacet index)
  for (int i = 0; i < int(simps.size()); ++i) {
    const auto& tau = simps[i];
    if (tau.size() < 2 || !wanted(int(tau.size()) - 2)) continue;
    for (std::size_t j = 0; j < tau.size(); ++j) {
      std::vector<int> sigma;
      for (std::size_t q = 0; q < tau.size(); ++q)
        if (q != j) sigma.push_back(tau[q]);
      auto it = simp_pos.find(sigma);
      if (it != simp_pos.end()) pairs.push_back({it->second, i});
    }
  }
  std::vector<annotated_matrix> mors(pairs.size());
  parallel_for(int(pairs.size()), threads, [&](int i) {
    auto [fi, ci] = pairs[i];
    std::vector<dense_mat> family;
    for (int t = 0; t <= S.m; ++t) family.push_back(S.res_of(simps[fi], simps[ci], t));
    mors[i] = present_with_events(F, events[fi], events[ci], family);
  });

  sheaf_local out;
  for (int i = 0; i < int(simps.size()); ++i)
    out.gens[simps[i]] = generator_bars(events[i]);
  for (int i = 0; i < int(pairs.size()); ++i)
    out.mor[{simps[pairs[i].first], simps[pairs[i].second]}] = std::move(mors[i]);
  return out;
}

namespace {

// stacks the presented codim-1 morphism blocks from dimension d-1 into d
annotated_matrix assemble_level_map(const sheaf_instance& S, const sheaf_local& loc,
                                    int d) {
  fp_field F(S.p);
  std::vector<bar> row_ann, col_ann;
  std::map<std::vector<int>, int> row_off, col_off;
  for (int pos = 0; pos < S.K.count(d); ++pos) {
    const auto& tau = S.K.by_dim[d][pos];
    row_off[tau] = int(row_ann.size());
    const auto& g = loc.gens.at(tau);
    row_ann.insert(row_ann.end(), g.begin(), g.end());
  }
  for (int pos = 0; pos < S.K.count(d - 1); ++pos) {
    const auto& sigma = S.K.by_dim[d - 1][pos];
    col_off[sigma] = int(col_ann.size());
    const auto& g = loc.gens.at(sigma);
    col_ann.insert(col_ann.end(), g.begin(), g.end());
  }
  annotated_matrix out(S.p, std::move(row_ann), std::move(col_ann));
  if (d < 1 || d > S.K.top_dim()) return out;
  for (int pos = 0; pos < S.K.count(d); ++pos) {
    const auto& tau = S.K.by_dim[d][pos];
    for (std::size_t j = 0; j < tau.size(); ++j) {
      std::vector<int> sigma;
      for (std::size_t q = 0; q < tau.size(); ++q)
        if (q != j) sigma.push_back(tau[q]);
      const annotated_matrix& blk = loc.mor.at({sigma, tau});
      int32_t sgn = F.norm(j % 2 == 0 ? 1 : -1);
      int r0 = row_off.at(tau), c0 = col_off.at(sigma);
      for (int c = 0; c < blk.ncols(); ++c)
        for (const auto& e : blk.cols[c])
          out.cols[c0 + c].push_back({r0 + e.row, F.mul(sgn, e.val)});
    }
  }
  for (auto& col : out.cols)
    std::sort(col.begin(), col.end(),
              [](const sparse_entry& x, const sparse_entry& y) { return x.row < y.row; });
  return out;
}

}  // namespace

barcode sheaf_cohomology_local(const sheaf_instance& S, int k, int threads,
                               bool keep_empty) {
  std::vector<int> dims;
  for (int d = k - 1; d <= k + 1; ++d)
    if (0 <= d && d <= S.K.top_dim()) dims.push_back(d);
  if (dims.empty()) {
    S.check();
    return {};
  }
  sheaf_local loc = local_presentations(S, threads, dims);
  annotated_matrix f0 = assemble_level_map(S, loc, k);
  annotated_matrix g0 = assemble_level_map(S, loc, k + 1);
  auto [f1, g1] = complexify_pair(f0, g0);
  return pres_hom(f1, g1, k, keep_empty);
}

}  // namespace annmat
