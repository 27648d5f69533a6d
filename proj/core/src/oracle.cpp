#include "annmat/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "annmat/errors.hpp"
#include "annmat/sparse.hpp"

namespace annmat {

barcode pointwise_barcode(const fp_field& F, const pointwise_module& M, int degree) {
  int m = int(M.dims.size()) - 1;
  if (m < 0 || int(M.maps.size()) != m)
    throw invariant_error("pointwise module needs one map per consecutive index pair");
  for (int i = 0; i < m; ++i)
    if (M.maps[i].rows != M.dims[i + 1] || M.maps[i].cols != M.dims[i])
      throw invariant_error("pointwise module map at index " + std::to_string(i) +
                            " has the wrong shape");
  // r[i][j] = rank of the composite map index i -> j
  std::vector<std::vector<int>> r(m + 1, std::vector<int>(m + 1, 0));
  for (int i = 0; i <= m; ++i) {
    dense_mat P = dense_mat::identity(M.dims[i]);
    r[i][i] = M.dims[i];
    for (int j = i + 1; j <= m; ++j) {
      P = mul(F, M.maps[j - 1], P);
      r[i][j] = rank(F, P);
    }
  }
  auto R = [&](int i, int j) { return i < 0 ? 0 : r[i][j]; };
  barcode out;
  for (int i = 0; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      int mult = R(i, j - 1) - R(i, j) - R(i - 1, j - 1) + R(i - 1, j);
      for (int q = 0; q < mult; ++q) out.add(degree, {grade_t(i), grade_t(j)});
    }
    int inf = R(i, m) - R(i - 1, m);
    for (int q = 0; q < inf; ++q) out.add(degree, {grade_t(i), kInf});
  }
  out.canonicalize();
  return out;
}

namespace {

std::vector<int32_t> column_of(const dense_mat& A, int c) {
  std::vector<int32_t> v(A.rows);
  for (int r = 0; r < A.rows; ++r) v[r] = A.at(r, c);
  return v;
}

dense_mat append_column(const dense_mat& A, const std::vector<int32_t>& v) {
  dense_mat B(A.rows, A.cols + 1);
  for (int r = 0; r < A.rows; ++r) {
    for (int c = 0; c < A.cols; ++c) B.at(r, c) = A.at(r, c);
    B.at(r, A.cols) = v[r];
  }
  return B;
}

std::vector<int32_t> apply(const fp_field& F, const dense_mat& A,
                           const std::vector<int32_t>& v) {
  std::vector<int32_t> w(A.rows, 0);
  for (int r = 0; r < A.rows; ++r) {
    int64_t acc = 0;
    for (int c = 0; c < A.cols; ++c) acc += int64_t(A.at(r, c)) * v[c];
    w[r] = F.norm(acc);
  }
  return w;
}

}  // namespace

barcode pointwise_homology_barcode(const raw_complex& raw, int degree) {
  raw.check();
  const fp_field& F = raw.F;
  int m = raw.m;
  // per index: the image basis of the incoming map and homology representatives
  std::vector<dense_mat> im_basis(m + 1), reps(m + 1);
  for (int i = 0; i <= m; ++i) {
    dense_mat ker = kernel_basis(F, raw.C[i]);
    col_space im(F, raw.E[i]);
    dense_mat X = im.basis;
    std::vector<std::vector<int32_t>> chosen;
    for (int c = 0; c < ker.cols; ++c) {
      auto v = column_of(ker, c);
      col_space cur(F, X);
      if (!cur.contains(v)) {
        X = append_column(X, v);
        chosen.push_back(std::move(v));
      }
    }
    im_basis[i] = im.basis;
    reps[i] = dense_mat(raw.dimsM[i], int(chosen.size()));
    for (int c = 0; c < int(chosen.size()); ++c)
      for (int r = 0; r < raw.dimsM[i]; ++r) reps[i].at(r, c) = chosen[c][r];
  }
  pointwise_module H;
  for (int i = 0; i <= m; ++i) H.dims.push_back(reps[i].cols);
  for (int i = 0; i < m; ++i) {
    // coordinates of each pushed representative over [image | representatives]
    dense_mat S(raw.dimsM[i + 1], im_basis[i + 1].cols + reps[i + 1].cols);
    for (int r = 0; r < S.rows; ++r) {
      for (int c = 0; c < im_basis[i + 1].cols; ++c) S.at(r, c) = im_basis[i + 1].at(r, c);
      for (int c = 0; c < reps[i + 1].cols; ++c)
        S.at(r, im_basis[i + 1].cols + c) = reps[i + 1].at(r, c);
    }
    dense_mat T(reps[i + 1].cols, reps[i].cols);
    for (int j = 0; j < reps[i].cols; ++j) {
      auto w = apply(F, raw.A[i], column_of(reps[i], j));
      auto x = solve(F, S, w);
      if (!x) throw invariant_error("cycle fails to stay a cycle across index " +
                                    std::to_string(i));
      for (int q = 0; q < reps[i + 1].cols; ++q)
        T.at(q, j) = (*x)[im_basis[i + 1].cols + q];
    }
    H.maps.push_back(T);
  }
  return pointwise_barcode(F, H, degree);
}

barcode classical_persistence(const tower_script& s) {
  check_script(s);
  fp_field F(s.p);
  std::vector<std::vector<int>> simp;
  std::vector<grade_t> birth;
  std::map<std::vector<int>, int> pos;
  for (const auto& ev : s.events) {
    if (!ev.include)
      throw invariant_error("classical reduction needs an inclusion-only script");
    if (pos.count(ev.verts))
      throw invariant_error("simplex included twice in a filtration");
    pos[ev.verts] = int(simp.size());
    simp.push_back(ev.verts);
    birth.push_back(ev.t);
  }
  int n = int(simp.size());
  std::vector<sparse_vec> cols(n);
  for (int c = 0; c < n; ++c) {
    const auto& sx = simp[c];
    if (sx.size() == 1) continue;
    sparse_vec col;
    for (std::size_t j = 0; j < sx.size(); ++j) {
      std::vector<int> face;
      for (std::size_t q = 0; q < sx.size(); ++q)
        if (q != j) face.push_back(sx[q]);
      auto it = pos.find(face);
      if (it == pos.end() || it->second > c)
        throw invariant_error("face missing when its cofacet arrives");
      col.push_back({it->second, j % 2 == 0 ? 1 : F.neg(1)});
    }
    std::sort(col.begin(), col.end(),
              [](const sparse_entry& a, const sparse_entry& b) { return a.row < b.row; });
    cols[c] = std::move(col);
  }
  std::vector<int> owner(n, -1), death(n, -1);
  for (int c = 0; c < n; ++c) {
    auto& col = cols[c];
    while (!col.empty()) {
      int l = low(col);
      if (owner[l] < 0) break;
      int32_t lam = F.neg(F.div(get_entry(col, l), get_entry(cols[owner[l]], l)));
      axpy(F, col, lam, cols[owner[l]]);
    }
    if (!col.empty()) {
      owner[low(col)] = c;
      death[low(col)] = c;
    }
  }
  barcode out;
  for (int i = 0; i < n; ++i) {
    if (!cols[i].empty()) continue;  // killer columns carry no class
    int deg = int(simp[i].size()) - 1;
    if (death[i] >= 0)
      out.add(deg, {birth[i], birth[death[i]]});
    else
      out.add(deg, {birth[i], kInf});
  }
  out.canonicalize();
  return out;
}

namespace {

// the simplicial image of a vertex list after all collapses past event e
std::vector<int> final_after(const tower_script& s, std::vector<int> verts, int e) {
  for (int q = e + 1; q < int(s.events.size()); ++q) {
    const auto& ev = s.events[q];
    if (ev.include) continue;
    for (auto& v : verts)
      if (v == ev.from) v = ev.to;
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

struct chain_layout {
  std::vector<std::vector<int>> simps;   // the d-simplices at this index, lex
  std::vector<std::vector<int>> finals;  // their end-complex images
  std::map<std::vector<int>, int> pos;   // simplex -> slot
  std::vector<int> off;                  // block offsets
  std::vector<int> width;
  int total = 0;
};

}  // namespace

barcode materialized_cosheaf_homology(const cosheaf_instance& inst,
                                      const std::vector<int>& degrees) {
  check_cosheaf(inst);
  const tower_script& s = inst.script;
  fp_field F(s.p);
  int E = int(s.events.size());
  if (E == 0 || degrees.empty()) return {};
  std::vector<std::vector<std::vector<int>>> snap(E);
  {
    std::set<std::vector<int>> cur;
    for (int e = 0; e < E; ++e) {
      const auto& ev = s.events[e];
      if (ev.include) {
        if (!cur.insert(ev.verts).second)
          throw invariant_error("simplex included while still present");
      } else {
        std::set<std::vector<int>> nxt;
        for (auto sx : cur) {
          for (auto& v : sx)
            if (v == ev.from) v = ev.to;
          std::sort(sx.begin(), sx.end());
          sx.erase(std::unique(sx.begin(), sx.end()), sx.end());
          nxt.insert(std::move(sx));
        }
        cur = std::move(nxt);
      }
      snap[e].assign(cur.begin(), cur.end());
    }
  }
  int max_deg = *std::max_element(degrees.begin(), degrees.end());
  // layouts per index for every dimension up to max_deg + 1
  std::vector<std::vector<chain_layout>> lay(E);
  for (int e = 0; e < E; ++e) {
    lay[e].resize(max_deg + 2);
    for (const auto& sx : snap[e]) {
      int d = int(sx.size()) - 1;
      if (d > max_deg + 1) continue;
      lay[e][d].simps.push_back(sx);
    }
    for (int d = 0; d <= max_deg + 1; ++d) {
      auto& L = lay[e][d];
      for (int i = 0; i < int(L.simps.size()); ++i) {
        L.pos[L.simps[i]] = i;
        L.finals.push_back(final_after(s, L.simps[i], e));
        int w = inst.data.stalk.at(L.finals.back());
        L.off.push_back(L.total);
        L.width.push_back(w);
        L.total += w;
      }
    }
  }
  ext_closure EC(F, &inst.data);
  // step matrix for dimension d from index e to e+1
  auto step_mat = [&](int d, int e) {
    const chain_layout& a = lay[e][d];
    const chain_layout& b = lay[e + 1][d];
    dense_mat M(b.total, a.total);
    const auto& ev = s.events[e + 1];
    for (int i = 0; i < int(a.simps.size()); ++i) {
      std::vector<int> img = a.simps[i];
      int32_t sgn = 1;
      if (!ev.include) {
        auto it = std::find(img.begin(), img.end(), ev.from);
        if (it != img.end()) {
          if (std::find(img.begin(), img.end(), ev.to) != img.end()) continue;  // degenerate
          int ia = int(it - img.begin());
          *it = ev.to;
          std::sort(img.begin(), img.end());
          int ib = int(std::find(img.begin(), img.end(), ev.to) - img.begin());
          sgn = (ia - ib) % 2 == 0 ? 1 : -1;
        }
      }
      int j = b.pos.at(img);
      for (int q = 0; q < a.width[i]; ++q)
        M.at(b.off[j] + q, a.off[i] + q) = F.norm(sgn);
    }
    return M;
  };
  // boundary matrix from dimension d to d-1 at index e
  auto bnd_mat = [&](int d, int e) {
    const chain_layout& hi = lay[e][d];
    const chain_layout& lo =
        d >= 1 ? lay[e][d - 1] : chain_layout{};
    dense_mat M(d >= 1 ? lo.total : 0, hi.total);
    if (d < 1) return M;
    for (int i = 0; i < int(hi.simps.size()); ++i) {
      const auto& sx = hi.simps[i];
      for (std::size_t j = 0; j < sx.size(); ++j) {
        std::vector<int> face;
        for (std::size_t q = 0; q < sx.size(); ++q)
          if (q != j) face.push_back(sx[q]);
        int fi = lo.pos.at(face);
        const dense_mat& blk = EC.get(lo.finals[fi], hi.finals[i]);
        int32_t sgn = j % 2 == 0 ? 1 : -1;
        for (int r = 0; r < blk.rows; ++r)
          for (int c = 0; c < blk.cols; ++c)
            if (blk.at(r, c) != 0)
              M.at(lo.off[fi] + r, hi.off[i] + c) =
                  F.add(M.at(lo.off[fi] + r, hi.off[i] + c), F.mul(F.norm(sgn), blk.at(r, c)));
      }
    }
    return M;
  };
  barcode out;
  std::vector<int> want(degrees.begin(), degrees.end());
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());
  for (int k : want) {
    raw_complex raw;
    raw.F = F;
    raw.m = E - 1;
    for (int e = 0; e < E; ++e) {
      raw.dimsL.push_back(lay[e][k + 1].total);
      raw.dimsM.push_back(lay[e][k].total);
      raw.dimsN.push_back(k >= 1 ? lay[e][k - 1].total : 0);
      raw.E.push_back(bnd_mat(k + 1, e));
      raw.C.push_back(bnd_mat(k, e));
      if (e + 1 < E) {
        raw.D.push_back(step_mat(k + 1, e));
        raw.A.push_back(step_mat(k, e));
        raw.B.push_back(k >= 1 ? step_mat(k - 1, e)
                                : dense_mat(0, 0));
      }
    }
    raw.check();
    barcode part = pointwise_homology_barcode(raw, k);
    for (const auto& db : part.bars) out.bars.push_back(db);
  }
  out.canonicalize();
  return out;
}

barcode materialized_tower_homology(const tower_script& s,
                                    const std::vector<int>& degrees) {
  cosheaf_instance ci;
  ci.script = s;
  auto end = final_complex(s);
  for (const auto& sx : end) ci.data.stalk[sx] = 1;
  dense_mat one(1, 1);
  one.at(0, 0) = 1;
  for (const auto& cof : end) {
    if (cof.size() < 2) continue;
    for (std::size_t j = 0; j < cof.size(); ++j) {
      std::vector<int> face;
      for (std::size_t q = 0; q < cof.size(); ++q)
        if (q != j) face.push_back(cof[q]);
      ci.data.ext[{face, cof}] = one;
    }
  }
  return materialized_cosheaf_homology(ci, degrees);
}

barcode poset_limit_barcode(const poset_sheaf& S) {
  S.check();
  fp_field F(S.p);
  int n = S.X.size(), m = S.m;
  std::vector<dense_mat> kerb(m + 1);
  std::vector<std::vector<int>> off(m + 1, std::vector<int>(n, 0));
  std::vector<int> tot(m + 1, 0);
  for (int i = 0; i <= m; ++i) {
    for (int e = 0; e < n; ++e) {
      off[i][e] = tot[i];
      tot[i] += S.stalk[e][i];
    }
    int crows = 0;
    for (auto [lo, hi] : S.X.covers) crows += S.stalk[hi][i];
    dense_mat A(crows, tot[i]);
    int r0 = 0;
    for (auto [lo, hi] : S.X.covers) {
      dense_mat R = S.res_of(lo, hi, i);
      for (int r = 0; r < R.rows; ++r)
        for (int c = 0; c < R.cols; ++c) A.at(r0 + r, off[i][lo] + c) = F.neg(R.at(r, c));
      for (int d = 0; d < S.stalk[hi][i]; ++d) A.at(r0 + d, off[i][hi] + d) = 1;
      r0 += S.stalk[hi][i];
    }
    kerb[i] = kernel_basis(F, A);
  }
  pointwise_module H;
  for (int i = 0; i <= m; ++i) H.dims.push_back(kerb[i].cols);
  for (int i = 0; i < m; ++i) {
    dense_mat T(kerb[i + 1].cols, kerb[i].cols);
    for (int j = 0; j < kerb[i].cols; ++j) {
      std::vector<int32_t> w(tot[i + 1], 0);
      for (int e = 0; e < n; ++e) {
        const dense_mat& st = S.step_of(e, i);
        for (int r = 0; r < st.rows; ++r) {
          int64_t acc = 0;
          for (int c = 0; c < st.cols; ++c)
            acc += int64_t(st.at(r, c)) * kerb[i].at(off[i][e] + c, j);
          w[off[i + 1][e] + r] = F.norm(acc);
        }
      }
      auto x = solve(F, kerb[i + 1], w);
      if (!x) throw invariant_error("section fails to stay a section across index " +
                                    std::to_string(i));
      for (int q = 0; q < kerb[i + 1].cols; ++q) T.at(q, j) = (*x)[q];
    }
    H.maps.push_back(T);
  }
  return pointwise_barcode(F, H, 0);
}

}  // namespace annmat
