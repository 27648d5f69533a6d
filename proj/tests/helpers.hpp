#pragma once

// Deterministic random generators for test inputs.  Modules are built as sums
// of interval summands (so expected barcodes are known by construction) and
// then conjugated by random invertible change-of-basis matrices at every
// index, which hides the block structure from the code under test while
// preserving naturality.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "annmat/annotated.hpp"
#include "annmat/barcode.hpp"
#include "annmat/cosheaf.hpp"
#include "annmat/dense.hpp"
#include "annmat/field.hpp"
#include "annmat/poset.hpp"
#include "annmat/raw.hpp"
#include "annmat/sheaf.hpp"
#include "annmat/tower.hpp"

namespace testgen {

using namespace annmat;
using rng_t = std::mt19937;

inline int uniform(rng_t& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline int32_t rand_scalar(rng_t& g, const fp_field& F) {
  return int32_t(uniform(g, 0, F.p - 1));
}

inline int32_t rand_unit(rng_t& g, const fp_field& F) {
  return int32_t(uniform(g, 1, F.p - 1));
}

inline dense_mat rand_mat(rng_t& g, const fp_field& F, int rows, int cols) {
  dense_mat x(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) x.at(r, c) = rand_scalar(g, F);
  return x;
}

inline dense_mat rand_invertible(rng_t& g, const fp_field& F, int n) {
  for (;;) {
    dense_mat x = rand_mat(g, F, n, n);
    if (rank(F, x) == n) return x;
  }
}

inline dense_mat inverse_of(const fp_field& F, const dense_mat& a) {
  dense_mat out(a.rows, a.rows);
  for (int j = 0; j < a.rows; ++j) {
    std::vector<int32_t> e(a.rows, 0);
    e[j] = 1;
    auto x = solve(F, a, e);
    for (int r = 0; r < a.rows; ++r) out.at(r, j) = (*x)[r];
  }
  return out;
}

// A persistence module given as a direct sum of intervals over indices 0..m.
// Death kInf means the summand survives past the window.
struct interval_module {
  int m = 0;
  std::vector<bar> bars;

  int dims(int i) const {
    int d = 0;
    for (const bar& b : bars) d += b.contains(i) ? 1 : 0;
    return d;
  }
  // position of summand s at index i, or -1 when dead there
  int pos(int i, int s) const {
    if (!bars[s].contains(i)) return -1;
    int p = 0;
    for (int t = 0; t < s; ++t) p += bars[t].contains(i) ? 1 : 0;
    return p;
  }
  std::vector<dense_mat> steps() const {
    std::vector<dense_mat> out;
    for (int i = 0; i < m; ++i) {
      dense_mat s(dims(i + 1), dims(i));
      for (int b = 0; b < int(bars.size()); ++b)
        if (pos(i, b) >= 0 && pos(i + 1, b) >= 0) s.at(pos(i + 1, b), pos(i, b)) = 1;
      out.push_back(std::move(s));
    }
    return out;
  }
  barcode expected(int degree = 0) const {
    barcode bc;
    for (const bar& b : bars) bc.add(degree, b);
    bc.canonicalize();
    return bc;
  }
};

inline bar rand_bar(rng_t& g, int m) {
  grade_t b = uniform(g, 0, m);
  int pick = uniform(g, int(b) + 1, m + 1);  // m+1 stands for "never dies"
  return bar{b, pick > m ? kInf : grade_t(pick)};
}

inline interval_module rand_interval_module(rng_t& g, int m, int max_bars) {
  interval_module M;
  M.m = m;
  int n = uniform(g, 0, max_bars);
  for (int s = 0; s < n; ++s) M.bars.push_back(rand_bar(g, m));
  return M;
}

// Nonzero natural maps I[b,d) -> I[b',d') exist exactly when b' <= b < d' <= d.
inline bool hom_allowed(const bar& dom, const bar& cod) {
  return cod.birth <= dom.birth && dom.birth < cod.death && cod.death <= dom.death;
}

// Natural transformation dom -> cod in block form: for each allowed summand
// pair an identity-on-overlap block scaled by a random coefficient.
inline std::vector<dense_mat> rand_nat_map(rng_t& g, const fp_field& F,
                                           const interval_module& dom,
                                           const interval_module& cod) {
  std::vector<std::vector<int32_t>> lam(cod.bars.size(),
                                        std::vector<int32_t>(dom.bars.size(), 0));
  for (size_t t = 0; t < cod.bars.size(); ++t)
    for (size_t s = 0; s < dom.bars.size(); ++s)
      if (hom_allowed(dom.bars[s], cod.bars[t])) lam[t][s] = rand_scalar(g, F);
  std::vector<dense_mat> C;
  for (int i = 0; i <= dom.m; ++i) {
    dense_mat x(cod.dims(i), dom.dims(i));
    for (size_t t = 0; t < cod.bars.size(); ++t)
      for (size_t s = 0; s < dom.bars.size(); ++s)
        if (lam[t][s] != 0 && cod.pos(i, int(t)) >= 0 && dom.pos(i, int(s)) >= 0)
          x.at(cod.pos(i, int(t)), dom.pos(i, int(s))) = lam[t][s];
    C.push_back(std::move(x));
  }
  return C;
}

// Random change of basis at every index: replaces steps S_i by G_{i+1} S_i G_i^-1
// and returns the basis matrices for use on adjacent maps.
struct conjugation {
  std::vector<dense_mat> G, Ginv;
};

inline conjugation rand_conjugation(rng_t& g, const fp_field& F,
                                    const std::vector<int>& dims) {
  conjugation out;
  for (int d : dims) {
    dense_mat x = rand_invertible(g, F, d);
    out.Ginv.push_back(inverse_of(F, x));
    out.G.push_back(std::move(x));
  }
  return out;
}

struct morphism_case {
  raw_module_morphism raw;
  barcode dom_bars, cod_bars;  // honest barcodes of the two sides
};

inline morphism_case rand_raw_morphism(rng_t& g, int32_t p, int max_m, int max_bars) {
  fp_field F{p};
  int m = uniform(g, 1, max_m);
  interval_module M = rand_interval_module(g, m, max_bars);
  interval_module N = rand_interval_module(g, m, max_bars);
  std::vector<dense_mat> C = rand_nat_map(g, F, M, N);

  morphism_case out;
  out.raw.F = F;
  out.raw.m = m;
  for (int i = 0; i <= m; ++i) {
    out.raw.dimsM.push_back(M.dims(i));
    out.raw.dimsN.push_back(N.dims(i));
  }
  out.raw.A = M.steps();
  out.raw.B = N.steps();
  out.raw.C = std::move(C);

  conjugation cm = rand_conjugation(g, F, out.raw.dimsM);
  conjugation cn = rand_conjugation(g, F, out.raw.dimsN);
  for (int i = 0; i < m; ++i) {
    out.raw.A[i] = mul(F, cm.G[i + 1], mul(F, out.raw.A[i], cm.Ginv[i]));
    out.raw.B[i] = mul(F, cn.G[i + 1], mul(F, out.raw.B[i], cn.Ginv[i]));
  }
  for (int i = 0; i <= m; ++i)
    out.raw.C[i] = mul(F, cn.G[i], mul(F, out.raw.C[i], cm.Ginv[i]));

  out.dom_bars = M.expected();
  out.cod_bars = N.expected();
  return out;
}

// Random three-term complex L -> M -> N with zero composite: each middle
// summand plays at most one role (target of the first map or source of the
// second), which kills every composite path blockwise.
inline raw_complex rand_raw_complex(rng_t& g, int32_t p, int max_m, int max_bars) {
  fp_field F{p};
  int m = uniform(g, 1, max_m);
  interval_module L = rand_interval_module(g, m, max_bars);
  interval_module M = rand_interval_module(g, m, max_bars);
  interval_module N = rand_interval_module(g, m, max_bars);

  std::vector<int> role(M.bars.size());  // 0 = free, 1 = image side, 2 = coimage side
  for (auto& r : role) r = uniform(g, 0, 2);

  std::vector<dense_mat> E = rand_nat_map(g, F, L, M);
  std::vector<dense_mat> C = rand_nat_map(g, F, M, N);
  for (int i = 0; i <= m; ++i) {
    for (size_t t = 0; t < M.bars.size(); ++t) {
      int pt = M.pos(i, int(t));
      if (pt < 0) continue;
      if (role[t] != 1)
        for (int c = 0; c < E[i].cols; ++c) E[i].at(pt, c) = 0;
      if (role[t] != 2)
        for (int r = 0; r < C[i].rows; ++r) C[i].at(r, pt) = 0;
    }
  }

  raw_complex raw;
  raw.F = F;
  raw.m = m;
  for (int i = 0; i <= m; ++i) {
    raw.dimsL.push_back(L.dims(i));
    raw.dimsM.push_back(M.dims(i));
    raw.dimsN.push_back(N.dims(i));
  }
  raw.D = L.steps();
  raw.A = M.steps();
  raw.B = N.steps();
  raw.E = std::move(E);
  raw.C = std::move(C);

  conjugation cl = rand_conjugation(g, F, raw.dimsL);
  conjugation cm = rand_conjugation(g, F, raw.dimsM);
  conjugation cn = rand_conjugation(g, F, raw.dimsN);
  for (int i = 0; i < m; ++i) {
    raw.D[i] = mul(F, cl.G[i + 1], mul(F, raw.D[i], cl.Ginv[i]));
    raw.A[i] = mul(F, cm.G[i + 1], mul(F, raw.A[i], cm.Ginv[i]));
    raw.B[i] = mul(F, cn.G[i + 1], mul(F, raw.B[i], cn.Ginv[i]));
  }
  for (int i = 0; i <= m; ++i) {
    raw.E[i] = mul(F, cm.G[i], mul(F, raw.E[i], cl.Ginv[i]));
    raw.C[i] = mul(F, cn.G[i], mul(F, raw.C[i], cm.Ginv[i]));
  }
  return raw;
}

// Random filtration script: single-simplex inclusions only, faces first.
inline tower_script rand_filtration(rng_t& g, int32_t p, int max_simplices,
                                    int max_verts = 8) {
  tower_script s;
  s.p = p;
  std::set<std::vector<int>> have;
  std::vector<int> verts;
  int n = uniform(g, 1, max_simplices);
  for (int e = 0; e < n; ++e) {
    std::vector<std::vector<int>> options;
    if (int(verts.size()) < max_verts) options.push_back({int(verts.size())});
    for (size_t a = 0; a < verts.size(); ++a)
      for (size_t b = a + 1; b < verts.size(); ++b) {
        std::vector<int> ed{verts[a], verts[b]};
        std::sort(ed.begin(), ed.end());
        if (!have.count(ed)) options.push_back(ed);
        for (size_t c = b + 1; c < verts.size(); ++c) {
          std::vector<int> tr{verts[a], verts[b], verts[c]};
          std::sort(tr.begin(), tr.end());
          if (have.count(tr)) continue;
          bool ok = true;
          for (int j = 0; j < 3; ++j) {
            std::vector<int> fc;
            for (int q = 0; q < 3; ++q)
              if (q != j) fc.push_back(tr[q]);
            if (!have.count(fc)) ok = false;
          }
          if (ok) options.push_back(tr);
        }
      }
    if (options.empty()) break;
    std::vector<int> pick = options[uniform(g, 0, int(options.size()) - 1)];
    if (pick.size() == 1 && pick[0] == int(verts.size())) verts.push_back(pick[0]);
    have.insert(pick);
    tower_event ev;
    ev.t = grade_t(s.events.size());
    ev.include = true;
    ev.verts = pick;
    s.events.push_back(ev);
  }
  return s;
}

// Random tower: a filtration with vertex collapses appended and interleaved.
inline tower_script rand_tower(rng_t& g, int32_t p, int max_incl, int max_coll) {
  tower_script s = rand_filtration(g, p, max_incl);
  std::set<int> alive;
  for (const tower_event& ev : s.events)
    if (ev.verts.size() == 1) alive.insert(ev.verts[0]);
  int nc = uniform(g, 0, max_coll);
  for (int c = 0; c < nc && alive.size() >= 2; ++c) {
    std::vector<int> pool(alive.begin(), alive.end());
    int from = pool[uniform(g, 0, int(pool.size()) - 1)];
    int to = from;
    while (to == from) to = pool[uniform(g, 0, int(pool.size()) - 1)];
    tower_event ev;
    ev.t = grade_t(s.events.size());
    ev.include = false;
    ev.from = from;
    ev.to = to;
    s.events.push_back(ev);
    alive.erase(from);
  }
  return s;
}

// Random cosheaf over a random tower: stalk dimension d everywhere, extension
// blocks u(face) * u(cofacet)^-1 * X for one fixed d-by-d matrix X, so all
// square faces commute regardless of X.
inline cosheaf_instance rand_cosheaf(rng_t& g, int32_t p, int max_incl, int max_coll,
                                     int max_d) {
  cosheaf_instance inst;
  inst.script = rand_tower(g, p, max_incl, max_coll);
  fp_field F{p};
  int d = uniform(g, 1, max_d);
  dense_mat X = rand_mat(g, F, d, d);
  std::vector<std::vector<int>> fc = final_complex(inst.script);
  std::map<std::vector<int>, int32_t> u;
  for (const auto& sx : fc) {
    inst.data.stalk[sx] = d;
    u[sx] = rand_unit(g, F);
  }
  for (const auto& cof : fc) {
    if (cof.size() < 2) continue;
    for (size_t j = 0; j < cof.size(); ++j) {
      std::vector<int> face;
      for (size_t q = 0; q < cof.size(); ++q)
        if (q != j) face.push_back(cof[q]);
      int32_t coef = F.mul(u[face], F.inv(u[cof]));
      dense_mat blk(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) blk.at(r, c) = F.mul(coef, X.at(r, c));
      inst.data.ext[{face, cof}] = std::move(blk);
    }
  }
  return inst;
}

// Random sheaf over a small complex: a sum of summands, each supported on the
// up-set of one simplex over one grade interval, with identity internal maps;
// conjugated per simplex and grade.
inline sheaf_instance rand_sheaf(rng_t& g, int32_t p, int m, int max_summands) {
  sheaf_instance S;
  S.p = p;
  S.m = m;
  fp_field F{p};
  int nv = uniform(g, 2, 4);
  std::vector<std::vector<int>> maximal;
  if (nv >= 3 && uniform(g, 0, 1)) maximal.push_back({0, 1, 2});
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b)
      if (uniform(g, 0, 1)) maximal.push_back({a, b});
  for (int a = 0; a < nv; ++a) maximal.push_back({a});
  S.K = simplicial_complex::from_maximal(maximal);

  std::vector<std::vector<int>> all;
  for (const auto& lev : S.K.by_dim)
    for (const auto& sx : lev) all.push_back(sx);

  int ns = uniform(g, 1, max_summands);
  std::vector<std::pair<std::vector<int>, bar>> summands;
  for (int s = 0; s < ns; ++s)
    summands.push_back({all[uniform(g, 0, int(all.size()) - 1)], rand_bar(g, m)});

  auto supports = [&](const std::vector<int>& sx, const std::vector<int>& base) {
    return std::includes(sx.begin(), sx.end(), base.begin(), base.end());
  };
  auto local_bars = [&](const std::vector<int>& sx) {
    std::vector<bar> bs;
    for (const auto& [base, b] : summands)
      if (supports(sx, base)) bs.push_back(b);
    return bs;
  };

  std::map<std::vector<int>, interval_module> mods;
  std::map<std::vector<int>, conjugation> conj;
  for (const auto& sx : all) {
    interval_module im;
    im.m = m;
    im.bars = local_bars(sx);
    std::vector<int> dims;
    for (int i = 0; i <= m; ++i) dims.push_back(im.dims(i));
    S.stalk[sx] = dims;
    conj[sx] = rand_conjugation(g, F, dims);
    mods[sx] = im;
  }
  for (const auto& sx : all) {
    const interval_module& im = mods[sx];
    const conjugation& cj = conj[sx];
    std::vector<dense_mat> st = im.steps();
    for (int i = 0; i < m; ++i) st[i] = mul(F, cj.G[i + 1], mul(F, st[i], cj.Ginv[i]));
    S.step[sx] = std::move(st);
  }
  for (const auto& cof : all) {
    if (cof.size() < 2) continue;
    for (size_t j = 0; j < cof.size(); ++j) {
      std::vector<int> face;
      for (size_t q = 0; q < cof.size(); ++q)
        if (q != j) face.push_back(cof[q]);
      const interval_module& fm = mods[face];
      const interval_module& cm = mods[cof];
      std::vector<dense_mat> blocks;
      for (int i = 0; i <= m; ++i) {
        dense_mat x(cm.dims(i), fm.dims(i));
        // match summands: every face summand also lives on the cofacet
        int fs = 0;
        for (size_t s = 0; s < summands.size(); ++s) {
          if (!supports(face, summands[s].first)) continue;
          int cs = 0;
          for (size_t t = 0; t < s; ++t)
            if (supports(cof, summands[t].first)) ++cs;
          if (fm.pos(i, fs) >= 0 && cm.pos(i, cs) >= 0)
            x.at(cm.pos(i, cs), fm.pos(i, fs)) = 1;
          ++fs;
        }
        blocks.push_back(mul(F, conj[cof].G[i], mul(F, x, conj[face].Ginv[i])));
      }
      S.res[{face, cof}] = std::move(blocks);
    }
  }
  return S;
}

// Random zigzag poset sheaf: path-shaped Hasse diagram with random edge
// directions, interval-module stalks, natural cover maps, conjugated.
inline poset_sheaf rand_zigzag_sheaf(rng_t& g, int32_t p, int max_elems, int m,
                                     int max_bars) {
  fp_field F{p};
  int n = uniform(g, 1, max_elems);
  finite_poset X;
  for (int e = 0; e < n; ++e) X.labels.push_back("x" + std::to_string(e));
  for (int e = 0; e + 1 < n; ++e) {
    if (uniform(g, 0, 1))
      X.covers.push_back({e, e + 1});
    else
      X.covers.push_back({e + 1, e});
  }
  poset_sheaf S = make_poset_sheaf(p, m, X);

  std::vector<interval_module> mods(n);
  std::vector<conjugation> conj(n);
  for (int e = 0; e < n; ++e) {
    mods[e] = rand_interval_module(g, m, max_bars);
    std::vector<int> dims;
    for (int i = 0; i <= m; ++i) dims.push_back(mods[e].dims(i));
    S.stalk[e] = dims;
    conj[e] = rand_conjugation(g, F, dims);
    std::vector<dense_mat> st = mods[e].steps();
    for (int i = 0; i < m; ++i)
      st[i] = mul(F, conj[e].G[i + 1], mul(F, st[i], conj[e].Ginv[i]));
    S.step[e] = std::move(st);
  }
  for (auto [lo, hi] : S.X.covers) {
    std::vector<dense_mat> R = rand_nat_map(g, F, mods[lo], mods[hi]);
    for (int i = 0; i <= m; ++i)
      R[i] = mul(F, conj[hi].G[i], mul(F, R[i], conj[lo].Ginv[i]));
    S.res[{lo, hi}] = std::move(R);
  }
  return S;
}

// Random poset sheaf over an arbitrary small poset: a sum of summands, each
// the constant sheaf on a principal up-set over one grade interval, so all
// paths compose identically; conjugated per element and grade.
inline poset_sheaf rand_poset_sheaf(rng_t& g, int32_t p, int max_elems, int m,
                                    int max_summands) {
  fp_field F{p};
  int n = uniform(g, 1, max_elems);
  // random DAG on 0..n-1 with edges low -> high, reduced to covers
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (int e = 0; e < n; ++e) leq[e][e] = 1;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < b; ++a)
      if (uniform(g, 0, 2) == 0)
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            if (leq[x][a] && leq[b][y]) leq[x][y] = 1;
  finite_poset X;
  for (int e = 0; e < n; ++e) X.labels.push_back("e" + std::to_string(e));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !leq[a][b]) continue;
      bool cover = true;
      for (int w = 0; w < n; ++w)
        if (w != a && w != b && leq[a][w] && leq[w][b]) cover = false;
      if (cover) X.covers.push_back({a, b});
    }
  poset_sheaf S = make_poset_sheaf(p, m, X);

  int ns = uniform(g, 1, max_summands);
  std::vector<std::pair<int, bar>> summands;
  for (int s = 0; s < ns; ++s)
    summands.push_back({uniform(g, 0, n - 1), rand_bar(g, m)});

  std::vector<interval_module> mods(n);
  std::vector<conjugation> conj(n);
  for (int e = 0; e < n; ++e) {
    mods[e].m = m;
    for (const auto& [base, b] : summands)
      if (leq[base][e]) mods[e].bars.push_back(b);
    std::vector<int> dims;
    for (int i = 0; i <= m; ++i) dims.push_back(mods[e].dims(i));
    S.stalk[e] = dims;
    conj[e] = rand_conjugation(g, F, dims);
    std::vector<dense_mat> st = mods[e].steps();
    for (int i = 0; i < m; ++i)
      st[i] = mul(F, conj[e].G[i + 1], mul(F, st[i], conj[e].Ginv[i]));
    S.step[e] = std::move(st);
  }
  for (auto [lo, hi] : S.X.covers) {
    std::vector<dense_mat> R;
    for (int i = 0; i <= m; ++i) {
      dense_mat x(mods[hi].dims(i), mods[lo].dims(i));
      int ls = 0;
      for (size_t s = 0; s < summands.size(); ++s) {
        if (!leq[summands[s].first][lo]) continue;
        int hs = 0;
        for (size_t t = 0; t < s; ++t)
          if (leq[summands[t].first][hi]) ++hs;
        if (mods[lo].pos(i, ls) >= 0 && mods[hi].pos(i, hs) >= 0)
          x.at(mods[hi].pos(i, hs), mods[lo].pos(i, ls)) = 1;
        ++ls;
      }
      R.push_back(mul(F, conj[hi].G[i], mul(F, x, conj[lo].Ginv[i])));
    }
    S.res[{lo, hi}] = std::move(R);
  }
  return S;
}

// ---- filesystem helpers for parser and command tests ----

inline std::filesystem::path temp_file(const std::string& name,
                                       const std::string& content) {
  std::filesystem::path p =
      std::filesystem::temp_directory_path() / ("annmat_test_" + name);
  std::ofstream out(p);
  out << content;
  return p;
}

inline std::string data_file(const std::string& name) {
  return std::string(ANNMAT_TEST_DATA_DIR) + "/" + name;
}

inline barcode bars_of(std::vector<std::pair<grade_t, grade_t>> iv, int degree = 0) {
  barcode bc;
  for (auto [b, d] : iv) bc.add(degree, bar{b, d});
  bc.canonicalize();
  return bc;
}

}  // namespace testgen
