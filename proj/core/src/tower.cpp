#include "annmat/tower.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <string>

#include "annmat/complexify.hpp"
#include "annmat/errors.hpp"
#include "annmat/field.hpp"
#include "annmat/hom.hpp"
#include "annmat/sparse.hpp"

namespace annmat {

namespace {

bool contains(const std::vector<int>& sorted, int v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

int index_of(const std::vector<int>& sorted, int v) {
  return int(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

// Sign of sorting after replacing vertex b by a in a sorted simplex.
int32_t sort_sign(const std::vector<int>& verts, int b,
                  const std::vector<int>& target, int a) {
  int ib = index_of(verts, b);
  int ia = index_of(target, a);
  return ((ib - ia) % 2 == 0) ? 1 : -1;
}

struct rslot {
  int dim = 0;
  std::vector<int> verts;  // current labels while alive; last labels otherwise
  int32_t eps = 1;         // orientation of the carried generator, +1 or -1
  bool alive = true;
  bar life{0, kInf};
  std::vector<int> cvslots;  // vertex slot ids at creation
  int parent = -1;           // for dead vertex slots: the absorbing slot
  int event = -1;
};

struct replay_hooks {
  // faces come as (face slot, sign) with sign already carrying the face's
  // orientation coefficient
  std::function<void(int slot, const std::vector<std::pair<int, int32_t>>&)> on_include;
  // survivor e absorbs later-born l: col_l -= lam*col_e, row_e += lam*row_l
  std::function<void(int dim, int e_slot, int l_slot, int32_t lam)> on_merge;
};

struct replay_result {
  std::vector<rslot> slots;
  std::vector<std::vector<int>> finals;  // per slot: image in the end complex
};

[[noreturn]] void fail(grade_t t, const std::string& msg) {
  throw invariant_error("event at time " + std::to_string(t) + ": " + msg);
}

replay_result replay(const tower_script& s, int max_dim, const replay_hooks* hooks) {
  std::vector<rslot> slots;
  std::map<std::vector<int>, int> live;  // alive simplex -> slot id

  for (size_t e = 0; e < s.events.size(); ++e) {
    const tower_event& ev = s.events[e];
    if (ev.include) {
      int dim = int(ev.verts.size()) - 1;
      if (dim > max_dim) fail(ev.t, "simplex dimension exceeds the maintained maximum");
      if (live.count(ev.verts)) fail(ev.t, "simplex already present");
      std::vector<std::pair<int, int32_t>> faces;
      std::vector<int> cvs;
      if (dim >= 1) {
        for (int j = 0; j <= dim; ++j) {
          std::vector<int> fv;
          fv.reserve(dim);
          for (int q = 0; q <= dim; ++q)
            if (q != j) fv.push_back(ev.verts[q]);
          auto it = live.find(fv);
          if (it == live.end()) fail(ev.t, "missing face of included simplex");
          int32_t sgn = (j % 2 == 0) ? 1 : -1;
          faces.push_back({it->second, sgn * slots[it->second].eps});
        }
        for (int v : ev.verts) cvs.push_back(live.at({v}));
      }
      int id = int(slots.size());
      rslot sl;
      sl.dim = dim;
      sl.verts = ev.verts;
      sl.life = bar{ev.t, kInf};
      sl.event = int(e);
      sl.cvslots = dim == 0 ? std::vector<int>{id} : cvs;
      slots.push_back(std::move(sl));
      live[ev.verts] = id;
      if (hooks && hooks->on_include) hooks->on_include(id, faces);
    } else {
      if (!live.count({ev.from})) fail(ev.t, "collapse source vertex not alive");
      if (!live.count({ev.to})) fail(ev.t, "collapse target vertex not alive");
      std::vector<int> affected;
      for (const auto& [vs, id] : live)
        if (contains(vs, ev.from)) affected.push_back(id);
      std::sort(affected.begin(), affected.end(), [&](int x, int y) {
        if (slots[x].dim != slots[y].dim) return slots[x].dim < slots[y].dim;
        return x < y;
      });
      for (int sid : affected) {
        rslot& sl = slots[sid];
        if (contains(sl.verts, ev.to)) {
          // image is degenerate: the generator dies with no further ops
          live.erase(sl.verts);
          sl.alive = false;
          sl.life.death = ev.t;
          continue;
        }
        std::vector<int> tv = sl.verts;
        tv[index_of(tv, ev.from)] = ev.to;
        std::sort(tv.begin(), tv.end());
        int32_t sg = sort_sign(sl.verts, ev.from, tv, ev.to);
        auto tit = live.find(tv);
        if (tit == live.end()) {
          live.erase(sl.verts);
          sl.verts = tv;
          sl.eps *= sg;
          live[tv] = sid;
          continue;
        }
        int tid = tit->second;
        rslot& tl = slots[tid];
        int32_t m_s = sl.eps * sg, m_t = tl.eps;
        assert(sl.life.birth != tl.life.birth);
        int e_id = sl.life.birth < tl.life.birth ? sid : tid;
        int l_id = e_id == sid ? tid : sid;
        if (hooks && hooks->on_merge)
          hooks->on_merge(sl.dim, e_id, l_id, m_s * m_t);
        live.erase(sl.verts);
        live.erase(tv);
        slots[l_id].alive = false;
        slots[l_id].life.death = ev.t;
        rslot& surv = slots[e_id];
        surv.verts = tv;
        surv.eps = e_id == sid ? m_s : m_t;
        live[tv] = e_id;
        if (sl.dim == 0) slots[l_id].parent = e_id;
      }
    }
  }

  replay_result out;
  auto final_label = [&](int vs) {
    while (!slots[vs].alive) {
      assert(slots[vs].parent >= 0);
      vs = slots[vs].parent;
    }
    return slots[vs].verts[0];
  };
  out.finals.resize(slots.size());
  for (size_t id = 0; id < slots.size(); ++id) {
    std::vector<int> fv;
    for (int cv : slots[id].cvslots) fv.push_back(final_label(cv));
    std::sort(fv.begin(), fv.end());
    fv.erase(std::unique(fv.begin(), fv.end()), fv.end());
    out.finals[id] = std::move(fv);
  }
  out.slots = std::move(slots);
  return out;
}

// Sparse matrix indexed both ways so column and row operations are local.
struct dok {
  std::vector<std::map<int, int32_t>> colv;
  std::vector<std::set<int>> rowv;

  void ensure(int rows, int cols) {
    if (int(rowv.size()) < rows) rowv.resize(rows);
    if (int(colv.size()) < cols) colv.resize(cols);
  }
  void put(int r, int c, int32_t v) {
    if (v == 0) return;
    colv[c][r] = v;
    rowv[r].insert(c);
    opcount::bump(1);
  }
  void col_axpy(const fp_field& F, int to, int from, int32_t lam) {
    if (lam == 0) return;
    for (const auto& [r, v] : colv[from]) {
      auto it = colv[to].find(r);
      int32_t nv = F.add(it != colv[to].end() ? it->second : 0, F.mul(lam, v));
      if (nv == 0) {
        if (it != colv[to].end()) {
          colv[to].erase(it);
          rowv[r].erase(to);
        }
      } else if (it != colv[to].end()) {
        it->second = nv;
      } else {
        colv[to].emplace(r, nv);
        rowv[r].insert(to);
      }
      opcount::bump(1);
    }
  }
  void row_axpy(const fp_field& F, int to, int from, int32_t lam) {
    if (lam == 0) return;
    std::vector<int> cs(rowv[from].begin(), rowv[from].end());
    for (int c : cs) {
      int32_t v = colv[c].at(from);
      auto it = colv[c].find(to);
      int32_t nv = F.add(it != colv[c].end() ? it->second : 0, F.mul(lam, v));
      if (nv == 0) {
        if (it != colv[c].end()) {
          colv[c].erase(it);
          rowv[to].erase(c);
        }
      } else if (it != colv[c].end()) {
        it->second = nv;
      } else {
        colv[c].emplace(to, nv);
        rowv[to].insert(c);
      }
      opcount::bump(1);
    }
  }
};

}  // namespace

void check_script(const tower_script& s) {
  if (!is_prime(s.p)) throw invariant_error("field characteristic must be prime");
  for (size_t e = 0; e < s.events.size(); ++e) {
    const tower_event& ev = s.events[e];
    if (ev.t != grade_t(e))
      throw invariant_error("event times must be consecutive from 0; event " +
                            std::to_string(e) + " has time " + std::to_string(ev.t));
    if (ev.include) {
      if (ev.verts.empty()) fail(ev.t, "empty simplex");
      for (size_t i = 1; i < ev.verts.size(); ++i)
        if (ev.verts[i - 1] >= ev.verts[i])
          fail(ev.t, "simplex vertices must be strictly increasing");
    } else {
      if (ev.from == ev.to) fail(ev.t, "collapse endpoints must differ");
    }
  }
}

std::vector<annotated_matrix> run_tower_engine(const tower_script& s, int max_dim,
                                               const width_fn& width,
                                               const ext_fn& ext) {
  check_script(s);
  if (max_dim < 0) throw invariant_error("max_dim must be nonnegative");
  fp_field F{s.p};

  replay_result st = replay(s, max_dim, nullptr);
  const int n = int(st.slots.size());
  std::vector<int> w(n), col_off(n, -1), row_off(n, -1);
  for (int id = 0; id < n; ++id) {
    w[id] = width(st.finals[id]);
    if (w[id] < 0) throw invariant_error("negative block size");
  }

  std::vector<dok> level(max_dim + 2);
  std::vector<int> level_cols(max_dim + 2, 0), level_rows(max_dim + 2, 0);

  replay_hooks hooks;
  hooks.on_include = [&](int id, const std::vector<std::pair<int, int32_t>>& faces) {
    int dim = st.slots[id].dim;
    col_off[id] = level_cols[dim];
    level_cols[dim] += w[id];
    row_off[id] = level_rows[dim + 1];
    level_rows[dim + 1] += w[id];
    level[dim].ensure(level_rows[dim], level_cols[dim]);
    level[dim + 1].ensure(level_rows[dim + 1], level_cols[dim + 1]);
    if (w[id] == 0) return;
    for (const auto& [fs, sgn] : faces) {
      if (w[fs] == 0) continue;
      dense_mat x = ext(st.finals[fs], st.finals[id]);
      if (x.rows != w[fs] || x.cols != w[id])
        throw invariant_error("block between simplex generations has the wrong shape");
      for (int a = 0; a < x.rows; ++a)
        for (int b = 0; b < x.cols; ++b)
          level[dim].put(row_off[fs] + a, col_off[id] + b,
                         F.mul(F.norm(sgn), x.at(a, b)));
    }
  };
  hooks.on_merge = [&](int dim, int e_id, int l_id, int32_t lam) {
    assert(w[e_id] == w[l_id]);
    int32_t lm = F.norm(lam);
    for (int i = 0; i < w[e_id]; ++i)
      level[dim].col_axpy(F, col_off[l_id] + i, col_off[e_id] + i, F.neg(lm));
    for (int i = 0; i < w[e_id]; ++i)
      level[dim + 1].row_axpy(F, row_off[e_id] + i, row_off[l_id] + i, lm);
  };
  replay(s, max_dim, &hooks);

  std::vector<annotated_matrix> out;
  out.reserve(max_dim + 2);
  for (int k = 0; k <= max_dim + 1; ++k) {
    std::vector<bar> rows, cols;
    for (int id = 0; id < n; ++id) {
      if (st.slots[id].dim == k - 1)
        for (int i = 0; i < w[id]; ++i) rows.push_back(st.slots[id].life);
      if (st.slots[id].dim == k)
        for (int i = 0; i < w[id]; ++i) cols.push_back(st.slots[id].life);
    }
    annotated_matrix f(s.p, std::move(rows), std::move(cols));
    level[k].ensure(f.nrows(), f.ncols());
    for (int c = 0; c < f.ncols(); ++c)
      for (const auto& [r, v] : level[k].colv[c]) f.cols[c].push_back({r, v});
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<annotated_matrix> tower_presentations(const tower_script& s, int max_dim) {
  dense_mat one(1, 1);
  one.at(0, 0) = 1;
  return run_tower_engine(
      s, max_dim, [](const std::vector<int>&) { return 1; },
      [&one](const std::vector<int>&, const std::vector<int>&) { return one; });
}

barcode tower_homology(const tower_script& s, const std::vector<int>& degrees,
                       bool keep_empty) {
  if (degrees.empty()) throw invariant_error("no degrees requested");
  int top = 0;
  for (int k : degrees) {
    if (k < 0) throw invariant_error("negative degree requested");
    top = std::max(top, k);
  }
  std::vector<annotated_matrix> pres = tower_presentations(s, top + 1);
  barcode out;
  for (int k : degrees) {
    auto [f, g] = complexify_pair(pres[k + 1], pres[k]);
    barcode b = pres_hom(f, g, k, keep_empty);
    for (const degree_bar& db : b.bars) out.bars.push_back(db);
  }
  out.canonicalize();
  return out;
}

std::vector<std::vector<int>> final_images(const tower_script& s) {
  check_script(s);
  replay_result st = replay(s, 1 << 20, nullptr);
  std::vector<std::vector<int>> out(s.events.size());
  for (size_t id = 0; id < st.slots.size(); ++id)
    out[st.slots[id].event] = st.finals[id];
  return out;
}

std::vector<std::vector<int>> final_complex(const tower_script& s) {
  check_script(s);
  replay_result st = replay(s, 1 << 20, nullptr);
  std::vector<std::vector<int>> out;
  for (const rslot& sl : st.slots)
    if (sl.alive) out.push_back(sl.verts);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

}  // namespace annmat
