#include "annmat/poset.hpp"

#include <algorithm>
#include <set>

#include "annmat/errors.hpp"

namespace annmat {

void finite_poset::check() const {
  int n = size();
  {
    std::set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second)
        throw invariant_error("duplicate element label '" + l + "'");
  }
  std::set<std::pair<int, int>> seen;
  for (auto [lo, hi] : covers) {
    if (lo < 0 || lo >= n || hi < 0 || hi >= n)
      throw invariant_error("cover relation references an unknown element");
    if (lo == hi)
      throw invariant_error("cover relation on element '" + labels[lo] +
                            "' has equal endpoints");
    if (!seen.insert({lo, hi}).second)
      throw invariant_error("duplicate cover relation '" + labels[lo] + "' < '" +
                            labels[hi] + "'");
  }
  // acyclicity via Kahn's algorithm on the cover digraph
  std::vector<int> indeg(n, 0);
  for (auto [lo, hi] : covers) indeg[hi]++;
  std::vector<int> queue;
  for (int e = 0; e < n; ++e)
    if (indeg[e] == 0) queue.push_back(e);
  int removed = 0;
  while (!queue.empty()) {
    int e = queue.back();
    queue.pop_back();
    ++removed;
    for (auto [lo, hi] : covers)
      if (lo == e && --indeg[hi] == 0) queue.push_back(hi);
  }
  if (removed != n) throw invariant_error("cover relations contain a cycle");
  // minimality: a cover must not be implied by a longer path
  auto leq = closure();
  for (auto [lo, hi] : covers)
    for (int z = 0; z < n; ++z)
      if (z != lo && z != hi && leq[lo][z] && leq[z][hi])
        throw invariant_error("relation '" + labels[lo] + "' < '" + labels[hi] +
                              "' is not a cover (passes through '" + labels[z] + "')");
}

std::vector<std::vector<char>> finite_poset::closure() const {
  int n = size();
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (int e = 0; e < n; ++e) leq[e][e] = 1;
  for (auto [lo, hi] : covers) leq[lo][hi] = 1;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (leq[a][k])
        for (int b = 0; b < n; ++b)
          if (leq[k][b]) leq[a][b] = 1;
  return leq;
}

bool is_zigzag(const finite_poset& X) {
  int n = X.size();
  if (n == 0) return true;
  if (int(X.covers.size()) != n - 1) return false;
  std::vector<int> deg(n, 0);
  for (auto [lo, hi] : X.covers) {
    deg[lo]++;
    deg[hi]++;
  }
  for (int d : deg)
    if (d > 2) return false;
  // connectivity of the underlying graph
  std::vector<std::vector<int>> adj(n);
  for (auto [lo, hi] : X.covers) {
    adj[lo].push_back(hi);
    adj[hi].push_back(lo);
  }
  std::vector<char> vis(n, 0);
  std::vector<int> stack{0};
  vis[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int e = stack.back();
    stack.pop_back();
    for (int f : adj[e])
      if (!vis[f]) {
        vis[f] = 1;
        ++count;
        stack.push_back(f);
      }
  }
  return count == n;
}

dense_mat poset_sheaf::res_of(int lo, int hi, int i) const {
  auto it = res.find({lo, hi});
  if (it != res.end() && i < int(it->second.size())) return it->second[i];
  return dense_mat(stalk[hi][i], stalk[lo][i]);
}

poset_sheaf make_poset_sheaf(int32_t p, int m, finite_poset X) {
  poset_sheaf S;
  S.p = p;
  S.m = m;
  S.X = std::move(X);
  int n = S.X.size();
  S.stalk.assign(n, std::vector<int>(m + 1, 0));
  S.step.assign(n, {});
  for (int e = 0; e < n; ++e)
    for (int i = 0; i < m; ++i) S.step[e].push_back(dense_mat(0, 0));
  return S;
}

void poset_sheaf::check() const {
  X.check();
  if (!is_prime(p)) throw invariant_error("field order must be prime");
  if (m < 0) throw invariant_error("grading horizon must be non-negative");
  int n = X.size();
  if (int(stalk.size()) != n) throw invariant_error("stalk table must cover every element");
  for (int e = 0; e < n; ++e) {
    if (int(stalk[e].size()) != m + 1)
      throw invariant_error("stalk dims for element '" + X.labels[e] + "' must list " +
                            std::to_string(m + 1) + " values");
    for (int d : stalk[e])
      if (d < 0)
        throw invariant_error("stalk dims for element '" + X.labels[e] +
                              "' must be non-negative");
  }
  if (int(step.size()) != n) throw invariant_error("step table must cover every element");
  for (int e = 0; e < n; ++e) {
    if (int(step[e].size()) != m)
      throw invariant_error("step maps for element '" + X.labels[e] + "' must list " +
                            std::to_string(m) + " matrices");
    for (int i = 0; i < m; ++i)
      if (step[e][i].rows != stalk[e][i + 1] || step[e][i].cols != stalk[e][i])
        throw invariant_error("step map for element '" + X.labels[e] + "' at index " +
                              std::to_string(i) + " has the wrong shape");
  }
  std::set<std::pair<int, int>> cover_set(X.covers.begin(), X.covers.end());
  for (const auto& [key, mats] : res) {
    auto [lo, hi] = key;
    if (!cover_set.count(key))
      throw invariant_error("restriction given for a pair that is not a cover relation");
    std::string name =
        "restriction ('" + X.labels[lo] + "' -> '" + X.labels[hi] + "')";
    if (int(mats.size()) != m + 1)
      throw invariant_error(name + " must list " + std::to_string(m + 1) + " matrices");
    for (int i = 0; i <= m; ++i)
      if (mats[i].rows != stalk[hi][i] || mats[i].cols != stalk[lo][i])
        throw invariant_error(name + " at index " + std::to_string(i) +
                              " has the wrong shape");
  }
  fp_field F(p);
  for (const auto& [key, mats] : res) {
    auto [lo, hi] = key;
    for (int i = 0; i < m; ++i)
      if (mul(F, step_of(hi, i), mats[i]) != mul(F, mats[i + 1], step_of(lo, i)))
        throw invariant_error("restriction ('" + X.labels[lo] + "' -> '" + X.labels[hi] +
                              "') breaks naturality at index " + std::to_string(i));
  }
  // path-independence: all first-cover factorizations of lo <= hi agree
  auto leq = X.closure();
  res_closure C(*this);
  for (int lo = 0; lo < n; ++lo) {
    for (int hi = 0; hi < n; ++hi) {
      if (lo == hi || !leq[lo][hi]) continue;
      std::vector<int> ws;
      for (auto [a, w] : X.covers)
        if (a == lo && leq[w][hi]) ws.push_back(w);
      if (ws.size() < 2) continue;
      for (int i = 0; i <= m; ++i) {
        dense_mat ref = mul(F, C.get(ws[0], hi, i), res_of(lo, ws[0], i));
        for (std::size_t q = 1; q < ws.size(); ++q)
          if (mul(F, C.get(ws[q], hi, i), res_of(lo, ws[q], i)) != ref)
            throw invariant_error("restrictions from '" + X.labels[lo] + "' to '" +
                                  X.labels[hi] + "' depend on the path at index " +
                                  std::to_string(i));
      }
    }
  }
}

res_closure::res_closure(const poset_sheaf& S_) : S(S_), leq(S_.X.closure()) {}

dense_mat res_closure::get(int lo, int hi, int i) {
  if (lo == hi) return dense_mat::identity(S.stalk[lo][i]);
  auto key = std::make_tuple(lo, hi, i);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  int w = -1;
  for (auto [a, b] : S.X.covers)
    if (a == lo && leq[b][hi] && (w < 0 || b < w)) w = b;
  assert(w >= 0);
  dense_mat out = mul(fp_field(S.p), get(w, hi, i), S.res_of(lo, w, i));
  memo[key] = out;
  return out;
}

order_complex_result order_complex(const finite_poset& X, std::size_t max_chains) {
  X.check();
  int n = X.size();
  auto leq = X.closure();
  // chain counts by maximum, in any linear extension order
  std::vector<int> topo;
  {
    std::vector<int> indeg(n, 0);
    for (auto [lo, hi] : X.covers) indeg[hi]++;
    std::vector<int> queue;
    for (int e = 0; e < n; ++e)
      if (indeg[e] == 0) queue.push_back(e);
    while (!queue.empty()) {
      int e = queue.back();
      queue.pop_back();
      topo.push_back(e);
      for (auto [lo, hi] : X.covers)
        if (lo == e && --indeg[hi] == 0) queue.push_back(hi);
    }
  }
  std::vector<unsigned long long> cnt(n, 0);
  unsigned long long total = 0;
  auto guard = [&] {
    if (total > max_chains) {
      std::string msg = "order complex would exceed " + std::to_string(max_chains) +
                        " chains";
      if (is_zigzag(X)) msg += "; a zigzag poset can use the alternating route instead";
      throw invariant_error(msg);
    }
  };
  for (int e : topo) {
    cnt[e] = 1;
    for (int f = 0; f < n; ++f)
      if (f != e && leq[f][e]) {
        cnt[e] = std::min<unsigned long long>(cnt[e] + cnt[f], max_chains + 1);
      }
    total = std::min<unsigned long long>(total + cnt[e], max_chains + 1);
    guard();
  }
  // enumerate chains by maximum, as index-sorted vertex lists
  std::vector<std::vector<std::vector<int>>> by_max(n);
  order_complex_result out;
  for (int e : topo) {
    by_max[e].push_back({e});
    for (int f = 0; f < n; ++f) {
      if (f == e || !leq[f][e]) continue;
      for (const auto& c : by_max[f]) {
        std::vector<int> ext = c;
        ext.insert(std::upper_bound(ext.begin(), ext.end(), e), e);
        by_max[e].push_back(std::move(ext));
      }
    }
    for (const auto& c : by_max[e]) out.max_of[c] = e;
  }
  simplicial_complex K;
  for (int e = 0; e < n; ++e) {
    for (auto& c : by_max[e]) {
      int d = int(c.size()) - 1;
      if (d >= int(K.by_dim.size())) K.by_dim.resize(d + 1);
      K.by_dim[d].push_back(std::move(c));
    }
  }
  for (auto& level : K.by_dim) std::sort(level.begin(), level.end());
  for (int d = 0; d < int(K.by_dim.size()); ++d)
    for (int i = 0; i < int(K.by_dim[d].size()); ++i) K.index[K.by_dim[d][i]] = {d, i};
  out.K = std::move(K);
  return out;
}

sheaf_instance pullback_to_order_complex(const poset_sheaf& S, std::size_t max_chains) {
  S.check();
  order_complex_result oc = order_complex(S.X, max_chains);
  res_closure C(S);
  sheaf_instance inst;
  inst.p = S.p;
  inst.m = S.m;
  inst.K = std::move(oc.K);
  for (int d = 0; d <= inst.K.top_dim(); ++d) {
    for (const auto& c : inst.K.by_dim[d]) {
      int e = oc.max_of.at(c);
      inst.stalk[c] = S.stalk[e];
      inst.step[c] = S.step[e];
    }
  }
  for (int d = 1; d <= inst.K.top_dim(); ++d) {
    for (const auto& cof : inst.K.by_dim[d]) {
      int hi = oc.max_of.at(cof);
      for (std::size_t j = 0; j < cof.size(); ++j) {
        std::vector<int> face;
        for (std::size_t q = 0; q < cof.size(); ++q)
          if (q != j) face.push_back(cof[q]);
        int lo = oc.max_of.at(face);
        std::vector<dense_mat> family;
        for (int i = 0; i <= S.m; ++i) family.push_back(C.get(lo, hi, i));
        inst.res[{face, cof}] = std::move(family);
      }
    }
  }
  return inst;
}

poset_sheaf alternating_subposet(const poset_sheaf& S) {
  S.check();
  if (!is_zigzag(S.X)) throw invariant_error("poset is not a zigzag");
  int n = S.X.size();
  if (n == 0) return make_poset_sheaf(S.p, S.m, {});
  // recover the path, starting from the endpoint with the smaller index
  std::vector<std::vector<int>> adj(n);
  for (auto [lo, hi] : S.X.covers) {
    adj[lo].push_back(hi);
    adj[hi].push_back(lo);
  }
  int start = -1;
  for (int e = 0; e < n; ++e)
    if (int(adj[e].size()) <= 1 && start < 0) start = e;
  std::vector<int> path{start};
  int prev = -1;
  while (int(path.size()) < n) {
    int cur = path.back();
    for (int nb : adj[cur])
      if (nb != prev) {
        path.push_back(nb);
        break;
      }
    prev = cur;
  }
  std::vector<char> is_min(n, 1), is_max(n, 1);
  for (auto [lo, hi] : S.X.covers) {
    is_max[lo] = 0;
    is_min[hi] = 0;
  }
  // alternation scan along the path: first minimal, then alternately the
  // next maximal / minimal position
  std::vector<int> picks;
  int pos = 0;
  while (pos < n && !is_min[path[pos]]) ++pos;
  bool want_max = false;
  while (pos < n) {
    picks.push_back(pos);
    want_max = !want_max;
    int nxt = pos + 1;
    while (nxt < n && !(want_max ? is_max[path[nxt]] : is_min[path[nxt]])) ++nxt;
    pos = nxt;
  }
  finite_poset Xp;
  for (int q : picks) Xp.labels.push_back(S.X.labels[path[q]]);
  for (int q = 0; q + 1 < int(picks.size()); ++q) {
    if (q % 2 == 0)
      Xp.covers.push_back({q, q + 1});  // minimum then maximum
    else
      Xp.covers.push_back({q + 1, q});  // maximum then minimum
  }
  poset_sheaf out = make_poset_sheaf(S.p, S.m, std::move(Xp));
  fp_field F(S.p);
  for (int q = 0; q < int(picks.size()); ++q) {
    out.stalk[q] = S.stalk[path[picks[q]]];
    out.step[q] = S.step[path[picks[q]]];
  }
  for (int q = 0; q + 1 < int(picks.size()); ++q) {
    int a = picks[q], b = picks[q + 1];
    int lo_new = q % 2 == 0 ? q : q + 1;
    std::vector<dense_mat> family;
    for (int i = 0; i <= S.m; ++i) {
      dense_mat M;
      if (q % 2 == 0) {
        // rising run from path[a] up to path[b]
        M = dense_mat::identity(S.stalk[path[a]][i]);
        for (int j = a; j < b; ++j) M = mul(F, S.res_of(path[j], path[j + 1], i), M);
      } else {
        // falling run: compose upward from path[b] to path[a]
        M = dense_mat::identity(S.stalk[path[b]][i]);
        for (int j = b - 1; j >= a; --j) M = mul(F, S.res_of(path[j + 1], path[j], i), M);
      }
      family.push_back(std::move(M));
    }
    out.res[{lo_new, q % 2 == 0 ? q + 1 : q}] = std::move(family);
  }
  return out;
}

barcode poset_cohomology_order_complex(const poset_sheaf& S, int k, bool keep_empty,
                                       std::size_t max_chains) {
  return persistent_sheaf_cohomology(pullback_to_order_complex(S, max_chains), k,
                                     keep_empty);
}

barcode poset_cohomology_alternating(const poset_sheaf& S, int k, bool keep_empty) {
  return persistent_sheaf_cohomology(
      pullback_to_order_complex(alternating_subposet(S)), k, keep_empty);
}

barcode poset_cohomology(const poset_sheaf& S, int k, bool keep_empty) {
  if (is_zigzag(S.X)) return poset_cohomology_alternating(S, k, keep_empty);
  return poset_cohomology_order_complex(S, k, keep_empty);
}

}  // namespace annmat
