#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "annmat/hom.hpp"
#include "annmat/sparse.hpp"
#include "annmat/tower.hpp"

using namespace annmat;

namespace {

int uniform(std::mt19937& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

// graph tower of n events: vertex and edge inclusions mixed with collapses
tower_script graph_tower(int n, uint32_t seed) {
  std::mt19937 g(seed);
  tower_script s;
  s.p = 2;
  std::set<int> verts;
  std::set<std::pair<int, int>> edges;
  int next_v = 0;
  auto push = [&](tower_event ev) {
    ev.t = grade_t(s.events.size());
    s.events.push_back(std::move(ev));
  };
  while (int(s.events.size()) < n) {
    int roll = uniform(g, 0, 9);
    if (int(verts.size()) < 3 || roll < 4) {
      verts.insert(next_v);
      push({0, true, {next_v}, -1, -1});
      ++next_v;
      continue;
    }
    std::vector<int> pool(verts.begin(), verts.end());
    if (roll < 8) {
      for (int tries = 0; tries < 8; ++tries) {
        int a = pool[uniform(g, 0, int(pool.size()) - 1)];
        int b = pool[uniform(g, 0, int(pool.size()) - 1)];
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (edges.count({a, b})) continue;
        edges.insert({a, b});
        push({0, true, {a, b}, -1, -1});
        break;
      }
      continue;
    }
    int from = pool[uniform(g, 0, int(pool.size()) - 1)];
    int to = from;
    while (to == from) to = pool[uniform(g, 0, int(pool.size()) - 1)];
    push({0, false, {}, from, to});
    verts.erase(from);
    std::set<std::pair<int, int>> next;
    for (auto [a, b] : edges) {
      if (a == from) a = to;
      if (b == from) b = to;
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      next.insert({a, b});
    }
    edges = std::move(next);
  }
  return s;
}

// dense random n-by-n presentation followed by a zero map
void square_pair(int n, uint32_t seed, annotated_matrix& f0, annotated_matrix& g0) {
  std::mt19937 g(seed);
  std::vector<bar> mid, dom, cod;
  for (int i = 0; i < n; ++i) mid.push_back(bar{uniform(g, 0, 7), kInf});
  for (int i = 0; i < n; ++i) dom.push_back(bar{uniform(g, 8, 15), kInf});
  for (int i = 0; i < n; ++i) cod.push_back(bar{0, kInf});
  f0 = annotated_matrix(2, mid, dom);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      if (uniform(g, 0, 1)) f0.set(r, c, 1);
  g0 = annotated_matrix(2, cod, mid);
}

void BM_tower_presentations(benchmark::State& state) {
  int n = int(state.range(0));
  tower_script s = graph_tower(n, uint32_t(n));
  uint64_t ops = 0;
  for (auto _ : state) {
    opcount::reset();
    auto pres = tower_presentations(s, 2);
    benchmark::DoNotOptimize(pres);
    ops = opcount::get();
  }
  state.counters["ops"] = double(ops);
}
BENCHMARK(BM_tower_presentations)->RangeMultiplier(2)->Range(128, 2048)->Unit(benchmark::kMillisecond);

void BM_pres_hom(benchmark::State& state) {
  int n = int(state.range(0));
  annotated_matrix f0, g0;
  square_pair(n, uint32_t(900 + n), f0, g0);
  for (auto _ : state) {
    barcode bc = pres_hom(f0, g0);
    benchmark::DoNotOptimize(bc);
  }
}
BENCHMARK(BM_pres_hom)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
