#include <benchmark/benchmark.h>

#include <random>

#include "resnet/generators.hpp"
#include "resnet/lattice.hpp"
#include "resnet/reduce.hpp"
#include "resnet/resistance.hpp"
#include "resnet/solvers.hpp"
#include "resnet/walk.hpp"

using namespace resnet;

static void BM_DipoleDense(benchmark::State& state) {
  Network box = generate("lattice_box:d=2,L=" + std::to_string(state.range(0)));
  for (auto _ : state) {
    VertexFunction v = solve_dipole(box, 0, box.vertex_count() - 1, 0);
    benchmark::DoNotOptimize(v.values.data());
  }
}
BENCHMARK(BM_DipoleDense)->Arg(10)->Arg(20)->Arg(40);

static void BM_DipoleTree(benchmark::State& state) {
  Network tree = generate("binary_tree:depth=" + std::to_string(state.range(0)));
  for (auto _ : state) {
    VertexFunction v = solve_dipole(tree, 1, 0, 0);
    benchmark::DoNotOptimize(v.values.data());
  }
}
BENCHMARK(BM_DipoleTree)->Arg(10)->Arg(14)->Arg(18);

static void BM_DipoleCG(benchmark::State& state) {
  Network box = generate("lattice_box:d=3,L=" + std::to_string(state.range(0)));
  SolveOptions opts;
  opts.dense_threshold = 1;  // force the iterative path
  for (auto _ : state) {
    VertexFunction v = solve_dipole(box, 0, box.vertex_count() - 1, 0, opts);
    benchmark::DoNotOptimize(v.values.data());
  }
}
BENCHMARK(BM_DipoleCG)->Arg(9)->Arg(15);

static void BM_ReduceToPair(benchmark::State& state) {
  std::mt19937_64 rng(1);
  int n = static_cast<int>(state.range(0));
  std::uniform_real_distribution<double> cond(0.1, 10.0);
  NetworkBuilder b(n);
  for (int v = 1; v < n; ++v) b.add_edge(static_cast<int>(rng() % v), v, cond(rng));
  for (int extra = 0; extra < n; ++extra) {
    int u = static_cast<int>(rng() % n), w = static_cast<int>(rng() % n);
    if (u != w) b.add_edge(u, w, cond(rng));
  }
  Network net = b.build();
  for (auto _ : state) {
    PairReduction red = reduce_to_pair(net, 0, n - 1);
    benchmark::DoNotOptimize(red.conductance);
  }
}
BENCHMARK(BM_ReduceToPair)->Arg(30)->Arg(100);

static void BM_LatticeRinf(benchmark::State& state) {
  QuadratureGrid g = QuadratureGrid::defaults(3);
  g.points_per_axis = static_cast<int>(state.range(0));
  for (auto _ : state) {
    QuadratureValue v = lattice_Rinf(3, g);
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(BM_LatticeRinf)->Arg(32)->Arg(64);

static void BM_EscapeMC(benchmark::State& state) {
  Network cyc = generate("cycle:N=32");
  WalkConfig cfg;
  cfg.samples = static_cast<int>(state.range(0));
  cfg.seed = 3;
  for (auto _ : state) {
    McEstimate e = escape_probability_mc(cyc, 0, 16, cfg);
    benchmark::DoNotOptimize(e.estimate);
  }
  state.SetItemsProcessed(state.iterations() * cfg.samples);
}
BENCHMARK(BM_EscapeMC)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
