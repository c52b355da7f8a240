#include <benchmark/benchmark.h>

#include "clipcone/chamber.hpp"
#include "clipcone/descent.hpp"

namespace {

using namespace clipcone;

ClippedCone u_neg2() {
  RatMat g = RatMat::Zero(3, 3);
  g(0, 1) = g(1, 0) = 1;
  g(2, 2) = -2;
  Factor f;
  f.kind = FactorKind::Lorentz;
  f.coords = {0, 1, 2};
  f.h = (RatVec(3) << 1, 1, 0).finished();
  SymCone sym{QuadLattice(3, g), {f}};
  return ClippedCone{sym, {Root{(IntVec(3) << 0, 0, 1).finished(), 0, 2}},
                     (RatVec(3) << 2, 1, -1).finished()};
}

ClippedCone rank4_swap() {
  RatMat g = RatMat::Zero(4, 4);
  g(0, 1) = g(1, 0) = 1;
  g(2, 2) = g(3, 3) = -2;
  g(2, 3) = g(3, 2) = 1;
  Factor f;
  f.kind = FactorKind::Lorentz;
  f.coords = {0, 1, 2, 3};
  f.h = (RatVec(4) << 1, 1, 0, 0).finished();
  SymCone sym{QuadLattice(4, g), {f}};
  return ClippedCone{sym,
                     {Root{(IntVec(4) << 0, 0, 1, 0).finished(), 0, 2},
                      Root{(IntVec(4) << 0, 0, 0, 1).finished(), 0, 2}},
                     (RatVec(4) << 2, 1, -1, -1).finished()};
}

void BM_reduce(benchmark::State& state) {
  ClippedCone cone = u_neg2();
  RatVec x = (RatVec(3) << 40, 19, 27).finished();
  for (auto _ : state) {
    ReductionTrace t = reduce(x, cone);
    benchmark::DoNotOptimize(t.word.size());
  }
}
BENCHMARK(BM_reduce);

void BM_double_description(benchmark::State& state) {
  long n = state.range(0);
  std::vector<RatVec> facets;
  for (long i = 0; i < n; ++i) {
    RatVec f = RatVec::Constant(n, Rat(1));
    f(i) = Rat(n);
    facets.push_back(f);
    RatVec g = RatVec::Constant(n, Rat(0));
    g(i) = Rat(1);
    facets.push_back(g);
  }
  for (auto _ : state) {
    PolyCone c = dd_from_facets(n, facets);
    benchmark::DoNotOptimize(c.rays.size());
  }
}
BENCHMARK(BM_double_description)->Arg(4)->Arg(6)->Arg(8);

void BM_pairwise_thirteen_gon(benchmark::State& state) {
  ClippedCone gon = thirteen_gon();
  for (auto _ : state) {
    PairwiseReport rep = check_pairwise(gon.roots, gon.ambient.lattice);
    benchmark::DoNotOptimize(rep.ok);
  }
}
BENCHMARK(BM_pairwise_thirteen_gon);

void BM_descend_rank4(benchmark::State& state) {
  ClippedCone cone = rank4_swap();
  IntMat swap = IntMat::Identity(4, 4);
  swap(2, 2) = swap(3, 3) = 0;
  swap(2, 3) = swap(3, 2) = 1;
  FiniteAction action = group_closure({swap}, 8);
  for (auto _ : state) {
    DescentReport rep = descend(cone, action, 1, state.range(0));
    benchmark::DoNotOptimize(rep.ok);
  }
}
BENCHMARK(BM_descend_rank4)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
