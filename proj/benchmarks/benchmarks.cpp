#include <benchmark/benchmark.h>

#include "hopfkit/families.hpp"

using namespace hopfkit;

static void BM_VerifyGroupAlgebra(benchmark::State& state) {
  FdHopf h = group_algebra(GroupTable::cyclic(state.range(0)), FieldDesc::rationals());
  for (auto _ : state) benchmark::DoNotOptimize(verify(h).all_pass);
}
BENCHMARK(BM_VerifyGroupAlgebra)->Arg(6)->Arg(12);

static void BM_TaftConstructAndVerify(benchmark::State& state) {
  long n = state.range(0);
  Scalar q = Scalar::primitive_root(n);
  for (auto _ : state) {
    FdHopf t = taft_fd(n, 1, q, q.field());
    benchmark::DoNotOptimize(verify(t).all_pass);
  }
}
BENCHMARK(BM_TaftConstructAndVerify)->Arg(3)->Arg(4)->Arg(6);

static void BM_RrefCyclotomic(benchmark::State& state) {
  long n = state.range(0);
  FieldDesc f = FieldDesc::cyclotomic(8);
  Scalar z = Scalar::primitive_root(8);
  Matrix m(n, n, f);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) m.at(r, c) = z.pow((r * c + r + 2 * c) % 8) + Scalar::integer(r == c);
  for (auto _ : state) {
    Matrix copy = m;
    benchmark::DoNotOptimize(rref(copy).rank);
  }
}
BENCHMARK(BM_RrefCyclotomic)->Arg(16)->Arg(32);

static void BM_BasedAxiomSweep(benchmark::State& state) {
  BasedHopf h = dihedral_family();
  for (auto _ : state) benchmark::DoNotOptimize(verify_based(h, state.range(0)).all_pass);
}
BENCHMARK(BM_BasedAxiomSweep)->Arg(3)->Arg(5);

BENCHMARK_MAIN();
