#include <benchmark/benchmark.h>

#include "magcut/cost_matrix.hpp"
#include "magcut/refine.hpp"
#include "magcut/rng.hpp"
#include "magcut/solver.hpp"

using namespace magcut;

namespace {

Signal random_signal(int p, std::uint64_t seed) {
  Rng rng(seed);
  CVec v(p);
  for (int i = 0; i < p; ++i) v[i] = rng.complex_gaussian();
  return Signal(std::move(v), SignalShape::one_d(p));
}

struct Pipeline {
  Signal x;
  MeasurementOperator op;
  PhaseVector u;

  explicit Pipeline(int p, int m)
      : x(random_signal(p, 1)),
        op(make_masks(p, m, 2), x.shape),
        u(phase_of(op.forward(x))) {}
};

}  // namespace

static void BM_Forward(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  Pipeline pl(p, 3);
  CVec z;
  for (auto _ : state) {
    z = pl.op.forward(pl.x);
    benchmark::DoNotOptimize(z.data());
  }
  state.SetItemsProcessed(state.iterations() * pl.op.n());
}
BENCHMARK(BM_Forward)->Arg(16)->Arg(64)->Arg(256);

static void BM_ProjectorApply(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  Pipeline pl(p, 3);
  const CVec z = pl.op.forward(pl.x);
  CVec out;
  for (auto _ : state) {
    out = pl.op.projector_apply(z);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_ProjectorApply)->Arg(16)->Arg(64)->Arg(256);

static void BM_BuildCostMatrix(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  Pipeline pl(p, 3);
  for (auto _ : state) {
    CostMatrixOptions opts;
    opts.validate = false;
    const CostMatrix cm = build_cost_matrix(pl.op, pl.u, opts);
    benchmark::DoNotOptimize(cm.entries.data());
  }
}
BENCHMARK(BM_BuildCostMatrix)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_SolverSweep(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  Pipeline pl(p, 3);
  CostMatrixOptions opts;
  opts.validate = false;
  const CostMatrix rem = build_cost_matrix(pl.op, pl.u, opts);
  SolverConfig cfg;
  LiftedMatrix B = init_lifted(rem.n);
  for (auto _ : state) {
    const SweepRecord rec = sweep(B, rem, cfg);
    benchmark::DoNotOptimize(rec.objective);
  }
  state.SetLabel("n=" + std::to_string(rem.n));
}
BENCHMARK(BM_SolverSweep)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_RefineIteration(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  Pipeline pl(p, 3);
  RefineConfig cfg;
  cfg.max_iters = 32;
  cfg.residual_tol = 0.0;  // fixed iteration count
  Rng rng(5);
  CVec v(p);
  for (int i = 0; i < p; ++i) v[i] = rng.complex_gaussian();
  const Signal x0(v, pl.x.shape);
  for (auto _ : state) {
    const RefineResult rr = refine_iterate(pl.op, pl.u, x0, cfg);
    benchmark::DoNotOptimize(rr.residuals.data());
  }
  state.SetItemsProcessed(state.iterations() * cfg.max_iters);
}
BENCHMARK(BM_RefineIteration)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
