// Parallel kernels against their serial references on a large synthetic
// model. Set OMP_NUM_THREADS to vary the thread count.

#include <benchmark/benchmark.h>

#include "support/oracles.hpp"
#include "tracecity/city_layout.hpp"
#include "tracecity/rc_view.hpp"

namespace {

using namespace tracecity;

struct Workload {
  CodeModel model;
  ScrumDataset dataset;
  TraceIndex index;

  explicit Workload(int packages, int classes)
      : model(ingest_code_model(testing::scaled_model_json(packages, classes))),
        dataset(simulate_scrum(model, {12, 48, 6})),
        index(build_index(dataset, model)) {}
};

const Workload& workload() {
  static const Workload w(68, 3214);
  return w;
}

void BM_LayoutParallel(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state) benchmark::DoNotOptimize(layout_city(w.model));
}

void BM_LayoutSerial(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state) benchmark::DoNotOptimize(layout_city_serial(w.model));
}

void BM_RcMapParallel(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state) benchmark::DoNotOptimize(rc_map(w.index, w.dataset, w.model, {}));
}

void BM_RcMapSerial(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state) benchmark::DoNotOptimize(rc_map_serial(w.index, w.dataset, w.model, {}));
}

BENCHMARK(BM_LayoutParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LayoutSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RcMapParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RcMapSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
