#include <benchmark/benchmark.h>

#include "epw/exterior.hpp"
#include "epw/linalg.hpp"
#include "epw/multipoly.hpp"
#include "epw/strata.hpp"

using namespace epw;

namespace {

void BM_Rank(benchmark::State& state) {
  const Field f = Field::prime(10007);
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const Matrix m = Matrix::random(f, n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rank)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

void BM_Wedge(benchmark::State& state) {
  const Field f = Field::prime(10007);
  Rng rng(2);
  const MultiVector a(3, random_vec(f, grade_dim(3), rng)), b(3, random_vec(f, grade_dim(3), rng));
  for (auto _ : state) benchmark::DoNotOptimize(wedge(a, b));
}
BENCHMARK(BM_Wedge);

void BM_Classify(benchmark::State& state) {
  const Field f = Field::prime(10007);
  Rng rng(3);
  const MultiVector a(3, random_vec(f, grade_dim(3), rng));
  for (auto _ : state) benchmark::DoNotOptimize(classify(a));
}
BENCHMARK(BM_Classify);

// Points of the quadric x0 x1 = x2 x3 + x4 x5, then recover it.
void BM_InterpolateQuadric(benchmark::State& state) {
  const Field f = Field::prime(10007);
  Rng rng(4);
  std::vector<Vec> pts;
  while (pts.size() < binomial(7, 5) + kDefaultInterpolationMargin) {
    Vec x = random_vec(f, kDimW, rng);
    if (x[0].is_zero()) continue;
    x[1] = (x[2] * x[3] + x[4] * x[5]) / x[0];
    pts.push_back(x);
  }
  for (auto _ : state) benchmark::DoNotOptimize(interpolate_form(pts, 2));
}
BENCHMARK(BM_InterpolateQuadric)->Unit(benchmark::kMillisecond);

void BM_Sextic(benchmark::State& state) {
  const Field f = Field::prime(107);
  const Lagrangian A = random_lagrangian(f, 1);
  SexticOptions so;
  so.validation = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sextic_interpolate(A, so));
}
BENCHMARK(BM_Sextic)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_LineScan(benchmark::State& state) {
  const Field f = Field::prime(107);
  const Lagrangian A = random_lagrangian(f, 2);
  Rng rng(5);
  const Pencil pen = random_pencil(f, FamilyKind::F, rng);
  ScanOptions so;
  so.mode = state.range(0) ? ScanMode::Exhaustive : ScanMode::Fast;
  for (auto _ : state) benchmark::DoNotOptimize(line_scan(A, pen, 1, so));
}
BENCHMARK(BM_LineScan)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
