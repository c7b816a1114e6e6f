#include <benchmark/benchmark.h>

#include <random>

#include "cpst/completion.hpp"
#include "cpst/decompose.hpp"
#include "cpst/instances.hpp"
#include "cpst/spectral.hpp"
#include "cpst/symmetry.hpp"

namespace {

cpst::Tensor4 random_tensor(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  cpst::Tensor4 t(n);
  for (auto& z : t.entries()) z = cpst::Complex(g(rng), g(rng));
  return t;
}

void BM_Unfold(benchmark::State& state) {
  const auto t = random_tensor(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(cpst::unfold_matrix(t, cpst::kUnfolding3214));
}
BENCHMARK(BM_Unfold)->Arg(5)->Arg(10)->Arg(15);

void BM_ProjectCps(benchmark::State& state) {
  const auto t = random_tensor(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(cpst::project_cps(t));
}
BENCHMARK(BM_ProjectCps)->Arg(5)->Arg(10)->Arg(15);

void BM_HermitianEigen(benchmark::State& state) {
  const auto t = cpst::project_cps(random_tensor(static_cast<int>(state.range(0)), 3));
  const Eigen::MatrixXcd m = cpst::unfold_matrix(t, cpst::kSquareUnfolding);
  for (auto _ : state) benchmark::DoNotOptimize(cpst::hermitian_eigen(m));
}
BENCHMARK(BM_HermitianEigen)->Arg(5)->Arg(8)->Arg(10);

void BM_Smroa(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = cpst::generate_instance({cpst::InstanceKind::cps_orthonormal, n, 3, 4, {}});
  for (auto _ : state) benchmark::DoNotOptimize(cpst::smroa(inst.tensor));
}
BENCHMARK(BM_Smroa)->Arg(4)->Arg(7)->Arg(10);

void BM_FpcStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = cpst::generate_instance({cpst::InstanceKind::ps_pairs, n, 2, 5, {}});
  const Eigen::MatrixXd m = cpst::unfold_matrix(inst.tensor, cpst::kSquareUnfolding).real();
  for (auto _ : state) benchmark::DoNotOptimize(cpst::svt_symmetric(m, 0.1));
}
BENCHMARK(BM_FpcStep)->Arg(5)->Arg(10)->Arg(15);

}  // namespace

BENCHMARK_MAIN();
