#include <benchmark/benchmark.h>

#include "ptspec/classify.hpp"
#include "ptspec/dense_eigen.hpp"
#include "ptspec/dynamics.hpp"
#include "ptspec/shooting.hpp"

using namespace ptspec;

namespace {

void BM_AssembleFivePoint(benchmark::State& state) {
  const Potential v = Potential::make(Family::CubicOsc);
  const Grid g = Grid::full_line(10.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_hamiltonian(v, g, Stencil::FivePoint));
}
BENCHMARK(BM_AssembleFivePoint)->Arg(801)->Arg(4001);

void BM_DenseRealSymmetric(benchmark::State& state) {
  const Potential v = Potential::custom("x^2", [](double x) { return cplx(x * x); });
  const BandedMatrix m = assemble_hamiltonian(v, Grid::full_line(10.0, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(dense_eigenvalues(m));
}
BENCHMARK(BM_DenseRealSymmetric)->Arg(801)->Arg(4001)->Unit(benchmark::kMillisecond);

void BM_DensePtReal(benchmark::State& state) {
  const BandedMatrix m = assemble_hamiltonian(Potential::make(Family::CubicOsc),
                                              Grid::full_line(10.0, static_cast<int>(state.range(0))),
                                              Stencil::FivePoint);
  for (auto _ : state) benchmark::DoNotOptimize(dense_eigenvalues(m));
}
BENCHMARK(BM_DensePtReal)->Arg(201)->Arg(801)->Unit(benchmark::kMillisecond);

void BM_DenseGeneral(benchmark::State& state) {
  const BandedMatrix m = assemble_hamiltonian(Potential::make(Family::CubicOsc),
                                              Grid::full_line(10.0, static_cast<int>(state.range(0))),
                                              Stencil::FivePoint);
  DenseOptions o;
  o.path = EigenPath::General;
  for (auto _ : state) benchmark::DoNotOptimize(dense_eigenvalues(m, o));
}
BENCHMARK(BM_DenseGeneral)->Arg(201)->Arg(801)->Unit(benchmark::kMillisecond);

void BM_ShootingResidual(benchmark::State& state) {
  const Shooter s(Potential::make(Family::PoeschlTeller1), Grid::full_line(15.0, 601));
  for (auto _ : state) benchmark::DoNotOptimize(s.residual(-3.7));
}
BENCHMARK(BM_ShootingResidual)->Unit(benchmark::kMicrosecond);

void BM_ShootingRefine(benchmark::State& state) {
  const Shooter s(Potential::make(Family::PoeschlTeller1), Grid::full_line(15.0, 601));
  for (auto _ : state) benchmark::DoNotOptimize(s.refine(-3.7));
}
BENCHMARK(BM_ShootingRefine)->Unit(benchmark::kMillisecond);

void BM_CrankNicolson(benchmark::State& state) {
  const Potential v = Potential::make(Family::PoeschlTeller1);
  const Grid g = Grid::full_line(15.0, static_cast<int>(state.range(0)));
  const WaveState psi0 = gaussian_packet(g, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(crank_nicolson_propagate(v, g, psi0, 1e-3, 100));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_CrankNicolson)->Arg(601)->Arg(3001)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
