#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "pvn/eigensolve.hpp"
#include "pvn/fgh.hpp"
#include "pvn/vn_basis.hpp"

using namespace pvn;

namespace {

struct Setup {
  GridSpec grid;
  VnLatticeSpec lattice;
};

Setup square(int side) {
  const int n = side * side;
  const GridSpec grid = make_grid(-10.0, 20.0, n, 1.0);
  return {grid, make_lattice(grid, side, side, std::nullopt)};
}

void BM_KineticMatrix(benchmark::State& state) {
  const GridSpec g = make_grid(-10.0, 20.0, static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(kinetic_matrix(g, 1.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KineticMatrix)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_Overlap(benchmark::State& state) {
  const Setup s = square(static_cast<int>(state.range(0)));
  const Eigen::MatrixXcd g = gaussian_samples(s.lattice);
  for (auto _ : state) benchmark::DoNotOptimize(overlap_matrix(g));
  state.SetComplexityN(s.grid.n_points());
}
BENCHMARK(BM_Overlap)->DenseRange(8, 32, 8)->Complexity(benchmark::oNCubed);

void BM_GeneralizedEig(benchmark::State& state) {
  const Setup s = square(static_cast<int>(state.range(0)));
  const auto pencil = pvn_hamiltonian(gaussian_samples(s.lattice),
                                      fgh_hamiltonian(s.grid, Harmonic{1.0, 1.0}).matrix());
  for (auto _ : state) benchmark::DoNotOptimize(generalized_hermitian_eig(pencil.H, pencil.s));
  state.SetComplexityN(s.grid.n_points());
}
BENCHMARK(BM_GeneralizedEig)->DenseRange(8, 24, 8)->Complexity(benchmark::oNCubed);

void BM_BvnRestrict(benchmark::State& state) {
  const Setup s = square(24);
  const BvnReducer reducer(gaussian_samples(s.lattice),
                           fgh_hamiltonian(s.grid, Harmonic{1.0, 1.0}).matrix());
  std::vector<int> kept(static_cast<std::size_t>(state.range(0)));
  std::iota(kept.begin(), kept.end(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(reducer.restricted(kept));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BvnRestrict)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
