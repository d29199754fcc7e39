// Microbenchmarks for the hot paths: basis/rule construction, the two matrix
// assembly routes, the Galerkin solve, and the pointwise oracles.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fracspec/abel_solver.hpp"
#include "fracspec/frac_ops.hpp"
#include "fracspec/jacobi_basis.hpp"

using namespace fracspec;

namespace {

const JacobiBasis& shared_basis() {
  static JacobiBasis basis({0.0, 1.0}, {0.0, 0.0}, 64);
  return basis;
}

void BM_basis_construction(benchmark::State& state) {
  const int deg = int(state.range(0));
  for (auto _ : state) {
    JacobiBasis basis({0.0, 1.0}, {0.25, -0.5}, deg);
    benchmark::DoNotOptimize(basis.norm_constant(deg));
  }
}
BENCHMARK(BM_basis_construction)->Arg(16)->Arg(64)->Arg(256);

void BM_quadrature_rule(benchmark::State& state) {
  const int order = int(state.range(0));
  const JacobiBasis& basis = shared_basis();
  for (auto _ : state) {
    QuadratureRule rule = basis.quadrature_rule(order);
    benchmark::DoNotOptimize(rule.nodes.data());
  }
}
BENCHMARK(BM_quadrature_rule)->Arg(32)->Arg(128)->Arg(512);

void BM_operator_matrix_exact(benchmark::State& state) {
  const int n = int(state.range(0));
  const JacobiBasis& basis = shared_basis();
  for (auto _ : state) {
    OperatorMatrix G = operator_matrix(basis, 0.5, OperatorKind::integral, n);
    benchmark::DoNotOptimize(G.entries.data());
  }
}
BENCHMARK(BM_operator_matrix_exact)->Arg(8)->Arg(24);

void BM_operator_matrix_quadrature(benchmark::State& state) {
  const int n = int(state.range(0));
  const JacobiBasis& basis = shared_basis();
  for (auto _ : state) {
    OperatorMatrix G = operator_matrix_quadrature(basis, 0.5, OperatorKind::integral, n);
    benchmark::DoNotOptimize(G.entries.data());
  }
}
BENCHMARK(BM_operator_matrix_quadrature)->Arg(24)->Arg(48);

void BM_galerkin_solve(benchmark::State& state) {
  const int n = int(state.range(0));
  const JacobiBasis& basis = shared_basis();
  const OperatorMatrix G = operator_matrix(basis, 0.5, OperatorKind::integral, n);
  CoefficientVector f;
  f.basis_id = basis.id();
  f.values.assign(std::size_t(n) + 1, 0.0);
  f.values[0] = 0.5;
  f.values[1] = std::sqrt(3.0) / 6.0;
  for (auto _ : state) {
    SolveResult res = solve(basis, G, f, n, {});
    benchmark::DoNotOptimize(res.psi.values.data());
  }
}
BENCHMARK(BM_galerkin_solve)->Arg(16)->Arg(32);

void BM_pointwise_integral(benchmark::State& state) {
  auto f = [](double t) { return std::cos(3.0 * t); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(frac_integral_pointwise(f, 0.5, 0.0, 0.8));
  }
}
BENCHMARK(BM_pointwise_integral);

void BM_weighted_adjoint(benchmark::State& state) {
  const JacobiBasis& basis = shared_basis();
  auto h = [](double t) { return std::cos(3.0 * t); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(weighted_adjoint_apply(basis, 0.5, h, 0.4));
  }
}
BENCHMARK(BM_weighted_adjoint);

void BM_basis_norm_growth(benchmark::State& state) {
  const int n = int(state.range(0));
  const JacobiBasis& basis = shared_basis();
  for (auto _ : state) {
    auto out = basis.basis_norm_growth(4.0, n);
    benchmark::DoNotOptimize(out.first.data());
  }
}
BENCHMARK(BM_basis_norm_growth)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
