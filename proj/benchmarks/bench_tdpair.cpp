#include <benchmark/benchmark.h>

#include "tdpair/blocktri.hpp"
#include "tdpair/construct.hpp"
#include "tdpair/overlaps.hpp"
#include "tdpair/spectral.hpp"

namespace {

tdpair::ModelParams params(int diameter) {
  tdpair::ModelParams p;
  p.diameter = diameter;
  p.alpha = {0.0, 0.53};
  p.alpha_star = {0.0, 0.71};
  p.phi = {0.0, 0.437};
  p.theta = 0.4;
  return p;
}

void BM_build_w0(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tdpair::build_w0(p));
}
BENCHMARK(BM_build_w0)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

void BM_tridiagonal_check(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  const auto s = tdpair::derive(p);
  const auto w0 = tdpair::build_w0(p);
  const auto w1 = tdpair::build_w1(p);
  for (auto _ : state)
    benchmark::DoNotOptimize(tdpair::check_tridiagonal_relations(w0, w1, s));
}
BENCHMARK(BM_tridiagonal_check)->Arg(4)->Arg(6)->Arg(8);

void BM_eigenbasis(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(tdpair::eigenbasis(p, tdpair::BasisKind::psi));
}
BENCHMARK(BM_eigenbasis)->Arg(6)->Arg(8)->Arg(10);

void BM_entries_recursive(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tdpair::entries_recursive(p));
}
BENCHMARK(BM_entries_recursive)->Arg(4)->Arg(6)->Arg(8);

void BM_entries_oracle(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tdpair::entries_by_basis_change(p));
}
BENCHMARK(BM_entries_oracle)->Arg(4)->Arg(6);

void BM_overlap_table(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tdpair::overlap_table(p));
}
BENCHMARK(BM_overlap_table)->Arg(4)->Arg(6);

void BM_orthogonality(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  const auto table = tdpair::overlap_table(p);
  const auto norms = tdpair::norm_coeffs(p, false);
  const auto tilde = tdpair::norm_coeffs(p, true);
  for (auto _ : state)
    benchmark::DoNotOptimize(tdpair::weights_and_orthogonality(p, table, norms, tilde));
}
BENCHMARK(BM_orthogonality)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
