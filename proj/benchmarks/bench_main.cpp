#include <benchmark/benchmark.h>

#include "folia/foliation.hpp"
#include "folia/local_structure.hpp"
#include "folia/parse.hpp"
#include "folia/poly.hpp"
#include "folia/pullback.hpp"
#include "folia/singular.hpp"

namespace {

using namespace folia;

MultiPoly P(const char* text, std::size_t n = 2) { return parse_polynomial(text, projective_names(n)); }

void BM_PolyMultiply(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const MultiPoly a = pow(P("X + 2*Y - i*Z + 1/3"), n);
  const MultiPoly b = pow(P("X - Y + (1 + i)*Z"), n);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.counters["terms"] = static_cast<double>(a.term_count());
}
BENCHMARK(BM_PolyMultiply)->Arg(4)->Arg(8)->Arg(12);

void BM_Resultant(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const VariableNames xy = affine_names();
  const MultiPoly p = pow(parse_polynomial("x + y + i", xy), n) + parse_polynomial("x*y - 2", xy);
  const MultiPoly q = pow(parse_polynomial("x - i*y + 1", xy), n) - parse_polynomial("y^2", xy);
  for (auto _ : state) benchmark::DoNotOptimize(resultant(p, q, 1));
}
BENCHMARK(BM_Resultant)->Arg(3)->Arg(5)->Arg(8);

void BM_BuildEtaFermat(benchmark::State& state) {
  const BranchedMap f =
      make_branched_map(P("z0^6 - z3^6", 3), P("z1^4 - z3^4", 3), P("z2^3 - z3^3", 3), 2, 3, 4);
  const ThreeLineFoliation g = make_three_line(P("X - Y"), P("Y - Z"));
  for (auto _ : state) benchmark::DoNotOptimize(build_eta(f, g));
}
BENCHMARK(BM_BuildEtaFermat)->Unit(benchmark::kMillisecond);

void BM_Singularities(benchmark::State& state) {
  ProjectiveFoliation f = example_family(reference_parameters());
  if (state.range(0) > 1) f = ramified_cover_pullback(f, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(all_singularities_P2(f));
}
BENCHMARK(BM_Singularities)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_LineExclusion(benchmark::State& state) {
  const ProjectiveFoliation f = example_family(reference_parameters());
  for (auto _ : state) benchmark::DoNotOptimize(invariant_line_exclusion(f));
}
BENCHMARK(BM_LineExclusion)->Unit(benchmark::kMillisecond);

void BM_QuasiHomogeneous(benchmark::State& state) {
  const ThreeLineFoliation g = make_three_line(P("X - Y"), P("Y - Z"));
  const PolyForm eta = local_model_eta(g, 2, 3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(quasi_homog_analyze(eta, 2, 3, 4));
}
BENCHMARK(BM_QuasiHomogeneous)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
