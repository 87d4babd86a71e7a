#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "gradecert/gradmod/resolution.hpp"
#include "gradecert/morita/morita.hpp"
#include "gradecert/qhk/certify.hpp"
#include "gradecert/shell/spec_io.hpp"
#include "gradecert/weyl/coxeter.hpp"
#include "gradecert/weyl/kl.hpp"

using namespace gradecert;

namespace {

shell::AlgebraFile load(const std::string& name) {
  std::ifstream in(std::string(GRADECERT_CORPUS_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return shell::parse_algebra_spec(ss.str());
}

void BM_GradedExt(benchmark::State& state) {
  const auto f = load("06_a4_path.json");
  const auto sys = gmod::simples_and_projectives(f.algebra);
  for (auto _ : state)
    for (const auto& m : sys->simples)
      for (const auto& n : sys->simples) benchmark::DoNotOptimize(gmod::graded_ext(m, n, 3, *sys));
}
BENCHMARK(BM_GradedExt)->Unit(benchmark::kMillisecond);

void BM_ImplicationAudit(benchmark::State& state) {
  const auto f = load("27_a5_path_f11.json");
  for (auto _ : state) benchmark::DoNotOptimize(qhk::implication_audit(f.algebra, *f.poset));
}
BENCHMARK(BM_ImplicationAudit)->Unit(benchmark::kMillisecond);

void BM_MoritaCorner(benchmark::State& state) {
  const auto f = load("03_a3_path.json");
  const auto m = morita::inflate(f.algebra, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    morita::MoritaCorner c(m, morita::matrix_unit(*f.algebra, state.range(0), 0, 0, f.algebra->unit()));
    benchmark::DoNotOptimize(morita::verify_equivalence_pair(c).ok());
  }
}
BENCHMARK(BM_MoritaCorner)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CoxBall(benchmark::State& state) {
  const auto g = weyl::CoxGroup::parse("~A2");
  for (auto _ : state) benchmark::DoNotOptimize(weyl::CoxBall(g, state.range(0)).size());
}
BENCHMARK(BM_CoxBall)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_KL(benchmark::State& state) {
  const auto g = weyl::CoxGroup::parse("A3");
  weyl::CoxBall ball(g, 6);
  for (auto _ : state) benchmark::DoNotOptimize(weyl::KLTable(ball).at(0, ball.size() - 1));
}
BENCHMARK(BM_KL)->Unit(benchmark::kMillisecond);

void BM_ParabolicSingular(benchmark::State& state) {
  const auto g = weyl::CoxGroup::parse("~A2");
  weyl::CoxBall ball(g, 8);
  for (auto _ : state)
    benchmark::DoNotOptimize(weyl::parabolic_singular_posets(ball, {0}, {1}, weyl::Sign::Minus).elements.size());
}
BENCHMARK(BM_ParabolicSingular)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
