#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "symcone/cone.hpp"
#include "symcone/independence.hpp"
#include "symcone/jordan.hpp"
#include "symcone/lukacs.hpp"
#include "symcone/wishart.hpp"

using namespace symcone;

namespace {

// rank argument: SYM_REAL(r)
Algebra sym(const benchmark::State& state) { return Algebra::sym_real(static_cast<std::size_t>(state.range(0))); }

Element noise(const Algebra& alg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Element x = Element::zero(alg);
  for (std::size_t k = 0; k < alg.dim(); ++k) x[k] = n(rng);
  return x;
}

Element cone_point(const Algebra& alg, std::uint64_t seed) {
  return spectral_map(noise(alg, seed), [](double v) { return std::abs(v) + 0.5; });
}

void BM_JordanProduct(benchmark::State& state) {
  const Algebra alg = sym(state);
  const Element x = noise(alg, 1);
  const Element y = noise(alg, 2);
  for (auto _ : state) benchmark::DoNotOptimize(jordan_product(x, y));
}
BENCHMARK(BM_JordanProduct)->Arg(2)->Arg(3)->Arg(5)->Arg(8);

void BM_PMap(benchmark::State& state) {
  const Algebra alg = sym(state);
  const Element x = noise(alg, 3);
  for (auto _ : state) benchmark::DoNotOptimize(p_map(x));
}
BENCHMARK(BM_PMap)->Arg(2)->Arg(3)->Arg(5)->Arg(8);

void BM_Eigenvalues(benchmark::State& state) {
  const Algebra alg = sym(state);
  const Element x = noise(alg, 4);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(x));
}
BENCHMARK(BM_Eigenvalues)->Arg(2)->Arg(3)->Arg(5)->Arg(8);

void BM_Sample(benchmark::State& state) {
  const Algebra alg = sym(state);
  const WishartParams w(static_cast<double>(alg.rank()) + 1.0, ConeElement::certify(unit(alg)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(w, 1000, ++seed, streams::kFirstSample));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Sample)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Split(benchmark::State& state) {
  const Algebra alg = sym(state);
  const ConeElement x = ConeElement::certify(cone_point(alg, 5));
  const ConeElement y = ConeElement::certify(cone_point(alg, 6));
  for (auto _ : state) benchmark::DoNotOptimize(split(x, y));
}
BENCHMARK(BM_Split)->Arg(2)->Arg(3)->Arg(5)->Arg(8);

void BM_ProjectedPermutationTest(benchmark::State& state) {
  const Algebra alg = Algebra::sym_real(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Element> a;
  std::vector<Element> b;
  for (std::size_t i = 0; i < n; ++i) {
    a.push_back(noise(alg, 10 + 2 * i));
    b.push_back(noise(alg, 11 + 2 * i));
  }
  const FeatureMatrix x = FeatureMatrix::from_elements(a);
  const FeatureMatrix y = FeatureMatrix::from_elements(b);
  PermutationTestOptions opt;
  opt.method = DcorMethod::Projected;
  opt.permutations = 20;
  for (auto _ : state) benchmark::DoNotOptimize(dcor_permutation_test(x, y, opt, 7));
}
BENCHMARK(BM_ProjectedPermutationTest)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
