#include <doctest.h>

#include <cmath>

#include "symcone/errors.hpp"
#include "symcone/jordan.hpp"
#include "symcone/lukacs.hpp"
#include "symcone/wishart.hpp"
#include "test_support.hpp"

using namespace symcone;
using namespace symcone::testing;

namespace {

ConeElement cone(const Element& x) { return ConeElement::certify(x); }

PermutationTestOptions quick(std::size_t permutations = 199) {
  PermutationTestOptions o;
  o.permutations = permutations;
  return o;
}

}  // namespace

TEST_CASE("split examples") {
  Rng rng(1);
  for (const auto& alg : axiom_algebras()) {
    const ConeElement x = cone(random_cone_element(alg, rng));
    const SplitPair s = split(x, x);
    CHECK(max_abs_diff(s.u, 0.5 * unit(alg)) < 1e-12);
    CHECK(relative_error(s.v.element(), 2.0 * x.element()) < 1e-15);
  }
  const Algebra s1 = Algebra::sym_real(1);
  const SplitPair s = split(cone(Element(s1, {1.0})), cone(Element(s1, {3.0})));
  CHECK(s.v.element()[0] == doctest::Approx(4.0));
  CHECK(s.u[0] == doctest::Approx(0.25));
  CHECK_THROWS_AS(split(cone(unit(s1)), cone(unit(Algebra::sym_real(2)))), AlgebraMismatch);
}

TEST_CASE("split reconstruction and complementarity") {
  Rng rng(2);
  for (const auto& alg : axiom_algebras()) {
    for (int t = 0; t < 100; ++t) {
      const ConeElement x = cone(random_cone_element(alg, rng));
      const ConeElement y = cone(random_cone_element(alg, rng));
      const SplitPair sx = split(x, y);
      const SplitPair sy = split(y, x);
      CHECK(relative_error(apply(p_map(sqrt_in_cone(sx.v)), sx.u), x.element()) < 1e-10);
      CHECK(max_abs_diff(sx.u + sy.u, unit(alg)) < 1e-10);
      CHECK(in_domain_D(sx.u));
    }
  }
}

TEST_CASE("split lands in D over many Wishart pairs") {
  const Algebra alg = Algebra::sym_real(3);
  const WishartParams w(4.0, cone(unit(alg)));
  const SampleBatch xs = sample(w, 100000, 1, streams::kFirstSample);
  const SampleBatch ys = sample(w, 100000, 1, streams::kSecondSample);
  std::size_t outside = 0;
  for (std::size_t i = 0; i < xs.samples.size(); ++i) outside += !in_domain_D(split(xs.samples[i], ys.samples[i]).u);
  CHECK(outside == 0);
}

TEST_CASE("split enforces the strict margin") {
  const Algebra s2 = Algebra::sym_real(2);
  const ConeElement x = cone(Element(s2, {1.0, 1e-11, 0.0}));
  CHECK_THROWS_AS(split(x, x), PreconditionError);
}

TEST_CASE("scalar split is the classical Lukacs pair") {
  const Algebra s1 = Algebra::sym_real(1);
  Rng rng(3);
  std::gamma_distribution<double> g(2.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double a = g(rng);
    const double b = g(rng);
    const SplitPair s = split(cone(Element(s1, {a})), cone(Element(s1, {b})));
    CHECK(s.v.element()[0] == a + b);
    CHECK(s.u[0] == doctest::Approx(a / (a + b)).epsilon(1e-15));
  }
}

TEST_CASE("forward experiment in the scalar case") {
  const Algebra s1 = Algebra::sym_real(1);
  const auto r = forward_experiment(2.0, 3.0, cone(unit(s1)), 1000, 7, 0.05, quick());
  CHECK(r.experiment == "forward");
  CHECK(r.n == 1000);
  CHECK(r.seed == 7);
  CHECK(r.permutations == 199);
  CHECK(r.method == DcorMethod::Exact);
  CHECK(r.p_value > 0.0);
  CHECK(r.p_value <= 1.0);
  CHECK(r.reject == (r.p_value <= 0.05));
  CHECK(r.decision() == (r.reject ? "reject" : "non-reject"));
  CHECK(max_abs_diff(r.mean_check.expected, 5.0 * unit(s1)) < 1e-14);
  CHECK(r.mean_check.within_3sigma());
}

TEST_CASE("forward experiments mostly accept") {
  const Algebra s2 = Algebra::sym_real(2);
  RepetitionSummary summary;
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    summary.reports.push_back(forward_experiment(3.0, 2.0, cone(unit(s2)), 1000, seed, 0.05, quick(99)));
  CHECK(summary.non_rejections() >= 8);
  CHECK(summary.rejections() + summary.non_rejections() == 10);
}

TEST_CASE("negative experiment in the scalar case rejects") {
  const Algebra s1 = Algebra::sym_real(1);
  const auto r = negative_experiment(2.0, 2.0, cone(unit(s1)), cone(4.0 * unit(s1)), 1000, 1, 0.05, quick());
  CHECK(r.experiment == "negative");
  CHECK(r.reject);
  CHECK(max_abs_diff(r.scale2, 4.0 * unit(s1)) == 0.0);
}

TEST_CASE("experiment preconditions") {
  const Algebra s2 = Algebra::sym_real(2);
  CHECK_THROWS_AS(negative_experiment(2.0, 2.0, cone(unit(s2)), cone(unit(s2)), 1000, 1, 0.05), PreconditionError);
  CHECK_THROWS_AS(negative_experiment(2.0, 2.0, cone(unit(s2)), cone(1.2 * unit(s2)), 1000, 1, 0.05),
                  PreconditionError);
  CHECK_THROWS_AS(forward_experiment(2.0, 2.0, cone(unit(s2)), 999, 1, 0.05), PreconditionError);
  CHECK_THROWS_AS(forward_experiment(2.0, 2.0, cone(unit(s2)), 1000, 1, 1.5), PreconditionError);
  CHECK_THROWS_AS(forward_experiment(0.5, 2.0, cone(unit(s2)), 1000, 1, 0.05), InvalidShape);
}

TEST_CASE("experiments are deterministic") {
  const Algebra s2 = Algebra::sym_real(2);
  PermutationTestOptions o = quick(49);
  const auto a = forward_experiment(2.0, 2.0, cone(unit(s2)), 1000, 5, 0.05, o);
  o.threads = 2;
  const auto b = forward_experiment(2.0, 2.0, cone(unit(s2)), 1000, 5, 0.05, o);
  CHECK(a.statistic == b.statistic);
  CHECK(a.p_value == b.p_value);
  CHECK(a.mean_check.observed == b.mean_check.observed);
}

TEST_CASE("density factorization") {
  for (const auto& alg : {Algebra::sym_real(2), Algebra::sym_real(3), Algebra::herm_complex(2), Algebra::lorentz(3)}) {
    const auto grid = random_cone_grid(alg, 200, 3);
    const double p = alg.shape_threshold() + 2.5;
    Rng rng(4);
    const ConeElement a = cone(random_with_spectrum(alg, rng, 0.5, 2.0));
    const FactorizationReport r = density_factorization_check(p, a, grid);
    CHECK(r.k == doctest::Approx(p - alg.dim_over_rank()).epsilon(1e-9));
    CHECK(r.k_error < 1e-8);
    CHECK(r.lambda_error < 1e-8);
    CHECK(max_abs_diff(r.lambda, -1.0 * a.element()) < 1e-8);
    CHECK(r.log_constant_error < 1e-8);
    CHECK(r.max_residual < 1e-8);
  }
  const Algebra s1 = Algebra::sym_real(1);
  const FactorizationReport r1 = density_factorization_check(1.0, cone(unit(s1)), random_cone_grid(s1, 50, 1));
  CHECK(std::abs(r1.k) < 1e-8);
  CHECK(r1.lambda[0] == doctest::Approx(-1.0).epsilon(1e-8));
  const Algebra s2 = Algebra::sym_real(2);
  const FactorizationReport r2 = density_factorization_check(3.0, cone(unit(s2)), random_cone_grid(s2, 200, 9));
  CHECK(r2.k == doctest::Approx(1.5).epsilon(1e-8));
}

TEST_CASE("density factorization rejects bad grids") {
  const Algebra s2 = Algebra::sym_real(2);
  std::vector<Element> collinear;
  for (int i = 1; i <= 20; ++i) collinear.push_back(static_cast<double>(i) * unit(s2));
  CHECK_THROWS_AS(density_factorization_check(3.0, cone(unit(s2)), collinear), DegenerateGrid);
  std::vector<Element> few(random_cone_grid(s2, 3, 1));
  CHECK_THROWS_AS(density_factorization_check(3.0, cone(unit(s2)), few), DegenerateGrid);
  auto grid = random_cone_grid(s2, 30, 1);
  grid.push_back(Element(s2, {1.0, -1.0, 0.0}));
  CHECK_THROWS_AS(density_factorization_check(3.0, cone(unit(s2)), grid), DomainError);
}
