#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "symcone/errors.hpp"
#include "symcone/jordan.hpp"
#include "symcone/wishart.hpp"
#include "test_support.hpp"

using namespace symcone;
using namespace symcone::testing;

namespace {

ConeElement identity_scale(const Algebra& alg, double k = 1.0) { return ConeElement::certify(k * unit(alg)); }

double density(const WishartParams& w, const Element& y) { return std::exp(log_density(w, y)); }

struct MonteCarlo {
  double mean = 0.0;
  double standard_error = 0.0;
};

template <typename F>
MonteCarlo monte_carlo(const SampleBatch& batch, F f) {
  double s = 0.0;
  double s2 = 0.0;
  for (const auto& y : batch.samples) {
    const double v = f(y.element());
    s += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(batch.samples.size());
  const double m = s / n;
  return {m, std::sqrt(std::max(0.0, s2 / n - m * m) / n)};
}

}  // namespace

TEST_CASE("multivariate gamma") {
  CHECK(multivariate_gamma(Algebra::sym_real(1), 1.0) == doctest::Approx(1.0));
  CHECK(multivariate_gamma(Algebra::sym_real(1), 4.5) == doctest::Approx(std::tgamma(4.5)).epsilon(1e-13));
  // Sym2 in the orthonormal basis: sqrt(2 pi) G(p) G(p - 1/2).
  const double p = 3.0;
  CHECK(multivariate_gamma(Algebra::sym_real(2), p) ==
        doctest::Approx(std::sqrt(2.0 * std::numbers::pi) * std::tgamma(p) * std::tgamma(p - 0.5)).epsilon(1e-13));
  CHECK(log_multivariate_gamma(Algebra::sym_real(8), 12.0) ==
        doctest::Approx(std::log(multivariate_gamma(Algebra::sym_real(8), 12.0))).epsilon(1e-12));
  CHECK(std::isfinite(log_multivariate_gamma(Algebra::sym_real(8), 400.0)));
  CHECK_THROWS_AS(multivariate_gamma(Algebra::sym_real(2), 0.5), PoleError);
  CHECK_THROWS_AS(multivariate_gamma(Algebra::herm_complex(3), 2.0), PoleError);
  CHECK_NOTHROW(multivariate_gamma(Algebra::herm_complex(3), 2.01));
}

TEST_CASE("params validation") {
  const Algebra s2 = Algebra::sym_real(2);
  CHECK_THROWS_AS(WishartParams(0.5, identity_scale(s2)), InvalidShape);
  CHECK_THROWS_AS(WishartParams(0.2, identity_scale(s2)), InvalidShape);
  try {
    WishartParams(0.2, identity_scale(s2));
  } catch (const InvalidShape& e) {
    CHECK(std::string(e.what()).find("0.5") != std::string::npos);
  }
  CHECK_NOTHROW(WishartParams(0.51, identity_scale(s2)));
}

TEST_CASE("log density") {
  const Algebra s1 = Algebra::sym_real(1);
  const WishartParams w(1.0, identity_scale(s1));
  CHECK(log_density(w, Element(s1, {2.0})) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(log_density(w, Element(s1, {-1.0})) == -std::numeric_limits<double>::infinity());
  const Algebra s2 = Algebra::sym_real(2);
  const WishartParams w2(3.0, identity_scale(s2));
  CHECK(log_density(w2, Element(s2, {1.0, -1.0, 0.0})) == -std::numeric_limits<double>::infinity());
  // Scalar case is Gamma(p, rate a).
  const WishartParams g(2.5, ConeElement::certify(Element(s1, {1.7})));
  const double y = 0.9;
  const double want = 2.5 * std::log(1.7) - std::lgamma(2.5) + 1.5 * std::log(y) - 1.7 * y;
  CHECK(log_density(g, Element(s1, {y})) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("density normalizes") {
  for (double p : {3.0}) {
    const WishartParams w(p, identity_scale(Algebra::sym_real(2)));
    CHECK(integrate_sym2_cone([&](const Element& y) { return density(w, y); }) == doctest::Approx(1.0).epsilon(1e-5));
  }
  const WishartParams ws(2.0, ConeElement::certify(Element(Algebra::sym_real(2), {1.5, 0.8, 0.0})));
  CHECK(integrate_sym2_cone([&](const Element& y) { return density(ws, y); }) == doctest::Approx(1.0).epsilon(1e-5));
  const WishartParams wh(2.5, identity_scale(Algebra::herm_complex(2), 2.0));
  CHECK(integrate_herm2_cone([&](const Element& y) { return density(wh, y); }) == doctest::Approx(1.0).epsilon(1e-5));
  for (int n : {2, 3, 5}) {
    const Algebra l = Algebra::lorentz(n);
    const WishartParams wl(l.shape_threshold() + 1.3, identity_scale(l, 1.5));
    CHECK(integrate_lorentz_cone(l, [&](const Element& y) { return density(wl, y); }) ==
          doctest::Approx(1.0).epsilon(1e-5));
  }
}

TEST_CASE("laplace transform") {
  const Algebra s2 = Algebra::sym_real(2);
  const WishartParams w(3.0, identity_scale(s2));
  CHECK(laplace_transform(w, Element::zero(s2)) == 1.0);
  CHECK(laplace_transform(w, unit(s2)) == doctest::Approx(1.0 / 64.0).epsilon(1e-14));
  CHECK_THROWS_AS(laplace_transform(w, -2.0 * unit(s2)), OutOfRegion);
  CHECK_THROWS_AS(laplace_transform(w, unit(Algebra::sym_real(3))), AlgebraMismatch);
  // Cubature of exp(-<t, y>) against the density.
  const Element t(s2, {0.4, 0.1, 0.3});
  const double cub = integrate_sym2_cone([&](const Element& y) { return std::exp(-inner(t, y)) * density(w, y); });
  CHECK(laplace_transform(w, t) == doctest::Approx(cub).epsilon(1e-6));
  const Algebra l3 = Algebra::lorentz(3);
  const WishartParams wl(2.5, identity_scale(l3));
  const double tl = 0.3;
  const double cl = integrate_lorentz_cone(
      l3, [&](const Element& y) { return std::exp(-inner(tl * unit(l3), y)) * density(wl, y); });
  CHECK(laplace_transform(wl, tl * unit(l3)) == doctest::Approx(cl).epsilon(1e-6));
}

TEST_CASE("mean") {
  const Algebra s1 = Algebra::sym_real(1);
  CHECK(mean(WishartParams(2.0, identity_scale(s1)))[0] == doctest::Approx(2.0));
  const Algebra s2 = Algebra::sym_real(2);
  CHECK(max_abs_diff(mean(WishartParams(3.0, identity_scale(s2))), 3.0 * unit(s2)) < 1e-14);
  // Lorentz: the gradient of ln det at e is trace-dual to 2e under the dot product.
  const Algebra l2 = Algebra::lorentz(2);
  CHECK(max_abs_diff(mean(WishartParams(3.0, identity_scale(l2))), 6.0 * unit(l2)) < 1e-14);
  const Element c(l2, {2.0, 0.0, 0.0});
  const double mc = integrate_lorentz_cone(l2, [&](const Element& y) {
    return inner(c, y) * density(WishartParams(3.0, identity_scale(l2)), y);
  });
  CHECK(inner(c, mean(WishartParams(3.0, identity_scale(l2)))) == doctest::Approx(mc).epsilon(1e-6));
}

TEST_CASE("sampler moments") {
  Rng rng(1);
  std::vector<Algebra> algs = {Algebra::sym_real(1), Algebra::sym_real(3), Algebra::herm_complex(2),
                               Algebra::herm_complex(3), Algebra::lorentz(2), Algebra::lorentz(4)};
  for (const auto& alg : algs) {
    const ConeElement a = ConeElement::certify(random_with_spectrum(alg, rng, 0.5, 2.0));
    const WishartParams w(alg.shape_threshold() + 1.7, a);
    const SampleBatch batch = sample(w, 20000, 5, streams::kFirstSample);
    const Element mu = mean(w);
    const auto var = coordinate_variance(w);
    for (std::size_t k = 0; k < alg.dim(); ++k) {
      const MonteCarlo m = monte_carlo(batch, [k](const Element& y) { return y[k]; });
      CHECK(std::abs(m.mean - mu[k]) < 4.5 * std::sqrt(var[k] / 20000.0));
      const MonteCarlo v = monte_carlo(batch, [&](const Element& y) { return (y[k] - mu[k]) * (y[k] - mu[k]); });
      CHECK(std::abs(v.mean - var[k]) < 4.5 * v.standard_error);
    }
    for (const auto& y : batch.samples) REQUIRE(contains_open(y.element()));
  }
}

TEST_CASE("sampler laplace cross-check") {
  for (const auto& alg : {Algebra::herm_complex(2), Algebra::lorentz(3), Algebra::sym_real(4)}) {
    const WishartParams w(alg.shape_threshold() + 0.8, identity_scale(alg, 1.5));
    const SampleBatch batch = sample(w, 20000, 9, streams::kSecondSample);
    const Element t = 0.4 * unit(alg);
    const MonteCarlo m = monte_carlo(batch, [&](const Element& y) { return std::exp(-inner(t, y)); });
    CHECK(std::abs(m.mean - laplace_transform(w, t)) < 4.5 * m.standard_error);
  }
}

TEST_CASE("sampler determinism") {
  const WishartParams w(4.0, identity_scale(Algebra::sym_real(3)));
  const SampleBatch a = sample(w, 500, 42, 0);
  const SampleBatch b = sample(w, 500, 42, 0, 3);
  const SampleBatch c = sample(w, 500, 42, 1);
  const SampleBatch d = sample(w, 300, 42, 0);
  REQUIRE(a.samples.size() == 500);
  bool differs = false;
  for (std::size_t i = 0; i < 500; ++i) {
    CHECK(a.samples[i].element() == b.samples[i].element());
    differs = differs || !(a.samples[i].element() == c.samples[i].element());
    if (i < 300) CHECK(a.samples[i].element() == d.samples[i].element());
  }
  CHECK(differs);
  CounterRng r1(42, 0, 7);
  CounterRng r2(42, 0, 7);
  CHECK(draw(w, r1) == draw(w, r2));
}

TEST_CASE("sampler near the shape threshold stays in the cone") {
  for (const auto& alg : {Algebra::sym_real(3), Algebra::herm_complex(2), Algebra::lorentz(3)}) {
    const WishartParams w(alg.shape_threshold() + 0.05, identity_scale(alg));
    const SampleBatch batch = sample(w, 2000, 3, 0);
    for (const auto& y : batch.samples) REQUIRE(y.min_eigenvalue() > 0.0);
  }
}

TEST_CASE("laplace transform with anisotropic scale matches cubature") {
  const Algebra s2 = Algebra::sym_real(2);
  const WishartParams w(2.5, ConeElement::certify(Element(s2, {1.5, 0.8, 0.4})));
  const Element t(s2, {0.2, 0.7, -0.5});
  const double cub = integrate_sym2_cone([&](const Element& y) { return std::exp(-inner(t, y)) * density(w, y); });
  CHECK(laplace_transform(w, t) == doctest::Approx(cub).epsilon(1e-6));
}

TEST_CASE("log density decomposition") {
  Rng rng(2);
  for (const auto& alg : axiom_algebras()) {
    const ConeElement a = ConeElement::certify(random_with_spectrum(alg, rng, 0.5, 2.0));
    const WishartParams w(alg.shape_threshold() + 2.0, a);
    for (int t = 0; t < 20; ++t) {
      const Element y = random_cone_element(alg, rng);
      const Element z = random_cone_element(alg, rng);
      const double lhs = log_density(w, y) - log_density(w, z);
      const double rhs =
          -inner(a, y - z) + (w.shape() - alg.dim_over_rank()) * (std::log(det(y)) - std::log(det(z)));
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("scale equivariance") {
  Rng rng(3);
  for (const auto& alg : {Algebra::sym_real(3), Algebra::herm_complex(2), Algebra::lorentz(3)}) {
    const ConeElement a = ConeElement::certify(random_with_spectrum(alg, rng, 0.5, 2.0));
    const double p = alg.shape_threshold() + 1.5;
    const WishartParams wa(p, a);
    const WishartParams we(p, ConeElement::certify(unit(alg)));
    const SampleBatch direct = sample(wa, 20000, 11, 0);
    const SampleBatch unit_batch = sample(we, 20000, 12, 0);
    const LinearMap transport = p_map(inv_sqrt_in_cone(a));
    const Element t = 0.3 * unit(alg);
    double ld = 0.0;
    double lt = 0.0;
    Element md = Element::zero(alg);
    Element mt = Element::zero(alg);
    for (std::size_t i = 0; i < 20000; ++i) {
      const Element moved = apply(transport, unit_batch.samples[i].element());
      md += direct.samples[i].element();
      mt += moved;
      ld += std::exp(-inner(t, direct.samples[i].element()));
      lt += std::exp(-inner(t, moved));
    }
    md *= 1.0 / 20000.0;
    mt *= 1.0 / 20000.0;
    const auto var = coordinate_variance(wa);
    for (std::size_t k = 0; k < alg.dim(); ++k) CHECK(std::abs(md[k] - mt[k]) < 3.0 * std::sqrt(2.0 * var[k] / 20000.0));
    CHECK(ld / lt == doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("scalar sampler is exponential") {
  const Algebra s1 = Algebra::sym_real(1);
  const SampleBatch batch = sample(WishartParams(1.0, identity_scale(s1)), 100000, 1, 0);
  std::vector<double> x;
  x.reserve(batch.samples.size());
  for (const auto& y : batch.samples) x.push_back(y.element()[0]);
  std::sort(x.begin(), x.end());
  double d = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double cdf = 1.0 - std::exp(-x[i]);
    d = std::max({d, std::abs(cdf - i / n), std::abs((i + 1) / n - cdf)});
  }
  CHECK(d < 1.358 / std::sqrt(n));
}
