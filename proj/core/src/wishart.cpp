#include "symcone/wishart.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "symcone/errors.hpp"
#include "symcone/jordan.hpp"
#include "symcone/parallel.hpp"

namespace symcone {

namespace {

constexpr int kMaxRedraws = 64;

/// r / <e, e>: 1 for matrix kinds, 2 for LORENTZ.
double trace_form_ratio(const Algebra& alg) {
  const Element e = unit(alg);
  return alg.rank() / inner(e, e);
}

Element draw_standard_matrix(const Algebra& alg, double p, CounterRng& rng) {
  const int r = alg.order();
  const double d = alg.peirce_degree();
  const bool complex_kind = alg.kind() == AlgebraKind::HermComplex;
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

  // Lower-triangular Bartlett factor.
  HermitianMatrix t(r);
  for (int i = 0; i < r; ++i) {
    std::gamma_distribution<double> g(p - 0.5 * i * d, 1.0);
    t(i, i) = std::sqrt(g(rng));
    for (int j = 0; j < i; ++j) {
      const double re = gauss(rng);
      const double im = complex_kind ? gauss(rng) : 0.0;
      t(i, j) = {re, im};
    }
  }
  HermitianMatrix y(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j <= i; ++j) {
      std::complex<double> acc = 0.0;
      for (int k = 0; k <= j; ++k) acc += t(i, k) * std::conj(t(j, k));
      y(i, j) = acc;
      y(j, i) = std::conj(acc);
    }
  return from_matrix(alg, y);
}

Element draw_standard_lorentz(const Algebra& alg, double p, CounterRng& rng) {
  // Under gamma_{p,e}: x0 ~ Gamma(2p), (|xbar| / x0)^2 ~ Beta(n/2, p - (n-1)/2),
  // direction of xbar uniform on the sphere.
  const int n = alg.order();
  std::gamma_distribution<double> g0(2.0 * p, 1.0);
  std::gamma_distribution<double> ga(0.5 * n, 1.0);
  std::gamma_distribution<double> gb(p - 0.5 * (n - 1), 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const double x0 = g0(rng);
  const double u = ga(rng);
  const double v = gb(rng);
  const double ratio = std::sqrt(u / (u + v));

  std::vector<double> dir(static_cast<std::size_t>(n));
  double sq = 0.0;
  do {
    sq = 0.0;
    for (auto& c : dir) {
      c = gauss(rng);
      sq += c * c;
    }
  } while (sq == 0.0);
  const double scale = x0 * ratio / std::sqrt(sq);

  std::vector<double> coords(alg.dim());
  coords[0] = x0;
  for (int i = 0; i < n; ++i) coords[static_cast<std::size_t>(i) + 1] = dir[static_cast<std::size_t>(i)] * scale;
  return Element(alg, std::move(coords));
}

}  // namespace

WishartParams::WishartParams(double shape, ConeElement scale)
    : shape_(shape),
      scale_(std::move(scale)),
      log_det_scale_(log_det(scale_.element())),
      scale_inv_sqrt_(inv_sqrt_in_cone(scale_.element())) {
  const double threshold = algebra().shape_threshold();
  if (!(shape_ > threshold) || !std::isfinite(shape_)) {
    std::ostringstream os;
    os << "Wishart shape p = " << shape_ << " must exceed dim/r - 1 = " << threshold << " on "
       << algebra().to_string();
    throw InvalidShape(os.str());
  }
}

double log_multivariate_gamma(const Algebra& alg, double p) {
  const int r = alg.rank();
  const double d = alg.peirce_degree();
  double acc = 0.5 * static_cast<double>(alg.dim() - static_cast<std::size_t>(r)) *
               std::log(2.0 * std::numbers::pi);
  for (int j = 0; j < r; ++j) {
    const double arg = p - 0.5 * j * d;
    if (!(arg > 0.0)) {
      std::ostringstream os;
      os << "multivariate gamma pole on " << alg.to_string() << ": p - " << j << "*d/2 = " << arg
         << " (need p > " << 0.5 * (r - 1) * d << ")";
      throw PoleError(os.str());
    }
    acc += std::lgamma(arg);
  }
  const double s = trace_form_ratio(alg);
  if (s != 1.0) acc += (r * p - 0.5 * static_cast<double>(alg.dim())) * std::log(s);
  return acc;
}

double multivariate_gamma(const Algebra& alg, double p) { return std::exp(log_multivariate_gamma(alg, p)); }

double log_density(const WishartParams& params, const Element& y) {
  require_same_algebra(params.scale().element(), y);
  if (!contains_open(y)) return -std::numeric_limits<double>::infinity();
  const Algebra& alg = params.algebra();
  const double p = params.shape();
  return p * params.log_det_scale() - log_multivariate_gamma(alg, p) +
         (p - alg.dim_over_rank()) * log_det(y) - inner(params.scale().element(), y);
}

double laplace_transform(const WishartParams& params, const Element& t) {
  require_same_algebra(params.scale().element(), t);
  const Element z = unit(t.algebra()) + quadratic(params.scale_inv_sqrt(), t);
  if (!contains_open(z)) {
    throw OutOfRegion("laplace_transform: e + P(a^{-1/2}) t is not in the cone");
  }
  return std::exp(-params.shape() * log_det(z));
}

Element mean(const WishartParams& params) {
  const Algebra& alg = params.algebra();
  return (params.shape() * trace_form_ratio(alg)) * inverse(params.scale().element());
}

std::vector<double> coordinate_variance(const WishartParams& params) {
  // Var <h, Y> = p tr((P(a^{-1/2}) h)^2), the second cumulant of the
  // log-Laplace transform along h.
  const Algebra& alg = params.algebra();
  std::vector<double> var(alg.dim());
  Element basis = Element::zero(alg);
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    basis[i] = 1.0;
    const Element h = quadratic(params.scale_inv_sqrt(), basis);
    var[i] = params.shape() * trace(square(h));
    basis[i] = 0.0;
  }
  return var;
}

Element draw(const WishartParams& params, CounterRng& rng) {
  const Algebra& alg = params.algebra();
  const Element standard = alg.is_matrix() ? draw_standard_matrix(alg, params.shape(), rng)
                                           : draw_standard_lorentz(alg, params.shape(), rng);
  return quadratic(params.scale_inv_sqrt(), standard);
}

SampleBatch sample(const WishartParams& params, std::size_t count, std::uint64_t seed,
                   std::uint64_t stream, unsigned threads) {
  if (count == 0) throw InvalidShape("sample: count must be positive");
  std::vector<std::optional<ConeElement>> slots(count);
  parallel_for(count, threads, [&](std::size_t i) {
    CounterRng rng(seed, stream, i);
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      if (auto c = ConeElement::try_certify(draw(params, rng))) {
        slots[i] = std::move(c);
        return;
      }
    }
    throw NotInCone("sample: draw " + std::to_string(i) + " repeatedly fell on the cone boundary");
  });
  SampleBatch batch{params, seed, stream, {}};
  batch.samples.reserve(count);
  for (auto& s : slots) batch.samples.push_back(std::move(*s));
  return batch;
}

}  // namespace symcone
