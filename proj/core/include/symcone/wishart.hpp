#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "symcone/cone.hpp"
#include "symcone/rng.hpp"

namespace symcone {

/// Shape p and scale a of the Wishart law gamma_{p,a} on the cone.
/// Requires p > dim/r - 1 (absolutely continuous regime) and a in V.
class WishartParams {
 public:
  WishartParams(double shape, ConeElement scale);

  const Algebra& algebra() const noexcept { return scale_.algebra(); }
  double shape() const noexcept { return shape_; }
  const ConeElement& scale() const noexcept { return scale_; }

  double log_det_scale() const noexcept { return log_det_scale_; }
  /// a^{-1/2}, used to transport gamma_{p,e} to gamma_{p,a}.
  const Element& scale_inv_sqrt() const noexcept { return scale_inv_sqrt_; }

 private:
  double shape_;
  ConeElement scale_;
  double log_det_scale_;
  Element scale_inv_sqrt_;
};

/// ln Gamma_V(p), normalised so that the Wishart density integrates to one
/// against Lebesgue measure in the orthonormal coordinates.
///
/// For matrix kinds this is ((dim - r)/2) ln(2 pi) + sum_j ln Gamma(p - (j-1) d/2).
/// LORENTZ carries an extra (r p - dim/2) ln 2 because its inner product is the
/// plain dot product, i.e. half the trace form.
///
/// Throws PoleError unless p > (r - 1) d / 2.
double log_multivariate_gamma(const Algebra& algebra, double p);
double multivariate_gamma(const Algebra& algebra, double p);

/// ln of det(a)^p / Gamma_V(p) * det(y)^{p - dim/r} * exp(-<a, y>) on V,
/// -infinity off V.
double log_density(const WishartParams& params, const Element& y);

/// det(e + P(a^{-1/2}) t)^{-p}; throws OutOfRegion when e + P(a^{-1/2}) t
/// leaves the cone.
double laplace_transform(const WishartParams& params, const Element& t);

/// First moment. Equals p a^{-1} for matrix kinds and 2 p a^{-1} on LORENTZ,
/// where the gradient of ln det under the dot product is 2 x^{-1}.
Element mean(const WishartParams& params);

/// Per-coordinate variance of a single draw, Var(<b_i, Y>), obtained by
/// differentiating the log-Laplace transform twice.
std::vector<double> coordinate_variance(const WishartParams& params);

/// Seed-tagged batch of Wishart draws. Draw i is a pure function of
/// (params, seed, stream, i).
struct SampleBatch {
  WishartParams params;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<ConeElement> samples;
};

/// One exact draw from gamma_{p,a} using the supplied generator.
Element draw(const WishartParams& params, CounterRng& rng);

/// `count` i.i.d. draws; throws InvalidShape when count == 0.
SampleBatch sample(const WishartParams& params, std::size_t count, std::uint64_t seed,
                   std::uint64_t stream, unsigned threads = 1);

}  // namespace symcone
