#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symcone/cone.hpp"

namespace symcone {

enum class FieldDomain { Cone, BetaDomain };

/// Real-valued function on V or on D = {z in V : e - z in V}. The callable
/// must be pure; residual sweeps may evaluate it concurrently.
struct ScalarField {
  std::function<double(const Element&)> fn;
  FieldDomain domain = FieldDomain::Cone;
  std::string name;

  /// Evaluates after checking the point lies in the tagged domain
  /// (DomainError otherwise).
  double operator()(const Element& x) const;
};

/// Parameters of the continuous solutions of the Olkin-Baker equation:
///   a(x) = <lambda, x> + c1 ln det x - kappa
///   b(x) = <lambda, x> + c2 ln det x + kappa
///   c(x) = <lambda, x> + (c1 + c2) ln det x
///   d(u) = c1 ln det u + c2 ln det(e - u)
struct SolutionFamily {
  Element lambda;
  double c1 = 0.0;
  double c2 = 0.0;
  double kappa = 0.0;
};

struct OlkinBakerQuadruple {
  ScalarField a;
  ScalarField b;
  ScalarField c;
  ScalarField d;
};

OlkinBakerQuadruple make_regular_solution(const SolutionFamily& family);

/// The log-density dictionary of two independent Wishart laws with common
/// scale a0: a = ln f_X, b = ln f_Y, c = ln f_V - (dim/r) ln det,
/// d = ln f_U with U matrix-beta(p1, p2).
OlkinBakerQuadruple wishart_dictionary(double p1, double p2, const ConeElement& a0);

struct ResidualStats {
  std::string equation;
  Algebra algebra;
  std::size_t n = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  std::uint64_t seed = 0;
};

using ConePair = std::pair<ConeElement, ConeElement>;

/// Relative margin min_eig >= kPairMargin * spectral_radius for residual pairs.
/// It bounds the conditioning of P(y)x, which limits how accurately ln det can be evaluated on it.
inline constexpr double kPairMargin = 1e-2;

/// n pairs of independent gamma_{dim/r, e} draws, each redrawn until it passes kPairMargin.
std::vector<ConePair> random_cone_pairs(const Algebra& algebra, std::size_t n, std::uint64_t seed);

/// max / mean of |a(x) + b(y) - c(x + y) - d(P((x+y)^{-1/2}) x)|.
ResidualStats olkin_baker_residual(const OlkinBakerQuadruple& f, std::span<const ConePair> pairs,
                                   unsigned threads = 1);

/// 2c(x+y) + d(u) + d(e-u) - c(2x) - c(2y) - 2d(e/2), the identity obtained
/// by swapping x, y and substituting y = x.
ResidualStats symmetry_residual(const OlkinBakerQuadruple& f, std::span<const ConePair> pairs);

struct LogQuadraticStats {
  ResidualStats quadratic;    ///< |c(P(y)x) - c(x) - 2c(y)|
  ResidualStats conjugation;  ///< |c(x) - c(P(y^{-1/2})x) - c(y)|
  double max_residual() const noexcept;
};

LogQuadraticStats log_quadratic_residual(const ScalarField& c, std::span<const ConePair> pairs);

/// max |f(s x) - f(x)| over all scales and points.
double homogeneity_defect(const ScalarField& f, std::span<const double> scales, std::span<const Element> points);

/// One observation of the Pexider equation k(x + y) = l(x) + n(y).
struct PexiderSample {
  Element x;
  Element y;
  double k_val = 0.0;  ///< k(x + y)
  double l_val = 0.0;  ///< l(x)
  double n_val = 0.0;  ///< n(y)
};

/// k = <lambda, .> + b + c, l = <lambda, .> + b, n = <lambda, .> + c.
struct PexiderFit {
  Element lambda;
  double b = 0.0;
  double c = 0.0;
  double max_residual = 0.0;
};

/// Joint least squares over the stacked k, l and n observations. Throws
/// DegenerateGrid when (lambda, b, c) is not identifiable from the samples.
PexiderFit pexider_fit(std::span<const PexiderSample> samples);

using BivariateField = std::function<double(const Element&, const Element&)>;

/// C(x, y) = c(x) + c(y) - c(x + y).
BivariateField cauchy_difference(const ScalarField& c);

struct ConeTriple {
  Element x;
  Element y;
  Element z;
};

/// max / mean of |C(x+y, z) + C(x, y) - C(x, y+z) - C(y, z)|.
ResidualStats cocycle_residual(const BivariateField& field, std::span<const ConeTriple> triples);

}  // namespace symcone
