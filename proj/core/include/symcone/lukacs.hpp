#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symcone/cone.hpp"
#include "symcone/independence.hpp"
#include "symcone/wishart.hpp"

namespace symcone {

/// v = x + y and u = P(v^{-1/2}) x.
struct SplitPair {
  ConeElement v;
  Element u;
};

/// Relative margin (to trace(v)) below which split inputs are rejected and
/// experiment draws are resampled.
inline constexpr double kSplitMargin = 1e-9;
inline constexpr std::size_t kMinExperimentSamples = 1000;

/// Throws NotInCone when x or y is outside V, AlgebraMismatch across
/// algebras, and PreconditionError when v fails the strict margin.
SplitPair split(const ConeElement& x, const ConeElement& y);

/// Sample mean of V compared with its expectation.
struct MeanCheck {
  Element expected;
  Element observed;
  std::vector<double> standard_error;  ///< per coordinate, from the exact variance
  double max_abs_z = 0.0;
  bool within_3sigma() const noexcept { return max_abs_z <= 3.0; }
};

struct IndependenceReport {
  std::string experiment;  ///< "forward" or "negative"
  Algebra algebra;
  double p1 = 0.0;
  double p2 = 0.0;
  Element scale;   ///< scale of X
  Element scale2;  ///< scale of Y (equal to `scale` for forward runs)
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double level = 0.05;
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t permutations = 0;
  DcorMethod method = DcorMethod::Exact;
  bool reject = false;
  std::size_t resampled = 0;
  MeanCheck mean_check;

  std::string decision() const { return reject ? "reject" : "non-reject"; }
};

/// X ~ gamma_{p1,a}, Y ~ gamma_{p2,a} independent; tests U against V.
/// The (X, Y) draws of an experiment and their splits, index-aligned.
struct ExperimentDraws {
  std::vector<Element> x;
  std::vector<Element> y;
  std::vector<Element> u;
  std::vector<Element> v;
  std::size_t resampled = 0;  ///< total redraws caused by the split margin
};

ExperimentDraws experiment_draws(const WishartParams& px, const WishartParams& py, std::size_t n,
                                 std::uint64_t seed, unsigned threads = 1);

IndependenceReport forward_experiment(double p1, double p2, const ConeElement& a, std::size_t n,
                                      std::uint64_t seed, double level,
                                      const PermutationTestOptions& options = {});

/// X ~ gamma_{p1,a1}, Y ~ gamma_{p2,a2}. Requires the spectral radius of
/// a1 - a2 to be at least half the larger spectral radius of a1, a2.
IndependenceReport negative_experiment(double p1, double p2, const ConeElement& a1, const ConeElement& a2,
                                       std::size_t n, std::uint64_t seed, double level,
                                       const PermutationTestOptions& options = {});

/// Outcome of running one experiment over several seeds.
struct RepetitionSummary {
  std::vector<IndependenceReport> reports;
  std::size_t rejections() const;
  std::size_t non_rejections() const { return reports.size() - rejections(); }
};

/// Least-squares fit of ln f(x) = C + <lambda, x> + k ln det x over a grid,
/// compared with the Wishart values C = p ln det a - ln Gamma_V(p),
/// lambda = -a, k = p - dim/r.
struct FactorizationReport {
  Element lambda;
  double k = 0.0;
  double log_constant = 0.0;
  Element lambda_expected;
  double k_expected = 0.0;
  double log_constant_expected = 0.0;
  double max_residual = 0.0;
  double lambda_error = 0.0;  ///< max coordinate deviation
  double k_error = 0.0;
  double log_constant_error = 0.0;
};

/// Throws DomainError for grid points outside V and DegenerateGrid when the
/// design (1, coords, ln det) lacks full column rank.
FactorizationReport density_factorization_check(double p, const ConeElement& a, std::span<const Element> grid);

/// Grid of `count` cone points drawn from gamma_{dim/r + 1, e}.
std::vector<Element> random_cone_grid(const Algebra& algebra, std::size_t count, std::uint64_t seed);

}  // namespace symcone
