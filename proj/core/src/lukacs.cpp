#include "symcone/lukacs.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "symcone/errors.hpp"
#include "symcone/jordan.hpp"
#include "symcone/parallel.hpp"

namespace symcone {

SplitPair split(const ConeElement& x, const ConeElement& y) {
  require_same_algebra(x.element(), y.element());
  Element v = x.element() + y.element();
  const double tr = trace(v);
  auto certified = ConeElement::try_certify(v, 0.0);
  if (!certified || certified->min_eigenvalue() < kSplitMargin * tr) {
    std::ostringstream os;
    os << "split: x + y is too close to the cone boundary (min eigenvalue "
       << (certified ? certified->min_eigenvalue() : min_eigenvalue(v)) << ", trace " << tr << ")";
    throw PreconditionError(os.str());
  }
  Element u = quadratic(inv_sqrt_in_cone(v), x.element());
  return {std::move(*certified), std::move(u)};
}

std::size_t RepetitionSummary::rejections() const {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const IndependenceReport& r) { return r.reject; }));
}

/// Pairs whose sum fails the strict margin are redrawn from the resample
/// stream, so index i stays a pure function of the seed.
ExperimentDraws experiment_draws(const WishartParams& px, const WishartParams& py, std::size_t n,
                                 std::uint64_t seed, unsigned threads) {
  require_same_algebra(px.scale().element(), py.scale().element());
  struct Slot {
    Element x;
    Element y;
    std::optional<SplitPair> pair;
    std::size_t retries = 0;
  };
  std::vector<std::optional<Slot>> slots(n);
  parallel_for(n, threads, [&](std::size_t i) {
    CounterRng rx(seed, streams::kFirstSample, i);
    CounterRng ry(seed, streams::kSecondSample, i);
    CounterRng rr(seed, streams::kResample, i);
    Element x = draw(px, rx);
    Element y = draw(py, ry);
    for (std::size_t attempt = 0; attempt < 64; ++attempt) {
      auto cx = ConeElement::try_certify(x);
      auto cy = ConeElement::try_certify(y);
      if (cx && cy) {
        const Element v = x + y;
        if (min_eigenvalue(v) >= kSplitMargin * trace(v)) {
          SplitPair sp = split(*cx, *cy);
          slots[i] = Slot{std::move(x), std::move(y), std::move(sp), attempt};
          return;
        }
      }
      x = draw(px, rr);
      y = draw(py, rr);
    }
    throw NotInCone("experiment: pair " + std::to_string(i) + " kept failing the split margin");
  });
  ExperimentDraws d;
  d.x.reserve(n);
  d.y.reserve(n);
  d.u.reserve(n);
  d.v.reserve(n);
  for (auto& slot : slots) {
    d.x.push_back(std::move(slot->x));
    d.y.push_back(std::move(slot->y));
    d.u.push_back(std::move(slot->pair->u));
    d.v.push_back(slot->pair->v.element());
    d.resampled += slot->retries;
  }
  return d;
}

namespace {

MeanCheck check_mean(const std::vector<Element>& v, const WishartParams& px, const WishartParams& py) {
  const std::size_t n = v.size();
  MeanCheck mc{mean(px) + mean(py), Element::zero(px.algebra()), {}, 0.0};
  for (const auto& e : v) mc.observed += e;
  mc.observed *= 1.0 / static_cast<double>(n);
  const auto vx = coordinate_variance(px);
  const auto vy = coordinate_variance(py);
  mc.standard_error.resize(vx.size());
  for (std::size_t i = 0; i < vx.size(); ++i) {
    mc.standard_error[i] = std::sqrt((vx[i] + vy[i]) / static_cast<double>(n));
    const double z = (mc.observed[i] - mc.expected[i]) / mc.standard_error[i];
    mc.max_abs_z = std::max(mc.max_abs_z, std::abs(z));
  }
  return mc;
}

IndependenceReport run_experiment(std::string name, double p1, double p2, const ConeElement& a1,
                                  const ConeElement& a2, std::size_t n, std::uint64_t seed, double level,
                                  const PermutationTestOptions& options) {
  if (!(level > 0.0 && level < 1.0)) throw PreconditionError("experiment: level must lie in (0, 1)");
  if (n < kMinExperimentSamples) {
    throw PreconditionError("experiment: need at least " + std::to_string(kMinExperimentSamples) + " samples");
  }
  const WishartParams px(p1, a1);
  const WishartParams py(p2, a2);
  const ExperimentDraws d = experiment_draws(px, py, n, seed, options.threads);

  const PermutationTestResult test = dcor_permutation_test(FeatureMatrix::from_elements(d.u),
                                                           FeatureMatrix::from_elements(d.v), options, seed);

  IndependenceReport r{.experiment = std::move(name),
                       .algebra = a1.algebra(),
                       .p1 = p1,
                       .p2 = p2,
                       .scale = a1.element(),
                       .scale2 = a2.element(),
                       .n = n,
                       .seed = seed,
                       .level = level,
                       .statistic = test.statistic,
                       .p_value = test.p_value,
                       .permutations = test.permutations,
                       .method = test.method,
                       .reject = test.p_value <= level,
                       .resampled = d.resampled,
                       .mean_check = check_mean(d.v, px, py)};
  return r;
}

}  // namespace

IndependenceReport forward_experiment(double p1, double p2, const ConeElement& a, std::size_t n,
                                      std::uint64_t seed, double level, const PermutationTestOptions& options) {
  return run_experiment("forward", p1, p2, a, a, n, seed, level, options);
}

IndependenceReport negative_experiment(double p1, double p2, const ConeElement& a1, const ConeElement& a2,
                                       std::size_t n, std::uint64_t seed, double level,
                                       const PermutationTestOptions& options) {
  require_same_algebra(a1.element(), a2.element());
  const double gap = spectral_radius(a1.element() - a2.element());
  const double ref = std::max(spectral_radius(a1.element()), spectral_radius(a2.element()));
  if (gap < 0.5 * ref) {
    std::ostringstream os;
    os << "negative_experiment: scales must differ by a relative spectral gap >= 0.5 (got " << gap / ref << ")";
    throw PreconditionError(os.str());
  }
  return run_experiment("negative", p1, p2, a1, a2, n, seed, level, options);
}

FactorizationReport density_factorization_check(double p, const ConeElement& a, std::span<const Element> grid) {
  const WishartParams params(p, a);
  const Algebra& alg = params.algebra();
  const std::size_t dim = alg.dim();
  const std::size_t cols = dim + 2;
  if (grid.size() < cols) {
    throw DegenerateGrid("density_factorization_check: need at least " + std::to_string(cols) + " grid points");
  }

  Eigen::MatrixXd design(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(cols));
  Eigen::VectorXd target(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Element& x = grid[i];
    require_same_algebra(a.element(), x);
    if (!contains_open(x)) throw DomainError("density_factorization_check: grid point outside the cone");
    const auto row = static_cast<Eigen::Index>(i);
    design(row, 0) = 1.0;
    for (std::size_t j = 0; j < dim; ++j) design(row, static_cast<Eigen::Index>(j) + 1) = x[j];
    design(row, static_cast<Eigen::Index>(dim) + 1) = log_det(x);
    target(row) = log_density(params, x);
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < static_cast<Eigen::Index>(cols)) {
    throw DegenerateGrid("density_factorization_check: design matrix is rank deficient (rank " +
                         std::to_string(qr.rank()) + " < " + std::to_string(cols) + ")");
  }
  const Eigen::VectorXd beta = qr.solve(target);
  const Eigen::VectorXd resid = design * beta - target;

  FactorizationReport rep{.lambda = Element::zero(alg),
                          .k = beta(static_cast<Eigen::Index>(dim) + 1),
                          .log_constant = beta(0),
                          .lambda_expected = -a.element(),
                          .k_expected = p - alg.dim_over_rank(),
                          .log_constant_expected = p * params.log_det_scale() - log_multivariate_gamma(alg, p),
                          .max_residual = resid.cwiseAbs().maxCoeff()};
  for (std::size_t j = 0; j < dim; ++j) rep.lambda[j] = beta(static_cast<Eigen::Index>(j) + 1);
  rep.lambda_error = max_abs_diff(rep.lambda, rep.lambda_expected);
  rep.k_error = std::abs(rep.k - rep.k_expected);
  rep.log_constant_error = std::abs(rep.log_constant - rep.log_constant_expected);
  return rep;
}

std::vector<Element> random_cone_grid(const Algebra& algebra, std::size_t count, std::uint64_t seed) {
  const WishartParams params(algebra.dim_over_rank() + 1.0, ConeElement::certify(unit(algebra)));
  const SampleBatch batch = sample(params, count, seed, streams::kPairs);
  std::vector<Element> out;
  out.reserve(count);
  for (const auto& s : batch.samples) out.push_back(s.element());
  return out;
}

}  // namespace symcone
