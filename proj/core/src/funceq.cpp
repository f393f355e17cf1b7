#include "symcone/funceq.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "symcone/errors.hpp"
#include "symcone/jordan.hpp"
#include "symcone/lukacs.hpp"
#include "symcone/parallel.hpp"
#include "symcone/wishart.hpp"

namespace symcone {

double ScalarField::operator()(const Element& x) const {
  const bool ok = domain == FieldDomain::Cone ? contains_open(x) : in_domain_D(x);
  if (!ok) {
    throw DomainError("scalar field '" + name + "' evaluated outside its domain " +
                      (domain == FieldDomain::Cone ? "V" : "D"));
  }
  return fn(x);
}

OlkinBakerQuadruple make_regular_solution(const SolutionFamily& fam) {
  const Element lambda = fam.lambda;
  const double c1 = fam.c1;
  const double c2 = fam.c2;
  const double kappa = fam.kappa;
  OlkinBakerQuadruple q{
      {[=](const Element& x) { return inner(lambda, x) + c1 * log_det(x) - kappa; }, FieldDomain::Cone, "a"},
      {[=](const Element& x) { return inner(lambda, x) + c2 * log_det(x) + kappa; }, FieldDomain::Cone, "b"},
      {[=](const Element& x) { return inner(lambda, x) + (c1 + c2) * log_det(x); }, FieldDomain::Cone, "c"},
      {[=](const Element& u) { return c1 * log_det(u) + c2 * log_det(unit(u.algebra()) - u); },
       FieldDomain::BetaDomain, "d"},
  };
  return q;
}

OlkinBakerQuadruple wishart_dictionary(double p1, double p2, const ConeElement& a0) {
  const WishartParams fx(p1, a0);
  const WishartParams fy(p2, a0);
  const WishartParams fv(p1 + p2, a0);
  const Algebra alg = a0.algebra();
  const double ratio = alg.dim_over_rank();
  const double log_beta = log_multivariate_gamma(alg, p1) + log_multivariate_gamma(alg, p2) -
                          log_multivariate_gamma(alg, p1 + p2);
  OlkinBakerQuadruple q{
      {[=](const Element& x) { return log_density(fx, x); }, FieldDomain::Cone, "ln f_X"},
      {[=](const Element& y) { return log_density(fy, y); }, FieldDomain::Cone, "ln f_Y"},
      {[=](const Element& v) { return log_density(fv, v) - ratio * log_det(v); }, FieldDomain::Cone,
       "ln f_V - (dim/r) ln det"},
      {[=](const Element& u) {
         return -log_beta + (p1 - ratio) * log_det(u) + (p2 - ratio) * log_det(unit(u.algebra()) - u);
       },
       FieldDomain::BetaDomain, "ln f_U"},
  };
  return q;
}

namespace {
constexpr int kMaxPairAttempts = 4096;
}  // namespace

std::vector<ConePair> random_cone_pairs(const Algebra& algebra, std::size_t n, std::uint64_t seed) {
  const WishartParams params(algebra.dim_over_rank(), ConeElement::certify(unit(algebra)));
  std::vector<ConePair> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rx(seed, streams::kFirstSample, i);
    CounterRng ry(seed, streams::kSecondSample, i);
    CounterRng rr(seed, streams::kResample, i);
    Element x = draw(params, rx);
    Element y = draw(params, ry);
    for (int attempt = 0;; ++attempt) {
      auto cx = ConeElement::try_certify(x, kPairMargin);
      auto cy = ConeElement::try_certify(y, kPairMargin);
      if (cx && cy) {
        pairs.emplace_back(std::move(*cx), std::move(*cy));
        break;
      }
      if (attempt == kMaxPairAttempts) throw NotInCone("random_cone_pairs: could not draw a pair with the cone margin");
      x = draw(params, rr);
      y = draw(params, rr);
    }
  }
  return pairs;
}

namespace {

ResidualStats summarize(std::string equation, const Algebra& alg, const std::vector<double>& r) {
  ResidualStats s{std::move(equation), alg, r.size(), 0.0, 0.0, 0};
  for (double v : r) {
    s.max_residual = std::max(s.max_residual, v);
    s.mean_residual += v;
  }
  if (!r.empty()) s.mean_residual /= static_cast<double>(r.size());
  return s;
}

const Algebra& pairs_algebra(std::span<const ConePair> pairs) {
  if (pairs.empty()) throw PreconditionError("residual check: no pairs supplied");
  return pairs.front().first.algebra();
}

}  // namespace

ResidualStats olkin_baker_residual(const OlkinBakerQuadruple& f, std::span<const ConePair> pairs,
                                   unsigned threads) {
  const Algebra& alg = pairs_algebra(pairs);
  std::vector<double> r(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    const auto& [x, y] = pairs[i];
    const SplitPair s = split(x, y);
    r[i] = std::abs(f.a(x) + f.b(y) - f.c(s.v) - f.d(s.u));
  });
  return summarize("olkin-baker", alg, r);
}

ResidualStats symmetry_residual(const OlkinBakerQuadruple& f, std::span<const ConePair> pairs) {
  const Algebra& alg = pairs_algebra(pairs);
  const Element e = unit(alg);
  const double d_half = f.d(0.5 * e);
  std::vector<double> r(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Element& x = pairs[i].first;
    const Element& y = pairs[i].second;
    const SplitPair s = split(pairs[i].first, pairs[i].second);
    const double lhs = 2.0 * f.c(s.v) + f.d(s.u) + f.d(e - s.u);
    const double rhs = f.c(2.0 * x) + f.c(2.0 * y) + 2.0 * d_half;
    r[i] = std::abs(lhs - rhs);
  }
  return summarize("symmetry", alg, r);
}

double LogQuadraticStats::max_residual() const noexcept {
  return std::max(quadratic.max_residual, conjugation.max_residual);
}

LogQuadraticStats log_quadratic_residual(const ScalarField& c, std::span<const ConePair> pairs) {
  const Algebra& alg = pairs_algebra(pairs);
  std::vector<double> rq(pairs.size());
  std::vector<double> rc(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Element& x = pairs[i].first;
    const Element& y = pairs[i].second;
    rq[i] = std::abs(c(quadratic(y, x)) - c(x) - 2.0 * c(y));
    rc[i] = std::abs(c(x) - c(quadratic(inv_sqrt_in_cone(y), x)) - c(y));
  }
  return {summarize("log-quadratic", alg, rq), summarize("log-quadratic-conjugation", alg, rc)};
}

double homogeneity_defect(const ScalarField& f, std::span<const double> scales, std::span<const Element> points) {
  double worst = 0.0;
  for (double s : scales) {
    if (!(s > 0.0)) throw PreconditionError("homogeneity_defect: scales must be positive");
    for (const auto& x : points) worst = std::max(worst, std::abs(f(s * x) - f(x)));
  }
  return worst;
}

PexiderFit pexider_fit(std::span<const PexiderSample> samples) {
  if (samples.empty()) throw DegenerateGrid("pexider_fit: no samples");
  const Algebra alg = samples.front().x.algebra();
  const std::size_t dim = alg.dim();
  const auto cols = static_cast<Eigen::Index>(dim + 2);
  const auto rows = static_cast<Eigen::Index>(3 * samples.size());

  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd target(rows);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    require_same_algebra(s.x, s.y);
    require_same_algebra(s.x, samples.front().x);
    const auto row = static_cast<Eigen::Index>(3 * i);
    for (std::size_t j = 0; j < dim; ++j) {
      const auto col = static_cast<Eigen::Index>(j);
      design(row, col) = s.x[j] + s.y[j];
      design(row + 1, col) = s.x[j];
      design(row + 2, col) = s.y[j];
    }
    const Eigen::Index b = cols - 2;
    const Eigen::Index c = cols - 1;
    design(row, b) = design(row, c) = 1.0;
    design(row + 1, b) = 1.0;
    design(row + 2, c) = 1.0;
    target(row) = s.k_val;
    target(row + 1) = s.l_val;
    target(row + 2) = s.n_val;
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < cols) {
    throw DegenerateGrid("pexider_fit: design matrix is rank deficient (rank " + std::to_string(qr.rank()) +
                         " < " + std::to_string(cols) + ")");
  }
  const Eigen::VectorXd theta = qr.solve(target);

  PexiderFit fit{Element::zero(alg), theta(cols - 2), theta(cols - 1), 0.0};
  for (std::size_t j = 0; j < dim; ++j) fit.lambda[j] = theta(static_cast<Eigen::Index>(j));
  fit.max_residual = (design * theta - target).cwiseAbs().maxCoeff();
  return fit;
}

BivariateField cauchy_difference(const ScalarField& c) {
  return [c](const Element& x, const Element& y) { return c(x) + c(y) - c(x + y); };
}

ResidualStats cocycle_residual(const BivariateField& field, std::span<const ConeTriple> triples) {
  if (triples.empty()) throw PreconditionError("cocycle_residual: no triples supplied");
  std::vector<double> r(triples.size());
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& [x, y, z] = triples[i];
    r[i] = std::abs(field(x + y, z) + field(x, y) - field(x, y + z) - field(y, z));
  }
  return summarize("cocycle", triples.front().x.algebra(), r);
}

}  // namespace symcone
