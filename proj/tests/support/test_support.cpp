#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <numbers>

#include "symcone/jordan.hpp"

namespace symcone::testing {

namespace {

using cd = std::complex<double>;

struct BasisEntry {
  int i;
  int j;
  bool imaginary;
};

// Diagonal units, then real off-diagonal pairs, then imaginary pairs.
std::vector<BasisEntry> basis(const Algebra& alg) {
  const int r = alg.order();
  std::vector<BasisEntry> b;
  for (int i = 0; i < r; ++i) b.push_back({i, i, false});
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) b.push_back({i, j, false});
  if (alg.kind() == AlgebraKind::HermComplex) {
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) b.push_back({i, j, true});
  }
  return b;
}

}  // namespace

Element random_element(const Algebra& alg, Rng& rng) {
  std::normal_distribution<double> n01;
  std::vector<double> c(alg.dim());
  for (auto& v : c) v = n01(rng);
  return Element(alg, std::move(c));
}

Element random_cone_element(const Algebra& alg, Rng& rng, double shift) {
  return square(random_element(alg, rng)) + shift * unit(alg);
}

Element random_with_spectrum(const Algebra& alg, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  if (alg.kind() == AlgebraKind::Lorentz) {
    const double a = u(rng);
    const double b = u(rng);
    Element dir = random_element(alg, rng);
    dir[0] = 0.0;
    dir *= 1.0 / norm(dir);
    Element x = 0.5 * (a + b) * unit(alg) + 0.5 * std::abs(a - b) * dir;
    return x;
  }
  const int r = alg.order();
  Eigen::MatrixXcd g(r, r);
  std::normal_distribution<double> n01;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      g(i, j) = alg.kind() == AlgebraKind::HermComplex ? cd(n01(rng), n01(rng)) : cd(n01(rng), 0.0);
  const Eigen::MatrixXcd q = g.householderQr().householderQ();
  Eigen::VectorXd lambda(r);
  for (int i = 0; i < r; ++i) lambda(i) = u(rng);
  const Eigen::MatrixXcd m = q * lambda.cast<cd>().asDiagonal() * q.adjoint();
  return oracle_element(alg, m);
}

Eigen::MatrixXcd oracle_matrix(const Element& x) {
  const Algebra& alg = x.algebra();
  const int r = alg.order();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(r, r);
  const auto b = basis(alg);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < b.size(); ++k) {
    const auto [i, j, im] = b[k];
    if (i == j) {
      m(i, i) += x[k];
    } else if (!im) {
      m(i, j) += s * x[k];
      m(j, i) += s * x[k];
    } else {
      m(i, j) += cd(0.0, s * x[k]);
      m(j, i) -= cd(0.0, s * x[k]);
    }
  }
  return m;
}

Element oracle_element(const Algebra& alg, const Eigen::MatrixXcd& m) {
  const auto b = basis(alg);
  std::vector<double> c(b.size());
  const double s = std::sqrt(2.0);
  for (std::size_t k = 0; k < b.size(); ++k) {
    const auto [i, j, im] = b[k];
    // Coordinate = Re Tr(B_k m) with B_k the basis matrix.
    if (i == j) {
      c[k] = m(i, i).real();
    } else if (!im) {
      c[k] = 0.5 * s * (m(i, j).real() + m(j, i).real());
    } else {
      c[k] = 0.5 * s * (m(i, j).imag() - m(j, i).imag());
    }
  }
  return Element(alg, std::move(c));
}

std::vector<double> oracle_eigenvalues(const Element& x) {
  if (x.algebra().kind() == AlgebraKind::Lorentz) {
    double nb = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) nb += x[i] * x[i];
    nb = std::sqrt(nb);
    return {x[0] - nb, x[0] + nb};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle_matrix(x), Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

Element oracle_product(const Element& x, const Element& y) {
  const Algebra& alg = x.algebra();
  if (alg.kind() == AlgebraKind::Lorentz) {
    std::vector<double> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[0] += x[i] * y[i];
    for (std::size_t i = 1; i < x.size(); ++i) c[i] = x[0] * y[i] + y[0] * x[i];
    return Element(alg, std::move(c));
  }
  const Eigen::MatrixXcd a = oracle_matrix(x);
  const Eigen::MatrixXcd b = oracle_matrix(y);
  return oracle_element(alg, 0.5 * (a * b + b * a));
}

std::vector<Algebra> axiom_algebras() {
  return {Algebra::sym_real(1),     Algebra::sym_real(2),     Algebra::sym_real(3), Algebra::sym_real(5),
          Algebra::herm_complex(2), Algebra::herm_complex(3), Algebra::lorentz(2),  Algebra::lorentz(4)};
}

// The exp(-<a, y>) tail is negligible past this radius for the shapes under test.
constexpr double kTruncation = 80.0;
constexpr std::size_t kRefinements = 8;

// Diagonal entries a, c on (0, L); the off-diagonal coordinate is s * sqrt(2ac) with s in (-1, 1)
// so the inner integrand never leaves the cone.
double integrate_sym2_cone(const ConeIntegrand& f, double tol) {
  const Algebra alg = Algebra::sym_real(2);
  boost::math::quadrature::tanh_sinh<double> q(kRefinements);
  return q.integrate(
      [&](double a) {
        return q.integrate(
            [&](double c) {
              const double w = std::sqrt(2.0 * a * c);
              return w * q.integrate([&](double s) { return f(Element(alg, {a, c, s * w})); }, -1.0, 1.0, tol);
            },
            0.0, kTruncation, tol);
      },
      0.0, kTruncation, tol);
}

double integrate_herm2_cone(const ConeIntegrand& f, double tol) {
  const Algebra alg = Algebra::herm_complex(2);
  boost::math::quadrature::tanh_sinh<double> q(kRefinements);
  return q.integrate(
      [&](double a) {
        return q.integrate(
            [&](double c) {
              const double w = std::sqrt(2.0 * a * c);
              // Polar coordinates in the two off-diagonal coordinates.
              return 2.0 * std::numbers::pi * w * w *
                     q.integrate([&](double s) { return s * f(Element(alg, {a, c, s * w, 0.0})); }, 0.0, 1.0, tol);
            },
            0.0, kTruncation, tol);
      },
      0.0, kTruncation, tol);
}

double integrate_lorentz_cone(const Algebra& alg, const ConeIntegrand& f, double tol) {
  const double n = static_cast<double>(alg.dim() - 1);
  const double sphere = 2.0 * std::pow(std::numbers::pi, n / 2.0) / boost::math::tgamma(n / 2.0);
  boost::math::quadrature::tanh_sinh<double> q(kRefinements);
  return q.integrate(
      [&](double x0) {
        return sphere * std::pow(x0, n) * q.integrate(
                                              [&](double s) {
                                                std::vector<double> c(alg.dim(), 0.0);
                                                c[0] = x0;
                                                c[1] = s * x0;
                                                return std::pow(s, n - 1.0) * f(Element(alg, std::move(c)));
                                              },
                                              0.0, 1.0, tol);
      },
      0.0, kTruncation, tol);
}

}  // namespace symcone::testing
