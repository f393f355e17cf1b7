#include "symcone/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "jacobi.hpp"
#include "symcone/errors.hpp"

namespace symcone {

namespace {

HermitianMatrix matmul(const HermitianMatrix& a, const HermitianMatrix& b) {
  const int r = a.order;
  HermitianMatrix c(r);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      const std::complex<double> aik = a(i, k);
      for (int j = 0; j < r; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

/// Real symmetric matrix whose spectral calculus mirrors the element's:
/// the matrix itself for real kinds, [[A, -B], [B, A]] for X = A + iB.
std::vector<double> real_embedding(const HermitianMatrix& m, bool complex_kind) {
  const int r = m.order;
  if (!complex_kind) {
    std::vector<double> a(static_cast<std::size_t>(r) * r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) a[static_cast<std::size_t>(i) * r + j] = m(i, j).real();
    return a;
  }
  const int n = 2 * r;
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const double re = m(i, j).real();
      const double im = m(i, j).imag();
      at(i, j) = re;
      at(i + r, j + r) = re;
      at(i, j + r) = -im;
      at(i + r, j) = im;
    }
  return a;
}

struct LorentzSpectrum {
  double x0;
  double radius;
  std::vector<double> direction;  // unit vector, or empty when xbar == 0
};

LorentzSpectrum lorentz_spectrum(const Element& x) {
  LorentzSpectrum s;
  s.x0 = x[0];
  double sq = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sq += x[i] * x[i];
  s.radius = std::sqrt(sq);
  if (s.radius > 0.0) {
    s.direction.resize(x.size() - 1);
    for (std::size_t i = 1; i < x.size(); ++i) s.direction[i - 1] = x[i] / s.radius;
  }
  return s;
}

std::string format_values(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

/// Decomposes x once, lets `check` veto on the eigenvalues, then rebuilds
/// sum f(lambda_i) c_i.
Element spectral_apply(const Element& x, const std::function<void(const std::vector<double>&)>& check,
                       const std::function<double(double)>& f) {
  const Algebra& alg = x.algebra();
  if (alg.kind() == AlgebraKind::Lorentz) {
    const LorentzSpectrum s = lorentz_spectrum(x);
    check({s.x0 + s.radius, s.x0 - s.radius});
    std::vector<double> c(alg.dim(), 0.0);
    if (s.radius == 0.0) {
      c[0] = f(s.x0);
      return Element(alg, std::move(c));
    }
    const double f1 = f(s.x0 + s.radius);
    const double f2 = f(s.x0 - s.radius);
    c[0] = 0.5 * (f1 + f2);
    for (std::size_t i = 1; i < c.size(); ++i) c[i] = 0.5 * (f1 - f2) * s.direction[i - 1];
    return Element(alg, std::move(c));
  }

  const bool complex_kind = alg.kind() == AlgebraKind::HermComplex;
  const int r = alg.order();
  const int n = complex_kind ? 2 * r : r;
  const detail::SymmetricEigen eig = detail::jacobi_eigen(real_embedding(to_matrix(x), complex_kind), n);

  std::vector<double> sorted = eig.values;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (complex_kind) {
    std::vector<double> paired(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) paired[static_cast<std::size_t>(i)] = 0.5 * (sorted[2 * i] + sorted[2 * i + 1]);
    check(paired);
  } else {
    check(sorted);
  }

  std::vector<double> fv(eig.values.size());
  for (std::size_t k = 0; k < fv.size(); ++k) fv[k] = f(eig.values[k]);

  HermitianMatrix out(r);
  const auto v = [&](int i, int k) { return eig.vectors[static_cast<std::size_t>(i) * n + k]; };
  // Upper-left block is Re f(X), lower-left block is Im f(X).
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      double re = 0.0;
      double im = 0.0;
      for (int k = 0; k < n; ++k) {
        re += v(i, k) * fv[static_cast<std::size_t>(k)] * v(j, k);
        if (complex_kind) im += v(i + r, k) * fv[static_cast<std::size_t>(k)] * v(j, k);
      }
      if (complex_kind) {
        // f(M) for M = [[A,-B],[B,A]] has the same block shape; keep both
        // copies averaged.
        double re2 = 0.0;
        double im2 = 0.0;
        for (int k = 0; k < n; ++k) {
          re2 += v(i + r, k) * fv[static_cast<std::size_t>(k)] * v(j + r, k);
          im2 -= v(i, k) * fv[static_cast<std::size_t>(k)] * v(j + r, k);
        }
        re = 0.5 * (re + re2);
        im = 0.5 * (im + im2);
      }
      out(i, j) = {re, im};
    }
  return from_matrix(alg, out);
}

void no_check(const std::vector<double>&) {}

void require_cone(const std::vector<double>& values, const char* op) {
  const double radius = std::max(std::abs(values.front()), std::abs(values.back()));
  if (!(values.back() > tolerance::kCone * radius)) {
    throw NotInCone(std::string(op) + ": element is not in the open cone, eigenvalues " +
                    format_values(values));
  }
}

}  // namespace

Element unit(const Algebra& algebra) {
  std::vector<double> c(algebra.dim(), 0.0);
  if (algebra.is_matrix()) {
    for (int i = 0; i < algebra.order(); ++i) c[static_cast<std::size_t>(i)] = 1.0;
  } else {
    c[0] = 1.0;
  }
  return Element(algebra, std::move(c));
}

Element jordan_product(const Element& x, const Element& y) {
  require_same_algebra(x, y);
  const Algebra& alg = x.algebra();
  if (alg.is_matrix()) {
    // For Hermitian X, Y: YX = (XY)^*, so the Hermitian part of XY is (XY + YX)/2.
    return from_matrix(alg, matmul(to_matrix(x), to_matrix(y)));
  }
  std::vector<double> c(alg.dim());
  c[0] = dot(x.coords(), y.coords());
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = x[0] * y[i] + x[i] * y[0];
  return Element(alg, std::move(c));
}

Element square(const Element& x) { return jordan_product(x, x); }

double inner(const Element& x, const Element& y) {
  require_same_algebra(x, y);
  return dot(x.coords(), y.coords());
}

double norm(const Element& x) { return std::sqrt(dot(x.coords(), x.coords())); }

LinearMap l_map(const Element& x) {
  const Algebra& alg = x.algebra();
  const std::size_t n = alg.dim();
  LinearMap m = LinearMap::zero(alg);
  Element basis = Element::zero(alg);
  for (std::size_t j = 0; j < n; ++j) {
    basis[j] = 1.0;
    const Element col = jordan_product(x, basis);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    basis[j] = 0.0;
  }
  return m;
}

LinearMap p_map(const Element& x) {
  const LinearMap l = l_map(x);
  return 2.0 * (l * l) - l_map(square(x));
}

Element quadratic(const Element& y, const Element& x) {
  require_same_algebra(x, y);
  const Algebra& alg = x.algebra();
  if (alg.is_matrix()) {
    const HermitianMatrix ym = to_matrix(y);
    return from_matrix(alg, matmul(matmul(ym, to_matrix(x)), ym));
  }
  return 2.0 * jordan_product(y, jordan_product(y, x)) - jordan_product(square(y), x);
}

std::vector<double> eigenvalues(const Element& x) {
  const Algebra& alg = x.algebra();
  if (alg.kind() == AlgebraKind::Lorentz) {
    const LorentzSpectrum s = lorentz_spectrum(x);
    return {s.x0 + s.radius, s.x0 - s.radius};
  }
  const bool complex_kind = alg.kind() == AlgebraKind::HermComplex;
  const int r = alg.order();
  std::vector<double> values =
      detail::jacobi_eigenvalues(real_embedding(to_matrix(x), complex_kind), complex_kind ? 2 * r : r);
  std::sort(values.begin(), values.end(), std::greater<>());
  if (!complex_kind) return values;
  std::vector<double> paired(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) paired[static_cast<std::size_t>(i)] = 0.5 * (values[2 * i] + values[2 * i + 1]);
  return paired;
}

double det(const Element& x) {
  if (x.algebra().kind() == AlgebraKind::Lorentz) {
    const LorentzSpectrum s = lorentz_spectrum(x);
    return (s.x0 + s.radius) * (s.x0 - s.radius);
  }
  const auto values = eigenvalues(x);
  return std::accumulate(values.begin(), values.end(), 1.0, std::multiplies<>());
}

double trace(const Element& x) {
  if (x.algebra().kind() == AlgebraKind::Lorentz) return 2.0 * x[0];
  double t = 0.0;
  for (int i = 0; i < x.algebra().order(); ++i) t += x[static_cast<std::size_t>(i)];
  return t;
}

double log_det(const Element& x) {
  const auto values = eigenvalues(x);
  require_cone(values, "log_det");
  double s = 0.0;
  for (double v : values) s += std::log(v);
  return s;
}

double spectral_radius(const Element& x) {
  const auto values = eigenvalues(x);
  return std::max(std::abs(values.front()), std::abs(values.back()));
}

double min_eigenvalue(const Element& x) { return eigenvalues(x).back(); }

Element spectral_map(const Element& x, const std::function<double(double)>& f) {
  return spectral_apply(x, no_check, f);
}

Element inverse(const Element& x) {
  const auto check = [](const std::vector<double>& values) {
    double lo = std::abs(values.front());
    double hi = lo;
    for (double v : values) {
      lo = std::min(lo, std::abs(v));
      hi = std::max(hi, std::abs(v));
    }
    if (!(lo >= tolerance::kSingular * hi) || hi == 0.0) {
      throw SingularElement("inverse: element is singular, eigenvalues " + format_values(values));
    }
  };
  if (x.algebra().kind() == AlgebraKind::Lorentz) {
    check(eigenvalues(x));
    const double d = det(x);
    std::vector<double> c(x.coords().begin(), x.coords().end());
    c[0] /= d;
    for (std::size_t i = 1; i < c.size(); ++i) c[i] = -c[i] / d;
    return Element(x.algebra(), std::move(c));
  }
  return spectral_apply(x, check, [](double v) { return 1.0 / v; });
}

Element sqrt_in_cone(const Element& x) {
  return spectral_apply(
      x, [](const std::vector<double>& v) { require_cone(v, "sqrt_in_cone"); },
      [](double v) { return std::sqrt(v); });
}

Element inv_sqrt_in_cone(const Element& x) {
  return spectral_apply(
      x, [](const std::vector<double>& v) { require_cone(v, "inv_sqrt_in_cone"); },
      [](double v) { return 1.0 / std::sqrt(v); });
}

double max_abs_diff(const Element& x, const Element& y) {
  require_same_algebra(x, y);
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double relative_error(const Element& x, const Element& y) {
  double scale = tolerance::kRelativeFloor;
  for (std::size_t i = 0; i < x.size(); ++i) scale = std::max({scale, std::abs(x[i]), std::abs(y[i])});
  return max_abs_diff(x, y) / scale;
}

double relative_error(double x, double y) {
  return std::abs(x - y) / std::max({std::abs(x), std::abs(y), tolerance::kRelativeFloor});
}

}  // namespace symcone
