#include "symcone/element.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "symcone/errors.hpp"

namespace symcone {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_same(const Algebra& a, const Algebra& b) {
  if (!(a == b)) {
    throw AlgebraMismatch("algebra mismatch: " + a.to_string() + " vs " + b.to_string());
  }
}

}  // namespace

Element::Element(Algebra algebra, std::vector<double> coords)
    : algebra_(algebra), coords_(std::move(coords)) {
  if (coords_.size() != algebra_.dim()) {
    throw DimensionMismatch("element of " + algebra_.to_string() + " needs " +
                            std::to_string(algebra_.dim()) + " coordinates, got " +
                            std::to_string(coords_.size()));
  }
}

Element Element::zero(const Algebra& algebra) {
  return Element(algebra, std::vector<double>(algebra.dim(), 0.0));
}

Element& Element::operator+=(const Element& other) {
  require_same(algebra_, other.algebra_);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same(algebra_, other.algebra_);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Element& Element::operator*=(double s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

Element operator+(Element x, const Element& y) { return x += y; }
Element operator-(Element x, const Element& y) { return x -= y; }
Element operator-(Element x) { return x *= -1.0; }
Element operator*(double s, Element x) { return x *= s; }
Element operator*(Element x, double s) { return x *= s; }

void require_same_algebra(const Element& x, const Element& y) { require_same(x.algebra(), y.algebra()); }

HermitianMatrix to_matrix(const Element& x) {
  const Algebra& alg = x.algebra();
  if (!alg.is_matrix()) {
    throw AlgebraMismatch("to_matrix: " + alg.to_string() + " has no matrix view");
  }
  const int r = alg.order();
  HermitianMatrix m(r);
  for (int i = 0; i < r; ++i) m(i, i) = x[static_cast<std::size_t>(i)];

  const std::size_t off = static_cast<std::size_t>(r) * (r - 1) / 2;
  std::size_t k = 0;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j, ++k) {
      const double re = x[static_cast<std::size_t>(r) + k] * kInvSqrt2;
      const double im = alg.kind() == AlgebraKind::HermComplex
                            ? x[static_cast<std::size_t>(r) + off + k] * kInvSqrt2
                            : 0.0;
      m(i, j) = {re, im};
      m(j, i) = {re, -im};
    }
  }
  return m;
}

Element from_matrix(const Algebra& alg, const HermitianMatrix& m) {
  if (!alg.is_matrix()) {
    throw AlgebraMismatch("from_matrix: " + alg.to_string() + " has no matrix view");
  }
  const int r = alg.order();
  if (m.order != r) {
    throw DimensionMismatch("from_matrix: expected order " + std::to_string(r) + ", got " +
                            std::to_string(m.order));
  }
  std::vector<double> c(alg.dim(), 0.0);
  for (int i = 0; i < r; ++i) c[static_cast<std::size_t>(i)] = m(i, i).real();

  const std::size_t off = static_cast<std::size_t>(r) * (r - 1) / 2;
  std::size_t k = 0;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j, ++k) {
      // Hermitian part: (m_ij + conj(m_ji)) / 2.
      const std::complex<double> h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      c[static_cast<std::size_t>(r) + k] = h.real() * std::numbers::sqrt2;
      if (alg.kind() == AlgebraKind::HermComplex) {
        c[static_cast<std::size_t>(r) + off + k] = h.imag() * std::numbers::sqrt2;
      }
    }
  }
  return Element(alg, std::move(c));
}

LorentzPoint to_lorentz(const Element& x) {
  if (x.algebra().kind() != AlgebraKind::Lorentz) {
    throw AlgebraMismatch("to_lorentz: " + x.algebra().to_string() + " is not a Lorentz algebra");
  }
  LorentzPoint p;
  p.x0 = x[0];
  p.xbar.assign(x.coords().begin() + 1, x.coords().end());
  return p;
}

Element from_lorentz(const Algebra& alg, const LorentzPoint& p) {
  if (alg.kind() != AlgebraKind::Lorentz) {
    throw AlgebraMismatch("from_lorentz: " + alg.to_string() + " is not a Lorentz algebra");
  }
  std::vector<double> c;
  c.reserve(alg.dim());
  c.push_back(p.x0);
  c.insert(c.end(), p.xbar.begin(), p.xbar.end());
  return Element(alg, std::move(c));
}

LinearMap::LinearMap(Algebra algebra, std::vector<double> entries)
    : algebra_(algebra), entries_(std::move(entries)) {
  if (entries_.size() != algebra_.dim() * algebra_.dim()) {
    throw DimensionMismatch("linear map on " + algebra_.to_string() + " needs " +
                            std::to_string(algebra_.dim() * algebra_.dim()) + " entries, got " +
                            std::to_string(entries_.size()));
  }
}

LinearMap LinearMap::identity(const Algebra& algebra) {
  LinearMap m = zero(algebra);
  for (std::size_t i = 0; i < algebra.dim(); ++i) m(i, i) = 1.0;
  return m;
}

LinearMap LinearMap::zero(const Algebra& algebra) {
  return LinearMap(algebra, std::vector<double>(algebra.dim() * algebra.dim(), 0.0));
}

LinearMap LinearMap::transpose() const {
  LinearMap t = zero(algebra_);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) t(j, i) = (*this)(i, j);
  return t;
}

LinearMap operator*(const LinearMap& a, const LinearMap& b) {
  require_same(a.algebra(), b.algebra());
  const std::size_t n = a.dim();
  LinearMap c = LinearMap::zero(a.algebra());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

LinearMap operator+(const LinearMap& a, const LinearMap& b) {
  require_same(a.algebra(), b.algebra());
  std::vector<double> e(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries()[i];
  return LinearMap(a.algebra(), std::move(e));
}

LinearMap operator-(const LinearMap& a, const LinearMap& b) { return a + (-1.0) * b; }

LinearMap operator*(double s, const LinearMap& a) {
  std::vector<double> e(a.entries().begin(), a.entries().end());
  for (auto& v : e) v *= s;
  return LinearMap(a.algebra(), std::move(e));
}

Element apply(const LinearMap& m, const Element& x) {
  if (m.dim() != x.size()) {
    throw DimensionMismatch("apply: map of dimension " + std::to_string(m.dim()) +
                            " on element of dimension " + std::to_string(x.size()));
  }
  require_same(m.algebra(), x.algebra());
  std::vector<double> y(m.dim(), 0.0);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) acc += m(i, j) * x[j];
    y[i] = acc;
  }
  return Element(x.algebra(), std::move(y));
}

}  // namespace symcone
