#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "symcone/algebra.hpp"

namespace symcone {

/// A point of a Jordan algebra, stored as coordinates in a fixed orthonormal
/// basis.
///
/// Basis order for matrix kinds of order r:
///   1. the r diagonal units E_ii, i = 0..r-1;
///   2. (E_ij + E_ji)/sqrt(2) for i < j, row-major;
///   3. HERM_COMPLEX only: i (E_ij - E_ji)/sqrt(2) for i < j, row-major.
/// LORENTZ(n) uses the canonical basis of R^{n+1} (x0 first).
///
/// With this basis the algebra inner product is the coordinate dot product.
class Element {
 public:
  Element(Algebra algebra, std::vector<double> coords);

  static Element zero(const Algebra& algebra);

  const Algebra& algebra() const noexcept { return algebra_; }
  std::span<const double> coords() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(double s);

  friend bool operator==(const Element&, const Element&) = default;

 private:
  Algebra algebra_;
  std::vector<double> coords_;
};

Element operator+(Element x, const Element& y);
Element operator-(Element x, const Element& y);
Element operator-(Element x);
Element operator*(double s, Element x);
Element operator*(Element x, double s);

/// Throws AlgebraMismatch unless both elements live in the same algebra.
void require_same_algebra(const Element& x, const Element& y);

/// Dense r x r Hermitian matrix, row-major. Real kinds keep zero imaginary parts.
struct HermitianMatrix {
  int order = 0;
  std::vector<std::complex<double>> entries;

  explicit HermitianMatrix(int r) : order(r), entries(static_cast<std::size_t>(r) * r) {}

  std::complex<double>& operator()(int i, int j) { return entries[static_cast<std::size_t>(i) * order + j]; }
  const std::complex<double>& operator()(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * order + j];
  }
};

/// Structured view of a matrix-kind element.
HermitianMatrix to_matrix(const Element& x);
/// Inverse of to_matrix. The input is Hermitian-symmetrised first, so only the
/// Hermitian part of a non-Hermitian matrix survives.
Element from_matrix(const Algebra& algebra, const HermitianMatrix& m);

/// (x0, xbar) view of a LORENTZ element.
struct LorentzPoint {
  double x0 = 0.0;
  std::vector<double> xbar;
};

LorentzPoint to_lorentz(const Element& x);
Element from_lorentz(const Algebra& algebra, const LorentzPoint& p);

/// Endomorphism of the algebra's underlying vector space, as a dim x dim
/// row-major matrix in the fixed basis.
class LinearMap {
 public:
  LinearMap(Algebra algebra, std::vector<double> entries);

  static LinearMap identity(const Algebra& algebra);
  static LinearMap zero(const Algebra& algebra);

  const Algebra& algebra() const noexcept { return algebra_; }
  std::size_t dim() const noexcept { return algebra_.dim(); }
  std::span<const double> entries() const noexcept { return entries_; }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim() + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * dim() + j]; }

  LinearMap transpose() const;

  friend bool operator==(const LinearMap&, const LinearMap&) = default;

 private:
  Algebra algebra_;
  std::vector<double> entries_;
};

LinearMap operator*(const LinearMap& a, const LinearMap& b);
LinearMap operator+(const LinearMap& a, const LinearMap& b);
LinearMap operator-(const LinearMap& a, const LinearMap& b);
LinearMap operator*(double s, const LinearMap& a);

/// Matrix-vector product m x. Throws DimensionMismatch / AlgebraMismatch.
Element apply(const LinearMap& m, const Element& x);

}  // namespace symcone
