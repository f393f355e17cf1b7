#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace symcone {

enum class AlgebraKind { SymReal, HermComplex, Lorentz };

/// Descriptor of a Euclidean simple Jordan algebra.
///
/// Matrix kinds are r x r symmetric (real) or Hermitian (complex) matrices;
/// LORENTZ(n) is R^{n+1} with the spin-factor product. Rank, dimension and
/// Peirce degree are derived from the kind and its order and satisfy
/// dim = r + d r (r - 1) / 2.
class Algebra {
 public:
  /// Largest matrix order supported by the dense eigensolver.
  static constexpr int kMaxMatrixOrder = 8;

  static Algebra sym_real(int r);
  static Algebra herm_complex(int r);
  static Algebra lorentz(int n);

  /// Parses "symr:3", "hermc:2" or "lorentz:4".
  static Algebra parse(std::string_view spec);
  /// Builds from the serialized kind name ("SYM_REAL", ...) and order.
  static Algebra from_kind_name(std::string_view kind, int order);

  AlgebraKind kind() const noexcept { return kind_; }
  int rank() const noexcept { return rank_; }
  std::size_t dim() const noexcept { return dim_; }
  int peirce_degree() const noexcept { return peirce_; }
  /// r for matrix kinds, n for LORENTZ(n).
  int order() const noexcept { return order_; }
  bool is_matrix() const noexcept { return kind_ != AlgebraKind::Lorentz; }

  double dim_over_rank() const noexcept { return static_cast<double>(dim_) / rank_; }
  /// dim/r - 1: Wishart shapes must lie strictly above this value.
  double shape_threshold() const noexcept { return dim_over_rank() - 1.0; }

  /// Canonical spec string, e.g. "symr:3".
  std::string spec() const;
  /// "SYM_REAL", "HERM_COMPLEX" or "LORENTZ".
  std::string kind_name() const;
  /// "SYM_REAL(3)".
  std::string to_string() const;

  friend bool operator==(const Algebra&, const Algebra&) = default;

 private:
  Algebra(AlgebraKind kind, int order, int rank, std::size_t dim, int peirce)
      : kind_(kind), order_(order), rank_(rank), dim_(dim), peirce_(peirce) {}

  AlgebraKind kind_;
  int order_;
  int rank_;
  std::size_t dim_;
  int peirce_;
};

}  // namespace symcone
