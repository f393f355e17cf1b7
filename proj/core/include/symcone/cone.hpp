#pragma once

#include <optional>

#include "symcone/element.hpp"

namespace symcone {

/// An element certified to lie in the open symmetric cone, together with its
/// smallest Jordan eigenvalue.
class ConeElement {
 public:
  /// Throws NotInCone unless min eigenvalue > margin * spectral radius
  /// (margin defaults to the library cone tolerance).
  static ConeElement certify(Element x, double margin = -1.0);
  static std::optional<ConeElement> try_certify(Element x, double margin = -1.0);

  const Element& element() const noexcept { return element_; }
  const Algebra& algebra() const noexcept { return element_.algebra(); }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

  operator const Element&() const noexcept { return element_; }  // NOLINT

 private:
  ConeElement(Element x, double min_eig) : element_(std::move(x)), min_eigenvalue_(min_eig) {}

  Element element_;
  double min_eigenvalue_;
};

/// All eigenvalues > kCone * spectral radius.
bool contains_open(const Element& x);
/// All eigenvalues > margin * spectral radius.
bool contains_open_strict(const Element& x, double margin);
/// All eigenvalues >= -kCone * spectral radius.
bool contains_closure(const Element& x);
/// u in V and e - u in V, i.e. all eigenvalues in (0, 1).
bool in_domain_D(const Element& u);
bool in_domain_D_strict(const Element& u, double margin);

/// <y, x> for y in V and nonzero x in the closed cone. Strictly positive;
/// throws PreconditionError when x is zero or outside the closure.
double positivity_pairing(const ConeElement& y, const Element& x);

}  // namespace symcone
