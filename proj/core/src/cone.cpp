#include "symcone/cone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "symcone/errors.hpp"
#include "symcone/jordan.hpp"

namespace symcone {

namespace {

struct Extremes {
  double min;
  double radius;
};

Extremes extremes(const Element& x) {
  const auto v = eigenvalues(x);
  return {v.back(), std::max(std::abs(v.front()), std::abs(v.back()))};
}

}  // namespace

ConeElement ConeElement::certify(Element x, double margin) {
  if (margin < 0.0) margin = tolerance::kCone;
  const Extremes e = extremes(x);
  if (!(e.min > margin * e.radius)) {
    std::ostringstream os;
    os.precision(17);
    os << "element is not in the open cone: min eigenvalue " << e.min << ", spectral radius "
       << e.radius << ", margin " << margin;
    throw NotInCone(os.str());
  }
  return ConeElement(std::move(x), e.min);
}

std::optional<ConeElement> ConeElement::try_certify(Element x, double margin) {
  if (margin < 0.0) margin = tolerance::kCone;
  const Extremes e = extremes(x);
  if (!(e.min > margin * e.radius)) return std::nullopt;
  return ConeElement(std::move(x), e.min);
}

bool contains_open(const Element& x) { return contains_open_strict(x, tolerance::kCone); }

bool contains_open_strict(const Element& x, double margin) {
  const Extremes e = extremes(x);
  return e.min > margin * e.radius;
}

bool contains_closure(const Element& x) {
  const Extremes e = extremes(x);
  return e.min >= -tolerance::kCone * e.radius;
}

bool in_domain_D(const Element& u) { return in_domain_D_strict(u, tolerance::kCone); }

bool in_domain_D_strict(const Element& u, double margin) {
  return contains_open_strict(u, margin) && contains_open_strict(unit(u.algebra()) - u, margin);
}

double positivity_pairing(const ConeElement& y, const Element& x) {
  require_same_algebra(y.element(), x);
  if (std::all_of(x.coords().begin(), x.coords().end(), [](double c) { return c == 0.0; })) {
    throw PreconditionError("positivity_pairing: x must be nonzero");
  }
  if (!contains_closure(x)) {
    throw PreconditionError("positivity_pairing: x is not in the closed cone");
  }
  return inner(y.element(), x);
}

}  // namespace symcone
