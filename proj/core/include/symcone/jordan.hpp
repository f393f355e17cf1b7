#pragma once

#include <functional>
#include <vector>

#include "symcone/element.hpp"

namespace symcone {

namespace tolerance {
/// Relative threshold (to the spectral radius) below which an eigenvalue is
/// treated as zero by inverse().
inline constexpr double kSingular = 1e-12;
/// Relative slack used for cone membership decisions.
inline constexpr double kCone = 1e-12;
/// Floor for relative-error denominators.
inline constexpr double kRelativeFloor = 1e-14;
}  // namespace tolerance

Element unit(const Algebra& algebra);

/// Jordan product x o y: (xy + yx)/2 for matrix kinds, the spin-factor
/// product (x.y, x0 ybar + y0 xbar) for LORENTZ.
Element jordan_product(const Element& x, const Element& y);
Element square(const Element& x);

double inner(const Element& x, const Element& y);
double norm(const Element& x);

/// Matrix of y -> x o y.
LinearMap l_map(const Element& x);
/// Quadratic representation P(x) = 2 L(x)^2 - L(x^2).
LinearMap p_map(const Element& x);
/// P(y) x evaluated without materialising P(y): y x y for matrix kinds.
Element quadratic(const Element& y, const Element& x);

/// Jordan eigenvalues, sorted descending. r values.
std::vector<double> eigenvalues(const Element& x);
double det(const Element& x);
double trace(const Element& x);
/// ln det for elements of the open cone; throws NotInCone otherwise.
double log_det(const Element& x);
double spectral_radius(const Element& x);
double min_eigenvalue(const Element& x);

/// Applies f to the Jordan eigenvalues: sum_i f(lambda_i) c_i over a Jordan
/// frame of x.
Element spectral_map(const Element& x, const std::function<double(double)>& f);

/// Throws SingularElement when min |lambda| < kSingular * max |lambda|.
Element inverse(const Element& x);
/// Unique square root inside the cone; throws NotInCone.
Element sqrt_in_cone(const Element& x);
/// x^{-1/2} for x in the cone; throws NotInCone.
Element inv_sqrt_in_cone(const Element& x);

/// max_i |x_i - y_i| / max(|x|_inf, |y|_inf, kRelativeFloor).
double relative_error(const Element& x, const Element& y);
double relative_error(double x, double y);
double max_abs_diff(const Element& x, const Element& y);

}  // namespace symcone
