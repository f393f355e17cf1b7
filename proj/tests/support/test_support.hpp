#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <vector>

#include "symcone/algebra.hpp"
#include "symcone/element.hpp"

namespace symcone::testing {

using Rng = std::mt19937_64;

/// Standard normal coordinates.
Element random_element(const Algebra& alg, Rng& rng);

/// x^2 + shift*e, always inside the cone.
Element random_cone_element(const Algebra& alg, Rng& rng, double shift = 0.1);

/// Element with eigenvalues drawn uniformly in (lo, hi).
Element random_with_spectrum(const Algebra& alg, Rng& rng, double lo, double hi);

/// Dense Hermitian matrix built straight from the basis definition (matrix kinds only).
Eigen::MatrixXcd oracle_matrix(const Element& x);
Element oracle_element(const Algebra& alg, const Eigen::MatrixXcd& m);

/// Ascending eigenvalues from Eigen (matrix kinds) or x0 -/+ |xbar| (Lorentz).
std::vector<double> oracle_eigenvalues(const Element& x);

/// Jordan product computed through the dense oracle.
Element oracle_product(const Element& x, const Element& y);

std::vector<Algebra> axiom_algebras();

using ConeIntegrand = std::function<double(const Element&)>;

/// Integral over the SYM_REAL(2) cone in basis coordinates.
double integrate_sym2_cone(const ConeIntegrand& f, double tol = 1e-7);

/// Integral over the HERM_COMPLEX(2) cone; f must depend on the off-diagonal part only through its modulus.
double integrate_herm2_cone(const ConeIntegrand& f, double tol = 1e-7);

/// Integral over a Lorentz cone; f must be invariant under rotations of xbar.
double integrate_lorentz_cone(const Algebra& alg, const ConeIntegrand& f, double tol = 1e-7);

}  // namespace symcone::testing
