#pragma once

#include <vector>

namespace symcone::detail {

/// Eigen-decomposition of a dense real symmetric matrix.
/// vectors is row-major n x n with eigenvector k stored in column k.
struct SymmetricEigen {
  int n = 0;
  std::vector<double> values;
  std::vector<double> vectors;
};

/// Cyclic Jacobi with the Demmel-Veselic stopping rule. `a` is row-major and
/// assumed symmetric; only its upper triangle is trusted. Throws
/// EigenNonConvergence after the sweep budget is exhausted.
SymmetricEigen jacobi_eigen(std::vector<double> a, int n);

/// Eigenvalues only (no accumulated rotations).
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n);

}  // namespace symcone::detail
