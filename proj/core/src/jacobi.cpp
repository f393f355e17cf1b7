#include "jacobi.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "symcone/errors.hpp"

namespace symcone::detail {

namespace {

constexpr int kMaxSweeps = 60;

template <bool kVectors>
void run_jacobi(std::vector<double>& a, std::vector<double>& v, int n) {
  const auto at = [n](std::vector<double>& m, int i, int j) -> double& {
    return m[static_cast<std::size_t>(i) * n + j];
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) at(a, i, j) = at(a, j, i);

  double frob = 0.0;
  for (double x : a) frob += x * x;
  frob = std::sqrt(frob);
  if (frob == 0.0) return;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double tiny = std::numeric_limits<double>::min() / eps + 1e-300 * frob;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        const double app = at(a, p, p);
        const double aqq = at(a, q, q);
        if (std::abs(apq) <= eps * std::sqrt(std::abs(app * aqq)) || std::abs(apq) <= tiny) {
          at(a, p, q) = at(a, q, p) = 0.0;
          continue;
        }
        rotated = true;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const double akp = at(a, k, p);
          const double akq = at(a, k, q);
          at(a, k, p) = c * akp - s * akq;
          at(a, k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(a, p, k);
          const double aqk = at(a, q, k);
          at(a, p, k) = c * apk - s * aqk;
          at(a, q, k) = s * apk + c * aqk;
        }
        at(a, p, q) = at(a, q, p) = 0.0;

        if constexpr (kVectors) {
          for (int k = 0; k < n; ++k) {
            const double vkp = at(v, k, p);
            const double vkq = at(v, k, q);
            at(v, k, p) = c * vkp - s * vkq;
            at(v, k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
    if (!rotated) return;
  }
  throw EigenNonConvergence("Jacobi eigensolver did not converge in " + std::to_string(kMaxSweeps) +
                            " sweeps (n = " + std::to_string(n) + ")");
}

}  // namespace

SymmetricEigen jacobi_eigen(std::vector<double> a, int n) {
  SymmetricEigen out;
  out.n = n;
  out.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) out.vectors[static_cast<std::size_t>(i) * n + i] = 1.0;
  run_jacobi<true>(a, out.vectors, n);
  out.values.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i) * n + i];
  return out;
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
  std::vector<double> unused;
  run_jacobi<false>(a, unused, n);
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i) * n + i];
  return values;
}

}  // namespace symcone::detail
