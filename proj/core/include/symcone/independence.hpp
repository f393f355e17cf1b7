#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symcone/element.hpp"

namespace symcone {

/// rows x cols sample of feature vectors, row-major.
class FeatureMatrix {
 public:
  FeatureMatrix(std::size_t rows, std::size_t cols);
  static FeatureMatrix from_elements(std::span<const Element> elements);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Squared sample distance covariance (V-statistic), O(n^2).
double distance_covariance_sq(const FeatureMatrix& x, const FeatureMatrix& y);
/// Sample distance correlation in [0, 1], O(n^2).
double distance_correlation(const FeatureMatrix& x, const FeatureMatrix& y);

/// Squared distance covariance of two scalar samples in O(n log n).
/// Agrees with distance_covariance_sq on one-column inputs.
double univariate_distance_covariance_sq(std::span<const double> x, std::span<const double> y);

enum class DcorMethod {
  Auto,       ///< Exact below exact_limit rows, Projected above.
  Exact,      ///< Full O(n^2) statistic, O(n^2) per permutation.
  Projected,  ///< Random-projection estimate, O(K n log n) per permutation.
};

std::string to_string(DcorMethod m);
DcorMethod dcor_method_from_string(const std::string& s);

struct PermutationTestOptions {
  std::size_t permutations = 500;
  DcorMethod method = DcorMethod::Auto;
  std::size_t projections = 16;
  std::size_t exact_limit = 1500;
  unsigned threads = 1;
};

struct PermutationTestResult {
  double statistic = 0.0;  ///< distance correlation (exact or projected estimate)
  double p_value = 1.0;    ///< (1 + #{perm >= observed}) / (1 + B)
  std::size_t permutations = 0;
  std::size_t exceedances = 0;
  DcorMethod method = DcorMethod::Exact;
};

/// Permutation test of independence between the rows of x and y. Permutation
/// b is drawn from CounterRng(seed, streams::kPermutation, b) and projection k
/// from CounterRng(seed, streams::kProjection, k), so the result does not
/// depend on the thread count.
PermutationTestResult dcor_permutation_test(const FeatureMatrix& x, const FeatureMatrix& y,
                                            const PermutationTestOptions& options, std::uint64_t seed);

}  // namespace symcone
