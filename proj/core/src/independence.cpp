#include "symcone/independence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "symcone/errors.hpp"
#include "symcone/parallel.hpp"
#include "symcone/rng.hpp"

namespace symcone {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

FeatureMatrix FeatureMatrix::from_elements(std::span<const Element> elements) {
  if (elements.empty()) return FeatureMatrix(0, 0);
  FeatureMatrix m(elements.size(), elements.front().size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].size() != m.cols()) throw DimensionMismatch("FeatureMatrix: ragged rows");
    std::copy(elements[i].coords().begin(), elements[i].coords().end(), m.data_.begin() + i * m.cols());
  }
  return m;
}

namespace {

double euclid(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

void require_paired(const FeatureMatrix& x, const FeatureMatrix& y) {
  if (x.rows() != y.rows()) throw DimensionMismatch("distance covariance: samples differ in length");
  if (x.rows() < 2) throw PreconditionError("distance covariance: need at least two observations");
}

/// Row sums of the pairwise distance matrix.
std::vector<double> distance_row_sums(const FeatureMatrix& x) {
  const std::size_t n = x.rows();
  std::vector<double> rs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclid(x.row(i), x.row(j));
      rs[i] += d;
      rs[j] += d;
    }
  return rs;
}

/// Double-centred distance matrix, n x n.
std::vector<double> centred_distances(const FeatureMatrix& x) {
  const std::size_t n = x.rows();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a[i * n + j] = a[j * n + i] = euclid(x.row(i), x.row(j));
  std::vector<double> mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean[i] = std::accumulate(a.begin() + static_cast<std::ptrdiff_t>(i * n),
                              a.begin() + static_cast<std::ptrdiff_t>((i + 1) * n), 0.0) /
              static_cast<double>(n);
    grand += mean[i];
  }
  grand /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] += grand - mean[i] - mean[j];
  return a;
}

std::vector<std::uint32_t> draw_permutation(std::size_t n, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, streams::kPermutation, index);
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng() % i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

std::vector<double> random_direction(std::size_t dim, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, streams::kProjection, index);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> u(dim);
  double sq = 0.0;
  do {
    sq = 0.0;
    for (auto& c : u) {
      c = gauss(rng);
      sq += c * c;
    }
  } while (sq == 0.0);
  const double inv = 1.0 / std::sqrt(sq);
  for (auto& c : u) c *= inv;
  return u;
}

/// Centred scalar sample with the quantities needed by the O(n log n)
/// cross-term: sort order, ranks and distance row sums.
struct ScalarPrep {
  std::vector<double> value;
  std::vector<std::uint32_t> order;  // indices sorted by value
  std::vector<std::uint32_t> rank;   // inverse of order
  std::vector<double> row_sum;       // sum_j |v_i - v_j|
  double total = 0.0;
};

ScalarPrep prepare(std::vector<double> v) {
  const std::size_t n = v.size();
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  for (auto& c : v) c -= m;

  ScalarPrep p;
  p.order.resize(n);
  std::iota(p.order.begin(), p.order.end(), 0u);
  std::sort(p.order.begin(), p.order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return v[a] < v[b] || (v[a] == v[b] && a < b);
  });
  p.rank.resize(n);
  for (std::size_t t = 0; t < n; ++t) p.rank[p.order[t]] = static_cast<std::uint32_t>(t);

  double all = 0.0;
  for (double c : v) all += c;
  p.row_sum.resize(n);
  double prefix = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double s = v[p.order[t]];
    const double below = s * static_cast<double>(t) - prefix;
    const double above = (all - prefix - s) - s * static_cast<double>(n - 1 - t);
    p.row_sum[p.order[t]] = below + above;
    prefix += s;
  }
  p.total = std::accumulate(p.row_sum.begin(), p.row_sum.end(), 0.0);
  p.value = std::move(v);
  return p;
}

struct FenwickNode {
  double count = 0.0;
  double y = 0.0;
  double x = 0.0;
  double xy = 0.0;

  FenwickNode& operator+=(const FenwickNode& o) {
    count += o.count;
    y += o.y;
    x += o.x;
    xy += o.xy;
    return *this;
  }
};

/// dCov^2 of (x_i, y_{perm_i}); perm may be empty for the identity.
///
/// Cross term sum_{ij} |x_i - x_j| |y_i - y_j| walks x in sorted order and,
/// for each i, splits the earlier points by sign(y_i - y_j) with a Fenwick
/// tree over y ranks.
double scalar_dcov_sq(const ScalarPrep& x, const ScalarPrep& y, std::span<const std::uint32_t> perm,
                      std::vector<FenwickNode>& tree) {
  const std::size_t n = x.value.size();
  tree.assign(n + 1, FenwickNode{});
  FenwickNode seen;
  double acc = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const std::uint32_t i = x.order[t];
    const std::uint32_t j = perm.empty() ? i : perm[i];
    const double xi = x.value[i];
    const double yi = y.value[j];
    const std::uint32_t r = y.rank[j];

    FenwickNode below;
    for (std::size_t k = r; k > 0; k -= k & (~k + 1)) below += tree[k];

    const double s0 = 2.0 * below.count - seen.count;
    const double sy = 2.0 * below.y - seen.y;
    const double sx = 2.0 * below.x - seen.x;
    const double sxy = 2.0 * below.xy - seen.xy;
    acc += xi * yi * s0 - xi * sy - yi * sx + sxy;

    const FenwickNode node{1.0, yi, xi, xi * yi};
    for (std::size_t k = r + 1; k <= n; k += k & (~k + 1)) tree[k] += node;
    seen += node;
  }
  const double cross = 2.0 * acc;

  double rows = 0.0;
  for (std::size_t i = 0; i < n; ++i) rows += x.row_sum[i] * y.row_sum[perm.empty() ? i : perm[i]];

  const double nd = static_cast<double>(n);
  return cross / (nd * nd) - 2.0 * rows / (nd * nd * nd) + x.total * y.total / (nd * nd * nd * nd);
}

std::vector<double> project(const FeatureMatrix& m, std::span<const double> dir) {
  std::vector<double> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < m.cols(); ++k) s += m(i, k) * dir[k];
    out[i] = s;
  }
  return out;
}

PermutationTestResult exact_test(const FeatureMatrix& x, const FeatureMatrix& y,
                                 const PermutationTestOptions& opt, std::uint64_t seed) {
  const std::size_t n = x.rows();
  const std::vector<double> a = centred_distances(x);
  const std::vector<double> b = centred_distances(y);
  const auto cross = [&](std::span<const std::uint32_t> perm) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* ai = a.data() + i * n;
      const double* bi = b.data() + static_cast<std::size_t>(perm.empty() ? i : perm[i]) * n;
      double row = 0.0;
      if (perm.empty()) {
        for (std::size_t j = 0; j < n; ++j) row += ai[j] * bi[j];
      } else {
        for (std::size_t j = 0; j < n; ++j) row += ai[j] * bi[perm[j]];
      }
      s += row;
    }
    return s;
  };
  const double observed = cross({});
  double vx = 0.0;
  double vy = 0.0;
  for (std::size_t k = 0; k < n * n; ++k) {
    vx += a[k] * a[k];
    vy += b[k] * b[k];
  }

  std::vector<char> exceed(opt.permutations, 0);
  parallel_for(opt.permutations, opt.threads, [&](std::size_t bi) {
    const auto perm = draw_permutation(n, seed, bi);
    exceed[bi] = cross(perm) >= observed ? 1 : 0;
  });

  PermutationTestResult r;
  r.method = DcorMethod::Exact;
  r.permutations = opt.permutations;
  r.exceedances = static_cast<std::size_t>(std::count(exceed.begin(), exceed.end(), 1));
  r.p_value = static_cast<double>(1 + r.exceedances) / static_cast<double>(1 + opt.permutations);
  const double den = std::sqrt(vx * vy);
  r.statistic = den > 0.0 ? std::sqrt(std::max(0.0, observed / den)) : 0.0;
  return r;
}

PermutationTestResult projected_test(const FeatureMatrix& x, const FeatureMatrix& y,
                                     const PermutationTestOptions& opt, std::uint64_t seed) {
  const std::size_t n = x.rows();
  const std::size_t k_count = std::max<std::size_t>(1, opt.projections);

  // Projection k uses directions 4k..4k+3: (x, y) for the numerator and a
  // second independent pair for the two self-covariances.
  std::vector<ScalarPrep> px;
  std::vector<ScalarPrep> py;
  double den_x = 0.0;
  double den_y = 0.0;
  std::vector<FenwickNode> tree;
  for (std::size_t k = 0; k < k_count; ++k) {
    const auto ux = random_direction(x.cols(), seed, 4 * k);
    const auto uy = random_direction(y.cols(), seed, 4 * k + 1);
    const auto ux2 = random_direction(x.cols(), seed, 4 * k + 2);
    const auto uy2 = random_direction(y.cols(), seed, 4 * k + 3);
    px.push_back(prepare(project(x, ux)));
    py.push_back(prepare(project(y, uy)));
    den_x += scalar_dcov_sq(px.back(), prepare(project(x, ux2)), {}, tree);
    den_y += scalar_dcov_sq(py.back(), prepare(project(y, uy2)), {}, tree);
  }

  const auto numerator = [&](std::span<const std::uint32_t> perm, std::vector<FenwickNode>& buf) {
    double s = 0.0;
    for (std::size_t k = 0; k < k_count; ++k) s += scalar_dcov_sq(px[k], py[k], perm, buf);
    return s;
  };
  const double observed = numerator({}, tree);

  std::vector<char> exceed(opt.permutations, 0);
  const unsigned workers = std::max(1u, opt.threads);
  std::vector<std::vector<FenwickNode>> buffers(workers);
  parallel_for(workers, workers, [&](std::size_t w) {
    for (std::size_t bi = w; bi < opt.permutations; bi += workers) {
      const auto perm = draw_permutation(n, seed, bi);
      exceed[bi] = numerator(perm, buffers[w]) >= observed ? 1 : 0;
    }
  });

  PermutationTestResult r;
  r.method = DcorMethod::Projected;
  r.permutations = opt.permutations;
  r.exceedances = static_cast<std::size_t>(std::count(exceed.begin(), exceed.end(), 1));
  r.p_value = static_cast<double>(1 + r.exceedances) / static_cast<double>(1 + opt.permutations);
  const double den = std::sqrt(std::max(0.0, den_x) * std::max(0.0, den_y));
  r.statistic = den > 0.0 ? std::sqrt(std::max(0.0, observed / den)) : 0.0;
  return r;
}

}  // namespace

double distance_covariance_sq(const FeatureMatrix& x, const FeatureMatrix& y) {
  require_paired(x, y);
  const std::size_t n = x.rows();
  const auto ra = distance_row_sums(x);
  const auto rb = distance_row_sums(y);
  double cross = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) cross += euclid(x.row(i), x.row(j)) * euclid(y.row(i), y.row(j));
  cross *= 2.0;
  double rows = 0.0;
  for (std::size_t i = 0; i < n; ++i) rows += ra[i] * rb[i];
  const double ta = std::accumulate(ra.begin(), ra.end(), 0.0);
  const double tb = std::accumulate(rb.begin(), rb.end(), 0.0);
  const double nd = static_cast<double>(n);
  return cross / (nd * nd) - 2.0 * rows / (nd * nd * nd) + ta * tb / (nd * nd * nd * nd);
}

double distance_correlation(const FeatureMatrix& x, const FeatureMatrix& y) {
  const double xy = distance_covariance_sq(x, y);
  const double xx = distance_covariance_sq(x, x);
  const double yy = distance_covariance_sq(y, y);
  const double den = std::sqrt(xx * yy);
  return den > 0.0 ? std::sqrt(std::max(0.0, xy / den)) : 0.0;
}

double univariate_distance_covariance_sq(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("distance covariance: samples differ in length");
  if (x.size() < 2) throw PreconditionError("distance covariance: need at least two observations");
  std::vector<FenwickNode> tree;
  return scalar_dcov_sq(prepare({x.begin(), x.end()}), prepare({y.begin(), y.end()}), {}, tree);
}

std::string to_string(DcorMethod m) {
  switch (m) {
    case DcorMethod::Auto: return "auto";
    case DcorMethod::Exact: return "exact";
    case DcorMethod::Projected: return "projected";
  }
  return {};
}

DcorMethod dcor_method_from_string(const std::string& s) {
  if (s == "auto") return DcorMethod::Auto;
  if (s == "exact") return DcorMethod::Exact;
  if (s == "projected") return DcorMethod::Projected;
  throw ParseError("unknown distance-correlation method '" + s + "' (expected auto, exact, projected)");
}

PermutationTestResult dcor_permutation_test(const FeatureMatrix& x, const FeatureMatrix& y,
                                            const PermutationTestOptions& options, std::uint64_t seed) {
  require_paired(x, y);
  if (options.permutations == 0) throw PreconditionError("permutation test: need at least one permutation");
  DcorMethod method = options.method;
  if (method == DcorMethod::Auto) {
    method = x.rows() <= options.exact_limit ? DcorMethod::Exact : DcorMethod::Projected;
  }
  return method == DcorMethod::Exact ? exact_test(x, y, options, seed) : projected_test(x, y, options, seed);
}

}  // namespace symcone
