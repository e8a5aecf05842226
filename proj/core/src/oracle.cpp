#include "zapmmv/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "eigen_support.hpp"
#include "zapmmv/errors.hpp"

namespace zapmmv {

namespace {

constexpr double kEnumerationGuard = 1e6;
constexpr std::size_t kSparkGuard = 20;
constexpr double kRankThreshold = 1e-10;

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    c *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (c > kEnumerationGuard * 10.0) return c;
  }
  return c;
}

/// Advances a k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<Eigen::Index>& comb, Eigen::Index n) {
  const auto k = static_cast<Eigen::Index>(comb.size());
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    if (comb[static_cast<std::size_t>(i)] < n - k + i) {
      ++comb[static_cast<std::size_t>(i)];
      for (Eigen::Index j = i + 1; j < k; ++j) {
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

std::size_t eigen_rank(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = kRankThreshold * sv(0);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace

DenseMatrix exhaustive_solve(const DenseMatrix& a, const DenseMatrix& y, std::size_t k) {
  if (y.rows() != a.rows()) {
    throw DimensionError("exhaustive_solve: A is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " but Y has " + std::to_string(y.rows()) +
                         " rows");
  }
  if (k == 0 || k > a.rows()) {
    throw ValueError("exhaustive_solve: need 1 <= k <= M, got k=" + std::to_string(k));
  }
  if (binomial(a.cols(), k) > kEnumerationGuard) {
    throw OracleGuardError("instance too large for oracle: C(" + std::to_string(a.cols()) + "," +
                           std::to_string(k) + ") exceeds 1e6");
  }
  require_finite(a, "exhaustive_solve a");
  require_finite(y, "exhaustive_solve y");

  auto ae = as_eigen(a);
  auto ye = as_eigen(y);

  std::vector<Eigen::Index> comb(k);
  for (std::size_t i = 0; i < k; ++i) comb[i] = static_cast<Eigen::Index>(i);

  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<Eigen::Index> best_comb;
  Eigen::MatrixXd best_coeffs;
  Eigen::MatrixXd sub(ae.rows(), static_cast<Eigen::Index>(k));
  do {
    for (std::size_t c = 0; c < k; ++c) {
      sub.col(static_cast<Eigen::Index>(c)) = ae.col(comb[c]);
    }
    const Eigen::MatrixXd coeffs = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(sub).solve(ye);
    const double residual = (ye - sub * coeffs).norm();
    // Strict improvement keeps the lexicographically smallest support on ties.
    if (residual < best_residual) {
      best_residual = residual;
      best_comb = comb;
      best_coeffs = coeffs;
    }
  } while (next_combination(comb, ae.cols()));

  DenseMatrix solution(a.cols(), y.cols());
  auto se = as_eigen(solution);
  for (std::size_t c = 0; c < k; ++c) {
    se.row(best_comb[c]) = best_coeffs.row(static_cast<Eigen::Index>(c));
  }
  return solution;
}

std::size_t spark(const DenseMatrix& a) {
  if (a.cols() > kSparkGuard) {
    throw OracleGuardError("instance too large for spark: N=" + std::to_string(a.cols()) +
                           " exceeds " + std::to_string(kSparkGuard));
  }
  require_finite(a, "spark");
  auto ae = as_eigen(a);
  const auto n = static_cast<std::size_t>(ae.cols());
  const auto max_size = std::min(n, static_cast<std::size_t>(ae.rows()) + 1);

  Eigen::MatrixXd sub;
  for (std::size_t s = 1; s <= max_size; ++s) {
    std::vector<Eigen::Index> comb(s);
    for (std::size_t i = 0; i < s; ++i) comb[i] = static_cast<Eigen::Index>(i);
    sub.resize(ae.rows(), static_cast<Eigen::Index>(s));
    do {
      for (std::size_t c = 0; c < s; ++c) {
        sub.col(static_cast<Eigen::Index>(c)) = ae.col(comb[c]);
      }
      if (eigen_rank(sub) < s) return s;
    } while (next_combination(comb, ae.cols()));
  }
  return n + 1;
}

std::size_t numerical_rank(const DenseMatrix& m) {
  require_finite(m, "numerical_rank");
  return eigen_rank(as_eigen(m));
}

UniquenessReport uniqueness_check(const DenseMatrix& a, const DenseMatrix& y, std::size_t k) {
  if (y.rows() != a.rows()) {
    throw DimensionError("uniqueness_check: A is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " but Y has " + std::to_string(y.rows()) +
                         " rows");
  }
  UniquenessReport report;
  report.spark = spark(a);
  report.rank_y = numerical_rank(y);
  report.bound = (static_cast<double>(report.spark) + static_cast<double>(report.rank_y) - 1.0) / 2.0;
  report.k = k;
  report.unique = static_cast<double>(k) < report.bound;
  return report;
}

}  // namespace zapmmv
