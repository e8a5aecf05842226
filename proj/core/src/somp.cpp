#include "zapmmv/somp.hpp"

#include <string>
#include <vector>

#include "eigen_support.hpp"
#include "zapmmv/errors.hpp"

namespace zapmmv {

SompResult somp_solve(const DenseMatrix& a, const DenseMatrix& y, std::size_t k,
                      double residual_tol) {
  if (y.rows() != a.rows()) {
    throw DimensionError("somp_solve: A is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " but Y has " + std::to_string(y.rows()) +
                         " rows");
  }
  if (k == 0 || k > a.rows()) {
    throw ValueError("somp_solve: need 1 <= k <= M, got k=" + std::to_string(k) + " with M=" +
                     std::to_string(a.rows()));
  }
  if (residual_tol < 0.0) {
    throw ValueError("somp_solve: residual_tol must be nonnegative");
  }
  require_finite(a, "somp_solve a");
  require_finite(y, "somp_solve y");

  auto ae = as_eigen(a);
  auto ye = as_eigen(y);
  const Eigen::Index n = ae.cols();

  const Eigen::VectorXd column_norms = ae.colwise().norm();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (column_norms(i) == 0.0) {
      throw ValueError("somp_solve: column " + std::to_string(i) + " of A is zero");
    }
  }

  const double y_norm = ye.norm();
  Eigen::MatrixXd residual = ye;
  Eigen::MatrixXd coeffs;
  std::vector<std::size_t> support;
  std::vector<double> residual_norms;
  std::vector<bool> selected(static_cast<std::size_t>(n), false);

  while (support.size() < k && residual.norm() > residual_tol * y_norm) {
    const Eigen::MatrixXd corr = ae.transpose() * residual;
    double best_score = -1.0;
    Eigen::Index best_index = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (selected[static_cast<std::size_t>(i)]) continue;
      const double score = corr.row(i).norm() / column_norms(i);
      if (score > best_score) {
        best_score = score;
        best_index = i;
      }
    }
    if (best_index < 0) break;
    selected[static_cast<std::size_t>(best_index)] = true;
    support.push_back(static_cast<std::size_t>(best_index));

    Eigen::MatrixXd sub(ae.rows(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t c = 0; c < support.size(); ++c) {
      sub.col(static_cast<Eigen::Index>(c)) = ae.col(static_cast<Eigen::Index>(support[c]));
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
    if (qr.rank() < sub.cols()) {
      throw DegenerateSupportError("degenerate support: rank " + std::to_string(qr.rank()) +
                                   " after selecting " + std::to_string(support.size()) +
                                   " columns");
    }
    coeffs = qr.solve(ye);
    residual = ye - sub * coeffs;
    residual_norms.push_back(residual.norm());
  }

  DenseMatrix solution(a.cols(), y.cols());
  auto se = as_eigen(solution);
  for (std::size_t c = 0; c < support.size(); ++c) {
    se.row(static_cast<Eigen::Index>(support[c])) = coeffs.row(static_cast<Eigen::Index>(c));
  }
  return SompResult{std::move(solution), std::move(support), std::move(residual_norms)};
}

}  // namespace zapmmv
