#include "dimest/spectral.hpp"

#include <Eigen/SVD>
#include <string>

#include "dimest/errors.hpp"

namespace dimest {

SvdResult svd(const DataMatrix& x) {
  Eigen::JacobiSVD<Eigen::MatrixXd> solver(
      x.values(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw NumericError("SVD failed to converge");
  }
  Eigen::MatrixXd u = solver.matrixU();
  Eigen::MatrixXd v = solver.matrixV();
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index imax = 0;
    u.col(j).cwiseAbs().maxCoeff(&imax);
    if (u(imax, j) < 0.0) {
      u.col(j) = -u.col(j);
      v.col(j) = -v.col(j);
    }
  }
  return SvdResult{std::move(u), solver.singularValues(),
                   Eigen::MatrixXd(v.transpose())};
}

DataMatrix truncated_reconstruct(const SvdResult& s, Eigen::Index k) {
  const Eigen::Index r = s.singular_values.size();
  if (k < 1 || k > r) {
    throw ArgumentError("truncation rank " + std::to_string(k) +
                        " outside [1, " + std::to_string(r) + "]");
  }
  return DataMatrix(s.u.leftCols(k) * s.singular_values.head(k).asDiagonal() *
                    s.vt.topRows(k));
}

Eigen::VectorXd column_means(const DataMatrix& x) {
  return x.values().colwise().mean().transpose();
}

}  // namespace dimest
