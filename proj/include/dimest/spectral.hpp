#pragma once

#include <Eigen/Core>

#include "dimest/matrix.hpp"

namespace dimest {

/// Thin SVD X = U * diag(s) * Vt with r = min(rows, cols) components.
/// Singular values are non-negative and descending. Columns of U (and the
/// matching rows of Vt) are sign-fixed so the entry of largest magnitude in
/// each U column is positive, making the factorization deterministic.
struct SvdResult {
  Eigen::MatrixXd u;                // rows x r
  Eigen::VectorXd singular_values;  // r
  Eigen::MatrixXd vt;               // r x cols
};

SvdResult svd(const DataMatrix& x);

/// Rank-k approximation U_k * diag(s_k) * Vt_k. Requires 1 <= k <= r.
DataMatrix truncated_reconstruct(const SvdResult& s, Eigen::Index k);

/// Per-column means of the sample matrix.
Eigen::VectorXd column_means(const DataMatrix& x);

}  // namespace dimest
