#pragma once

#include <Eigen/Core>

namespace dimest {

/// Dense sample matrix: rows are samples, columns are features.
/// Both dimensions are nonzero and every entry is finite.
class DataMatrix {
public:
  /// Throws ArgumentError on an empty matrix or non-finite entries.
  explicit DataMatrix(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }

private:
  Eigen::MatrixXd values_;
};

}  // namespace dimest
