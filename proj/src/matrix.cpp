#include "dimest/matrix.hpp"

#include <utility>

#include "dimest/errors.hpp"

namespace dimest {

DataMatrix::DataMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw ArgumentError("DataMatrix must have nonzero dimensions, got " +
                        std::to_string(values_.rows()) + "x" +
                        std::to_string(values_.cols()));
  }
  if (!values_.allFinite()) {
    throw ArgumentError("DataMatrix entries must be finite");
  }
}

}  // namespace dimest
