#include "dimest/svp.hpp"

#include <algorithm>
#include <functional>

#include "dimest/errors.hpp"

namespace dimest {

Spectrum to_svp(const HiddenBatch& hidden) {
  const Eigen::MatrixXd& values = hidden.values;
  if (values.rows() < 1 || values.cols() < 1) {
    throw ArgumentError("hidden batch must be non-empty");
  }
  Eigen::MatrixXd m = values.cwiseAbs();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Eigen::VectorXd row = m.row(r).transpose();
    std::sort(row.data(), row.data() + row.size(), std::greater<double>());
    m.row(r) = row.transpose();
  }
  // plain sequential accumulation keeps the result bit-identical to a naive
  // loop; mean of per-row descending sequences is descending
  Eigen::VectorXd proxies(m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    double sum = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      sum += m(r, c);
    }
    proxies[c] = sum / static_cast<double>(m.rows());
  }
  return Spectrum(std::move(proxies), SpectrumSource::autoencoder);
}

}  // namespace dimest
