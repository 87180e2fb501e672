#include "dimest/pca.hpp"

#include <string>

#include "dimest/errors.hpp"

namespace dimest {

Spectrum PcaModel::spectrum() const {
  return Spectrum(decomposition.singular_values, SpectrumSource::pca);
}

PcaModel fit_pca(const DataMatrix& x, bool center) {
  PcaModel model;
  model.centered = center;
  if (center) {
    model.mean = column_means(x);
    Eigen::MatrixXd centered = x.values().rowwise() - model.mean.transpose();
    model.decomposition = svd(DataMatrix(std::move(centered)));
  } else {
    model.mean = Eigen::VectorXd::Zero(x.cols());
    model.decomposition = svd(x);
  }
  return model;
}

ScreeData scree(const PcaModel& model) {
  const Eigen::VectorXd& s = model.decomposition.singular_values;
  const Eigen::VectorXd squared = s.array().square();
  const double total = squared.sum();
  if (total <= 0.0) {
    throw DegenerateSpectrumError("all singular values are zero");
  }
  return ScreeData{squared / total};
}

std::vector<std::pair<Eigen::Index, double>> reconstruction_error_curve(
    const PcaModel& model, const DataMatrix& x,
    const std::vector<Eigen::Index>& ks) {
  const double denom = x.values().norm();
  std::vector<std::pair<Eigen::Index, double>> curve;
  curve.reserve(ks.size());
  for (const Eigen::Index k : ks) {
    DataMatrix approx = truncated_reconstruct(model.decomposition, k);
    Eigen::MatrixXd reconstructed = approx.values();
    if (model.centered) {
      reconstructed.rowwise() += model.mean.transpose();
    }
    const double err = (x.values() - reconstructed).norm();
    curve.emplace_back(k, denom > 0.0 ? err / denom : 0.0);
  }
  return curve;
}

}  // namespace dimest
