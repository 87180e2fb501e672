#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "dimest/matrix.hpp"
#include "dimest/spectral.hpp"
#include "dimest/spectrum.hpp"

namespace dimest {

/// PCA model: SVD of the (optionally mean-centered) sample matrix.
struct PcaModel {
  Eigen::VectorXd mean;  // column means when centered, zeros otherwise
  SvdResult decomposition;
  bool centered = false;

  /// Singular values as a Spectrum tagged pca.
  Spectrum spectrum() const;
};

/// Scree values: squared singular values normalized to sum to 1.
struct ScreeData {
  Eigen::VectorXd normalized_variance;
};

/// Fits PCA. Centering subtracts column means before the SVD; it is off by
/// default so spectra of non-negative data keep their leading component.
PcaModel fit_pca(const DataMatrix& x, bool center = false);

/// Throws DegenerateSpectrumError when all singular values are zero.
ScreeData scree(const PcaModel& model);

/// Relative Frobenius reconstruction error ||X - X_k|| / ||X|| for each
/// requested truncation rank k. Each k must satisfy 1 <= k <= r.
std::vector<std::pair<Eigen::Index, double>> reconstruction_error_curve(
    const PcaModel& model, const DataMatrix& x,
    const std::vector<Eigen::Index>& ks);

}  // namespace dimest
