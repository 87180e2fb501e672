#pragma once

#include <Eigen/Core>
#include <string>

namespace dimest {

/// Which pipeline produced a spectrum.
enum class SpectrumSource { pca, isomap, autoencoder };

std::string to_string(SpectrumSource source);

/// A non-negative, descending sequence of spectrum values: singular values
/// for PCA/Isomap, singular value proxies for the autoencoder.
class Spectrum {
public:
  /// Throws ArgumentError if values are empty, negative, non-finite,
  /// or not sorted descending.
  Spectrum(Eigen::VectorXd values, SpectrumSource source);

  const Eigen::VectorXd& values() const { return values_; }
  SpectrumSource source() const { return source_; }
  Eigen::Index size() const { return values_.size(); }

private:
  Eigen::VectorXd values_;
  SpectrumSource source_;
};

}  // namespace dimest
