#include "dimest/spectrum.hpp"

#include <utility>

#include "dimest/errors.hpp"

namespace dimest {

std::string to_string(SpectrumSource source) {
  switch (source) {
    case SpectrumSource::pca: return "pca";
    case SpectrumSource::isomap: return "isomap";
    case SpectrumSource::autoencoder: return "autoencoder";
  }
  throw ArgumentError("unknown spectrum source");
}

Spectrum::Spectrum(Eigen::VectorXd values, SpectrumSource source)
    : values_(std::move(values)), source_(source) {
  if (values_.size() == 0) {
    throw ArgumentError("spectrum must be non-empty");
  }
  if (!values_.allFinite()) {
    throw ArgumentError("spectrum values must be finite");
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0.0) {
      throw ArgumentError("spectrum value at index " + std::to_string(i) +
                          " is negative");
    }
    if (i > 0 && values_[i] > values_[i - 1]) {
      throw ArgumentError("spectrum must be sorted descending, violated at index " +
                          std::to_string(i));
    }
  }
}

}  // namespace dimest
