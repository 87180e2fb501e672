#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>

#include "dimest/spectrum.hpp"

namespace dimest {

enum class DimensionRule { gte_fraction, cumulative_energy };

std::string to_string(DimensionRule rule);

struct DimensionEstimate {
  SpectrumSource method;
  DimensionRule rule;
  double threshold;
  Eigen::Index p;
};

/// Count of spectrum values whose share of the total is >= threshold.
/// Requires 0 < threshold < 1; throws DegenerateSpectrumError on an
/// all-zero spectrum.
DimensionEstimate dim_gte(const Spectrum& s, double threshold = 0.01);

/// Smallest count whose cumulative share of the total reaches threshold;
/// the full length if no prefix reaches it. Same preconditions as dim_gte.
DimensionEstimate dim_cumulative(const Spectrum& s, double threshold = 0.90);

/// Both rules on one spectrum.
std::pair<DimensionEstimate, DimensionEstimate> estimate_all(
    const Spectrum& s, double threshold_gte = 0.01,
    double threshold_cum = 0.90);

}  // namespace dimest
