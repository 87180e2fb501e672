#include "dimest/dimension.hpp"

#include <cmath>
#include <string>

#include "dimest/errors.hpp"

namespace dimest {

std::string to_string(DimensionRule rule) {
  switch (rule) {
    case DimensionRule::gte_fraction: return "gte_fraction";
    case DimensionRule::cumulative_energy: return "cumulative_energy";
  }
  throw ArgumentError("unknown dimension rule");
}

namespace {

double spectrum_total(const Spectrum& s, double threshold) {
  if (!(threshold > 0.0) || !(threshold < 1.0)) {
    throw ArgumentError("threshold must be in (0, 1), got " +
                        std::to_string(threshold));
  }
  // sequential sum, bit-identical to a naive loop
  double total = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    total += s.values()[i];
  }
  if (total <= 0.0) {
    throw DegenerateSpectrumError("all spectrum values are zero");
  }
  return total;
}

}  // namespace

DimensionEstimate dim_gte(const Spectrum& s, double threshold) {
  const double total = spectrum_total(s, threshold);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s.values()[i] / total >= threshold) ++p;
  }
  return DimensionEstimate{s.source(), DimensionRule::gte_fraction, threshold, p};
}

DimensionEstimate dim_cumulative(const Spectrum& s, double threshold) {
  const double total = spectrum_total(s, threshold);
  double cumulative = 0.0;
  Eigen::Index p = s.size();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    cumulative += s.values()[i] / total;
    if (cumulative >= threshold) {
      p = i + 1;
      break;
    }
  }
  return DimensionEstimate{s.source(), DimensionRule::cumulative_energy,
                           threshold, p};
}

std::pair<DimensionEstimate, DimensionEstimate> estimate_all(
    const Spectrum& s, double threshold_gte, double threshold_cum) {
  return {dim_gte(s, threshold_gte), dim_cumulative(s, threshold_cum)};
}

}  // namespace dimest
