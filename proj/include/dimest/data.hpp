#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dimest/matrix.hpp"

namespace dimest {

/// MNIST images and labels. Rows of images are flattened 28x28 pictures
/// scaled to [0,1]; labels[i] is the digit of row i.
struct MnistSet {
  DataMatrix images;
  std::vector<int> labels;
};

/// Daily log returns per ticker. Rows = dates, columns = tickers.
/// A return that cannot be computed (first date, or a missing/non-positive
/// price on either side) is stored as 0.
struct ReturnsPanel {
  std::vector<std::string> dates;    // ISO dates, strictly increasing
  std::vector<std::string> tickers;
  DataMatrix returns;
};

/// Sliding-window geometry over a returns panel.
struct WindowSpec {
  Eigen::Index width = 60;
  Eigen::Index stride = 1;
};

/// One window: the width most recent return rows ending at end_date.
struct ReturnWindow {
  std::string end_date;
  DataMatrix returns;
};

/// Reads big-endian IDX files: images magic 0x00000803 with dims
/// [count, 28, 28], labels magic 0x00000801 with [count]. Pixels are scaled
/// by 1/255. Throws FormatError (naming the byte offset) on a wrong magic or
/// truncation, and on an image/label count mismatch.
MnistSet load_mnist_idx(const std::string& images_path,
                        const std::string& labels_path);

/// Writes the set back to the same IDX layout (8-bit pixels, i.e. values
/// are multiplied by 255 and rounded).
void save_mnist_idx(const MnistSet& set, const std::string& images_path,
                    const std::string& labels_path);

/// Seeded uniform sample without replacement of rows with the given label.
/// Throws ArgumentError when digit is outside 0..9 or fewer than
/// sample_count instances exist.
DataMatrix digit_subset(const MnistSet& set, int digit,
                        Eigen::Index sample_count, std::uint64_t seed);

/// Parses a `date,TICKER1,TICKER2,...` CSV of prices (empty cell = missing)
/// and converts to log returns r_t = ln(p_t / p_{t-1}). Throws FormatError
/// (with the row number) on non-monotone dates or non-numeric prices.
ReturnsPanel load_prices_csv(const std::string& path);

/// All windows of `spec.width` rows, end advancing by `spec.stride`.
/// Yields (rows - width)/stride + 1 windows. Throws ArgumentError when the
/// panel has fewer rows than the width.
std::vector<ReturnWindow> sliding_windows(const ReturnsPanel& panel,
                                          const WindowSpec& spec);

/// X = A*B + noise with seeded standard-normal A (n_samples x n_factors)
/// and B (n_factors x n_features) and i.i.d. Gaussian noise of the given
/// standard deviation. Ground-truth dimension is n_factors.
DataMatrix synth_factor_panel(Eigen::Index n_samples, Eigen::Index n_features,
                              Eigen::Index n_factors, double noise_std,
                              std::uint64_t seed);

}  // namespace dimest
