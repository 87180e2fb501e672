#include "dimest/data.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dimest/errors.hpp"
#include "dimest/rng.hpp"

namespace dimest {

namespace {

std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ArgumentError("cannot open file '" + path + "'");
  }
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>());
}

std::uint32_t read_be32(const std::vector<unsigned char>& bytes,
                        std::size_t offset, const std::string& path) {
  if (offset + 4 > bytes.size()) {
    throw FormatError("IDX file '" + path + "' truncated at byte offset " +
                      std::to_string(offset));
  }
  return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
         (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
         (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
         static_cast<std::uint32_t>(bytes[offset + 3]);
}

void write_be32(std::ofstream& out, std::uint32_t value) {
  const unsigned char bytes[4] = {
      static_cast<unsigned char>(value >> 24),
      static_cast<unsigned char>(value >> 16),
      static_cast<unsigned char>(value >> 8),
      static_cast<unsigned char>(value)};
  out.write(reinterpret_cast<const char*>(bytes), 4);
}

}  // namespace

MnistSet load_mnist_idx(const std::string& images_path,
                        const std::string& labels_path) {
  const std::vector<unsigned char> image_bytes = read_file(images_path);
  if (read_be32(image_bytes, 0, images_path) != 0x00000803u) {
    throw FormatError("IDX image file '" + images_path +
                      "' has wrong magic at byte offset 0");
  }
  const std::uint32_t count = read_be32(image_bytes, 4, images_path);
  const std::uint32_t rows = read_be32(image_bytes, 8, images_path);
  const std::uint32_t cols = read_be32(image_bytes, 12, images_path);
  const std::size_t pixel_count =
      static_cast<std::size_t>(count) * rows * cols;
  if (image_bytes.size() < 16 + pixel_count) {
    throw FormatError("IDX image file '" + images_path +
                      "' truncated at byte offset " +
                      std::to_string(image_bytes.size()));
  }

  const std::vector<unsigned char> label_bytes = read_file(labels_path);
  if (read_be32(label_bytes, 0, labels_path) != 0x00000801u) {
    throw FormatError("IDX label file '" + labels_path +
                      "' has wrong magic at byte offset 0");
  }
  const std::uint32_t label_count = read_be32(label_bytes, 4, labels_path);
  if (label_bytes.size() < 8 + label_count) {
    throw FormatError("IDX label file '" + labels_path +
                      "' truncated at byte offset " +
                      std::to_string(label_bytes.size()));
  }
  if (label_count != count) {
    throw FormatError("image count " + std::to_string(count) +
                      " does not match label count " +
                      std::to_string(label_count));
  }

  const Eigen::Index features = static_cast<Eigen::Index>(rows) * cols;
  Eigen::MatrixXd images(static_cast<Eigen::Index>(count), features);
  for (Eigen::Index i = 0; i < images.rows(); ++i) {
    const std::size_t base = 16 + static_cast<std::size_t>(i) * features;
    for (Eigen::Index j = 0; j < features; ++j) {
      images(i, j) = image_bytes[base + static_cast<std::size_t>(j)] / 255.0;
    }
  }
  std::vector<int> labels(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const unsigned char label = label_bytes[8 + i];
    if (label > 9) {
      throw FormatError("IDX label file '" + labels_path +
                        "' has label " + std::to_string(label) +
                        " at byte offset " + std::to_string(8 + i));
    }
    labels[i] = label;
  }
  return MnistSet{DataMatrix(std::move(images)), std::move(labels)};
}

void save_mnist_idx(const MnistSet& set, const std::string& images_path,
                    const std::string& labels_path) {
  const Eigen::MatrixXd& images = set.images.values();
  if (static_cast<std::size_t>(images.rows()) != set.labels.size()) {
    throw ArgumentError("image row count does not match label count");
  }
  const bool square28 = images.cols() == 784;
  std::ofstream img_out(images_path, std::ios::binary);
  if (!img_out) {
    throw ArgumentError("cannot open '" + images_path + "' for writing");
  }
  write_be32(img_out, 0x00000803u);
  write_be32(img_out, static_cast<std::uint32_t>(images.rows()));
  write_be32(img_out, square28 ? 28u : 1u);
  write_be32(img_out,
             square28 ? 28u : static_cast<std::uint32_t>(images.cols()));
  for (Eigen::Index i = 0; i < images.rows(); ++i) {
    for (Eigen::Index j = 0; j < images.cols(); ++j) {
      const double scaled = std::round(images(i, j) * 255.0);
      if (scaled < 0.0 || scaled > 255.0) {
        throw ArgumentError("pixel value outside [0,1] at row " +
                            std::to_string(i));
      }
      const unsigned char byte = static_cast<unsigned char>(scaled);
      img_out.write(reinterpret_cast<const char*>(&byte), 1);
    }
  }
  std::ofstream lbl_out(labels_path, std::ios::binary);
  if (!lbl_out) {
    throw ArgumentError("cannot open '" + labels_path + "' for writing");
  }
  write_be32(lbl_out, 0x00000801u);
  write_be32(lbl_out, static_cast<std::uint32_t>(set.labels.size()));
  for (const int label : set.labels) {
    if (label < 0 || label > 9) {
      throw ArgumentError("label outside 0..9");
    }
    const unsigned char byte = static_cast<unsigned char>(label);
    lbl_out.write(reinterpret_cast<const char*>(&byte), 1);
  }
}

DataMatrix digit_subset(const MnistSet& set, int digit,
                        Eigen::Index sample_count, std::uint64_t seed) {
  if (digit < 0 || digit > 9) {
    throw ArgumentError("digit must be in 0..9, got " + std::to_string(digit));
  }
  if (sample_count < 1) {
    throw ArgumentError("sample_count must be positive");
  }
  std::vector<Eigen::Index> pool;
  for (std::size_t i = 0; i < set.labels.size(); ++i) {
    if (set.labels[i] == digit) pool.push_back(static_cast<Eigen::Index>(i));
  }
  if (static_cast<std::size_t>(sample_count) > pool.size()) {
    throw ArgumentError("requested " + std::to_string(sample_count) +
                        " samples of digit " + std::to_string(digit) +
                        " but only " + std::to_string(pool.size()) +
                        " are available");
  }
  Rng rng(seed);
  Eigen::MatrixXd subset(sample_count, set.images.cols());
  // partial Fisher-Yates: draw without replacement
  for (Eigen::Index i = 0; i < sample_count; ++i) {
    const std::size_t j =
        static_cast<std::size_t>(i) +
        rng.index(pool.size() - static_cast<std::size_t>(i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    subset.row(i) = set.images.values().row(pool[static_cast<std::size_t>(i)]);
  }
  return DataMatrix(std::move(subset));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream stream(line);
  while (std::getline(stream, cell, ',')) {
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') {
    cells.emplace_back();
  }
  return cells;
}

}  // namespace

ReturnsPanel load_prices_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ArgumentError("cannot open file '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError("prices file '" + path + "' is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "date") {
    throw FormatError("prices file '" + path +
                      "' must start with a 'date,TICKER,...' header");
  }
  std::vector<std::string> tickers(header.begin() + 1, header.end());

  constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> dates;
  std::vector<std::vector<double>> prices;  // per date, per ticker
  long line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != tickers.size() + 1) {
      throw FormatError("prices file '" + path + "' line " +
                        std::to_string(line_number) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(tickers.size() + 1));
    }
    if (!dates.empty() && cells[0] <= dates.back()) {
      throw FormatError("prices file '" + path + "' line " +
                        std::to_string(line_number) +
                        " has non-increasing date '" + cells[0] + "'");
    }
    dates.push_back(cells[0]);
    std::vector<double> row(tickers.size(), kMissing);
    for (std::size_t j = 0; j < tickers.size(); ++j) {
      const std::string& cell = cells[j + 1];
      if (cell.empty()) continue;  // missing price
      std::size_t consumed = 0;
      double value = 0.0;
      try {
        value = std::stod(cell, &consumed);
      } catch (const std::exception&) {
        consumed = 0;
      }
      if (consumed != cell.size()) {
        throw FormatError("prices file '" + path + "' line " +
                          std::to_string(line_number) +
                          " has non-numeric price '" + cell + "'");
      }
      row[j] = value;
    }
    prices.push_back(std::move(row));
  }
  if (dates.empty()) {
    throw FormatError("prices file '" + path + "' has no data rows");
  }

  Eigen::MatrixXd returns(static_cast<Eigen::Index>(dates.size()),
                          static_cast<Eigen::Index>(tickers.size()));
  returns.setZero();
  for (std::size_t t = 1; t < dates.size(); ++t) {
    for (std::size_t j = 0; j < tickers.size(); ++j) {
      const double prev = prices[t - 1][j];
      const double curr = prices[t][j];
      if (std::isfinite(prev) && std::isfinite(curr) && prev > 0.0 &&
          curr > 0.0) {
        returns(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) =
            std::log(curr / prev);
      }
    }
  }
  return ReturnsPanel{std::move(dates), std::move(tickers),
                      DataMatrix(std::move(returns))};
}

std::vector<ReturnWindow> sliding_windows(const ReturnsPanel& panel,
                                          const WindowSpec& spec) {
  if (spec.width < 2) {
    throw ArgumentError("window width must be >= 2");
  }
  if (spec.stride < 1) {
    throw ArgumentError("window stride must be >= 1");
  }
  const Eigen::Index rows = panel.returns.rows();
  if (rows < spec.width) {
    throw ArgumentError("panel has " + std::to_string(rows) +
                        " dates, fewer than window width " +
                        std::to_string(spec.width));
  }
  const Eigen::Index count = (rows - spec.width) / spec.stride + 1;
  std::vector<ReturnWindow> windows;
  windows.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index w = 0; w < count; ++w) {
    const Eigen::Index start = w * spec.stride;
    const Eigen::Index end = start + spec.width - 1;
    windows.push_back(ReturnWindow{
        panel.dates[static_cast<std::size_t>(end)],
        DataMatrix(panel.returns.values().middleRows(start, spec.width))});
  }
  return windows;
}

DataMatrix synth_factor_panel(Eigen::Index n_samples, Eigen::Index n_features,
                              Eigen::Index n_factors, double noise_std,
                              std::uint64_t seed) {
  if (n_samples < 1 || n_features < 1) {
    throw ArgumentError("panel dimensions must be positive");
  }
  if (n_factors < 1 || n_factors > std::min(n_samples, n_features)) {
    throw ArgumentError("factor count " + std::to_string(n_factors) +
                        " outside [1, min(samples, features)]");
  }
  if (!std::isfinite(noise_std) || noise_std < 0.0) {
    throw ArgumentError("noise_std must be finite and non-negative");
  }
  Rng rng(seed);
  Eigen::MatrixXd a(n_samples, n_factors);
  for (Eigen::Index i = 0; i < n_samples; ++i) {
    for (Eigen::Index j = 0; j < n_factors; ++j) {
      a(i, j) = rng.normal();
    }
  }
  Eigen::MatrixXd b(n_factors, n_features);
  for (Eigen::Index i = 0; i < n_factors; ++i) {
    for (Eigen::Index j = 0; j < n_features; ++j) {
      b(i, j) = rng.normal();
    }
  }
  Eigen::MatrixXd x = a * b;
  if (noise_std > 0.0) {
    for (Eigen::Index i = 0; i < n_samples; ++i) {
      for (Eigen::Index j = 0; j < n_features; ++j) {
        x(i, j) += noise_std * rng.normal();
      }
    }
  }
  return DataMatrix(std::move(x));
}

}  // namespace dimest
