#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace dimest {

/// Self-describing record of one CLI run. Every parameter and seed that
/// influenced the results is in params, so a run can be reproduced from its
/// report alone. Written as JSON next to the primary output file.
struct RunReport {
  std::string command;
  std::map<std::string, std::string> params;
  std::vector<std::map<std::string, std::string>> results;
  double wall_time_seconds = 0.0;
};

struct MnistOptions {
  std::string images_path;
  std::string labels_path;
};

/// Autoencoder hyperparameters shared by the AE-driven commands.
struct AeOptions {
  double lambda = 0.15;
  double learning_rate = 0.03;
  long epochs = 250;
  Eigen::Index batch_size = 16;
};

struct PcaScreeOptions {
  MnistOptions mnist;
  int digit = 0;
  Eigen::Index samples = 60;
  std::uint64_t seed = 0;
  bool center = false;
  std::string out_path;
};

struct ReconCurveOptions {
  MnistOptions mnist;
  int digit = 0;
  Eigen::Index samples = 60;
  std::vector<Eigen::Index> ks;  // empty = every k from 1 to the rank bound
  std::uint64_t seed = 0;
  bool center = false;
  std::string out_path;
};

struct DeMnistOptions {
  MnistOptions mnist;
  std::string method = "pca";  // pca | isomap | ae
  std::vector<int> digits = {0};
  Eigen::Index samples = 60;
  long repeats = 50;
  std::uint64_t seed = 0;
  double threshold_gte = 0.01;
  double threshold_cum = 0.90;
  Eigen::Index neighbors = 10;
  bool center = false;
  bool holdout = false;  // estimate on a fresh held-out subset, not the training one
  AeOptions ae;
  std::string out_path;
};

struct WidthSweepOptions {
  MnistOptions mnist;
  int digit = 0;
  std::vector<Eigen::Index> widths;
  long repeats = 50;
  std::uint64_t seed = 0;
  double threshold_gte = 0.01;
  double threshold_cum = 0.90;
  AeOptions ae;
  std::string out_path;
};

struct LambdaSweepOptions {
  MnistOptions mnist;
  int digit = 0;
  Eigen::Index samples = 60;
  std::vector<double> lambdas;
  std::uint64_t seed = 0;
  double threshold_gte = 0.01;
  double threshold_cum = 0.90;
  AeOptions ae;  // lambda field ignored; the sweep supplies it
  std::string out_path;
};

struct DeTimeseriesOptions {
  std::string prices_path;
  std::vector<std::string> methods = {"pca"};
  Eigen::Index window = 60;
  Eigen::Index stride = 1;
  std::uint64_t seed = 0;
  double threshold_gte = 0.01;
  double threshold_cum = 0.90;
  Eigen::Index neighbors = 10;
  bool center = false;
  AeOptions ae;
  std::string out_path;
};

/// Each command writes its primary output (CSV or JSON lines) to out_path
/// and the RunReport to out_path + ".report.json", then returns the report.

RunReport cmd_pca_scree(const PcaScreeOptions& opt);
RunReport cmd_recon_curve(const ReconCurveOptions& opt);
RunReport cmd_de_mnist(const DeMnistOptions& opt);
RunReport cmd_width_sweep(const WidthSweepOptions& opt);
RunReport cmd_lambda_sweep(const LambdaSweepOptions& opt);
RunReport cmd_de_timeseries(const DeTimeseriesOptions& opt);

/// Formats a double with 17 significant digits so it round-trips exactly.
std::string fmt_double(double v);

}  // namespace dimest
