#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "dimest/matrix.hpp"

namespace dimest {

enum class Activation : std::uint8_t { identity = 0, relu = 1, sigmoid = 2, tanh = 3 };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& name);

/// Symmetric autoencoder configuration.
///
/// layer_sizes has odd length >= 3; the middle entry is the innermost hidden
/// layer whose activations become singular value proxies, so its activation
/// must be identity (the proxies need an unbounded range). activations has
/// one entry per non-input layer.
struct AeConfig {
  std::vector<Eigen::Index> layer_sizes;
  std::vector<Activation> activations;
  double lambda = 0.0;         // weight of the normalized-L1 sparsity term
  double learning_rate = 0.01;
  long epochs = 100;           // 0 is allowed: training returns init weights
  Eigen::Index batch_size = 16;
  std::uint64_t seed = 0;
  double init_scale = 1.0;     // multiplies the 1/sqrt(fan_in) init bound

  /// Throws ArgumentError on any violated constraint.
  void validate() const;

  Eigen::Index input_size() const { return layer_sizes.front(); }
  /// Index into layer_sizes of the innermost hidden layer (the middle entry).
  std::size_t innermost_layer() const { return (layer_sizes.size() - 1) / 2; }
  /// Index into activations/weights of the layer producing the innermost
  /// hidden values.
  std::size_t innermost_weight() const { return innermost_layer() - 1; }
};

/// 784-input architecture used for MNIST digits: [784,256,128,64,128,256,784]
/// with relu/identity/identity/identity/relu/sigmoid activations.
AeConfig mnist_ae_config();

/// Same architecture for return panels with `features` inputs; the output
/// activation is tanh because returns are signed.
AeConfig returns_ae_config(Eigen::Index features);

/// Trained (or freshly initialized) network. weights[l] maps layer l to
/// layer l+1 and has shape layer_sizes[l+1] x layer_sizes[l].
struct AeModel {
  AeConfig config;
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  std::vector<double> training_history;  // full-data loss after each epoch
};

/// Innermost hidden activations for a batch: rows are samples, columns are
/// hidden units. Values are unbounded; no range clamp is applied.
struct HiddenBatch {
  Eigen::MatrixXd values;
};

struct ForwardResult {
  Eigen::VectorXd reconstruction;
  Eigen::VectorXd hidden;
};

struct LossTerms {
  double total = 0.0;
  double reconstruction = 0.0;
  double sparsity = 0.0;
};

struct AeGradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

/// Sparsity penalty ||y||_1 / ||y||_2 for one hidden row. Returns 0 when
/// ||y||_2 < 1e-12.
double normalized_l1(const Eigen::VectorXd& y);

/// Analytic gradient of normalized_l1: sign(y)/||y||_2 - ||y||_1 y/||y||_2^3,
/// or zero under the same guard.
Eigen::VectorXd normalized_l1_gradient(const Eigen::VectorXd& y);

/// Weights drawn from U[-b, b] with b = init_scale/sqrt(fan_in) per layer,
/// biases zero, using the config seed. Deterministic for a fixed config.
AeModel init_model(const AeConfig& config);

/// Single-sample forward pass.
ForwardResult forward(const AeModel& model, const Eigen::VectorXd& x);

/// Batch loss: mean over rows of 1/2 ||x - xhat||^2 plus lambda times the
/// mean over rows of normalized_l1(hidden).
LossTerms loss(const AeModel& model, const DataMatrix& batch);

/// Exact analytic gradients of loss() with respect to every weight and bias.
AeGradients gradients(const AeModel& model, const DataMatrix& batch);

/// Mini-batch SGD. Samples are reshuffled each epoch with the model seed;
/// the last batch of an epoch may be smaller. training_history records the
/// full-data loss after each epoch. Throws TrainingDivergenceError when a
/// parameter or the epoch loss becomes non-finite.
AeModel train(const AeConfig& config, const DataMatrix& data);

/// Innermost hidden activations for every row of data.
HiddenBatch hidden_activations(const AeModel& model, const DataMatrix& data);

/// Binary model file: magic "DIMAEM01", then layer count, layer sizes,
/// activation codes, and row-major weight/bias arrays (little-endian).
void save_model(const AeModel& model, const std::string& path);

/// Throws FormatError on bad magic, truncation, or trailing bytes.
AeModel load_model(const std::string& path);

}  // namespace dimest
